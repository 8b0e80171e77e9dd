from hosim import seeds
from hosim._pykernel import Stream


def test_mix64_is_deterministic_and_masked():
    assert seeds.mix64(0) == seeds.mix64(0)
    assert 0 <= seeds.mix64(2**64 + 5) < 2**64
    assert seeds.mix64(1) != seeds.mix64(2)


def test_derive_orders_and_separates_streams():
    base = 42
    assert seeds.derive(base, 1, 2) != seeds.derive(base, 2, 1)
    assert seeds.derive(base, seeds.TRAJECTORY, 0) != seeds.derive(
        base, seeds.LOADS, 0
    )
    assert seeds.derive(base, 1) == seeds.derive(base, 1)


def test_derived_streams_do_not_collide_over_replications():
    seen = set()
    for cell in range(20):
        for rep in range(50):
            for purpose in (seeds.TRAJECTORY, seeds.LOADS, seeds.DEPLOYMENT):
                seen.add(seeds.derive(7, purpose, cell, rep))
    assert len(seen) == 20 * 50 * 3


def test_stream_reference_values():
    # frozen first outputs for seed 0: pins the generator across
    # refactors and implementations
    s = Stream(0)
    assert [s.next_u64() for _ in range(3)] == [
        16294208416658607535,
        7960286522194355700,
        487617019471545679,
    ]


def test_uniform_range():
    s = Stream(123)
    for _ in range(10_000):
        u = s.uniform()
        assert 0.0 <= u < 1.0
