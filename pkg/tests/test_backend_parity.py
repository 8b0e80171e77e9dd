"""The compiled kernel and the pure-Python kernel must be bit-identical:
same PRNG streams, same trajectories, same scan indices, and therefore
byte-identical experiment output."""

import numpy as np
import pytest

from hosim import _pykernel
from hosim import backend

compiled = pytest.importorskip(
    "hosim._kernel", reason="compiled kernel not built (pure-Python install)"
)

FIELD = (19000.0, 19000.0)


@pytest.fixture
def use_python_kernel():
    backend.set_kernel(_pykernel)
    yield
    backend.set_kernel(compiled)


class TestStreamParity:
    def test_raw_stream(self):
        a = _pykernel.Stream(987654321)
        b = compiled.Stream(987654321)
        assert [a.next_u64() for _ in range(1000)] == [
            b.next_u64() for _ in range(1000)
        ]

    def test_uniform_and_randint(self):
        a = _pykernel.Stream(5)
        b = compiled.Stream(5)
        for _ in range(1000):
            assert a.uniform() == b.uniform()
        for n in (2, 7, 501, 1901):
            a = _pykernel.Stream(n)
            b = compiled.Stream(n)
            assert [a.randint(n) for _ in range(500)] == [
                b.randint(n) for _ in range(500)
            ]


class TestTrajectoryParity:
    @pytest.mark.parametrize("seed", [0, 1, 424242, 2**63 + 11])
    def test_manhattan(self, seed):
        a = _pykernel.traj_manhattan(seed, 4000, *FIELD, 1000.0, 10.0)
        b = compiled.traj_manhattan(seed, 4000, *FIELD, 1000.0, 10.0)
        assert np.array_equal(np.asarray(a[0]), b[0])
        assert np.array_equal(np.asarray(a[1]), b[1])

    @pytest.mark.parametrize("seed", [3, 99, 77777])
    def test_random_waypoint(self, seed):
        a = _pykernel.traj_random_waypoint(seed, 4000, *FIELD, 10.0)
        b = compiled.traj_random_waypoint(seed, 4000, *FIELD, 10.0)
        assert np.array_equal(np.asarray(a[0]), b[0])
        assert np.array_equal(np.asarray(a[1]), b[1])

    @pytest.mark.parametrize("seed", [4, 123, 31337])
    def test_random_direction(self, seed):
        a = _pykernel.traj_random_direction(seed, 4000, *FIELD, 10.0)
        b = compiled.traj_random_direction(seed, 4000, *FIELD, 10.0)
        assert np.array_equal(np.asarray(a[0]), b[0])
        assert np.array_equal(np.asarray(a[1]), b[1])
        assert list(a[2]) == list(b[2])

    def test_fixed_path(self):
        wx = [500.0, 6000.0, 12000.0, 18500.0]
        wy = [3000.0, 3600.0, 4800.0, 6500.0]
        a = _pykernel.traj_fixed(wx, wy, 10.0)
        b = compiled.traj_fixed(wx, wy, 10.0)
        assert np.array_equal(np.asarray(a[0]), b[0])
        assert np.array_equal(np.asarray(a[1]), b[1])


class TestScanParity:
    def test_first_reach_and_below(self):
        xs, ys = compiled.traj_random_waypoint(8, 3000, *FIELD, 10.0)
        for cx, cy, t2 in [
            (9000.0, 9000.0, 750.0**2),
            (1000.0, 1000.0, 375.0**2),
            (18000.0, 500.0, 525.0**2),
        ]:
            for start in (0, 100, 1500):
                for strict in (True, False):
                    assert _pykernel.first_reach(
                        xs, ys, start, cx, cy, t2, strict
                    ) == compiled.first_reach(xs, ys, start, cx, cy, t2, strict)
                assert _pykernel.first_below(
                    xs, ys, start, cx, cy, t2
                ) == compiled.first_below(xs, ys, start, cx, cy, t2)


class TestEndToEndParity:
    def test_summary_csv_bytes_identical(self, tmp_path, use_python_kernel):
        from hosim.config import parse_config_text
        from hosim.results import run_matrix

        text = (
            "model = manhattan, random_direction\n"
            "deployment.rows = 8\ndeployment.cols = 8\n"
            "run.steps = 2000\nrun.replications = 2\n"
        )
        m = parse_config_text(text)
        pure = run_matrix(m, tmp_path / "pure")["summary"].read_bytes()
        backend.set_kernel(compiled)
        fast = run_matrix(m, tmp_path / "fast")["summary"].read_bytes()
        assert pure == fast
