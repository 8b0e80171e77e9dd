"""Seed derivation for independent deterministic random streams.

Every random quantity in a run is drawn from a SplitMix64 stream whose
seed is derived from the experiment master seed with :func:`derive`.
The rule is pure 64-bit integer arithmetic, so any two implementations
(Python, C) produce identical streams for identical inputs.

Derivation rule, applied left to right for each part ``p``:

    h <- mix64(h XOR mix64((p + GOLDEN) mod 2^64))

where ``mix64`` is the SplitMix64 finalizer and GOLDEN is the 64-bit
golden-ratio constant.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

# stream purposes
TRAJECTORY = 1
LOADS = 2
DEPLOYMENT = 3


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a high-quality 64-bit bijective mixer."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive(seed: int, *parts: int) -> int:
    """Derive a child seed from ``seed`` and a tuple of integer labels."""
    h = seed & MASK64
    for p in parts:
        h = mix64(h ^ mix64((p + GOLDEN) & MASK64))
    return h
