"""Pure-Python hot kernels: PRNG, trajectory rasterization, zone scans.

This module is the reference implementation of the compiled kernel in
``_kernel.pyx``.  Both must perform the same floating-point operations
in the same order so that results are bit-identical regardless of which
backend is selected at import time (see ``hosim.backend``).

Positions are rasterized on a ``step`` metre grid (10 m by default):
per tick each axis moves 0 or ±step.  Continuous "ideal" motion is
tracked in doubles and snapped to the grid with round-to-nearest.
"""

import math

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

BACKEND_NAME = "python"


class Stream:
    """SplitMix64 generator; mirrors the C implementation exactly."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        s = (self.state + _GOLDEN) & MASK64
        self.state = s
        z = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n). Modulo bias is < 2**-40 for n < 2**24."""
        return self.next_u64() % n


def _snap(v: float, step: float, half: float) -> float:
    """Round ``v`` to the nearest multiple of ``step`` (ties go up)."""
    return math.floor((v + half) / step) * step


def traj_fixed(wx, wy, step):
    """Rasterize a polyline onto the step grid at one step of arc per tick.

    Returns (xs, ys) as lists; the caller wraps them in arrays.
    """
    n = len(wx)
    # leg lengths and cumulative arc length
    legs = []
    total = 0.0
    for k in range(n - 1):
        dx = wx[k + 1] - wx[k]
        dy = wy[k + 1] - wy[k]
        length = math.sqrt(dx * dx + dy * dy)
        legs.append(length)
        total += length
    half = step / 2.0
    nticks = int(math.ceil(total / step)) if total > 0.0 else 0
    xs = [_snap(wx[0], step, half)]
    ys = [_snap(wy[0], step, half)]
    k = 0
    consumed = 0.0  # arc length of fully consumed legs
    for t in range(1, nticks + 1):
        s = t * step
        if s > total:
            s = total
        while k < n - 2 and s >= consumed + legs[k]:
            consumed += legs[k]
            k += 1
        length = legs[k]
        if s >= consumed + length:
            ix = wx[k + 1]
            iy = wy[k + 1]
        else:
            f = (s - consumed) / length
            ix = wx[k] + (wx[k + 1] - wx[k]) * f
            iy = wy[k] + (wy[k + 1] - wy[k]) * f
        xs.append(_snap(ix, step, half))
        ys.append(_snap(iy, step, half))
    return xs, ys


def traj_manhattan(seed, steps, width, height, wres, step):
    """Axis-locked walk between random waypoints on the ``wres`` sub-grid.

    Moves along x first, then y.  A new waypoint is drawn on arrival.
    """
    rng = Stream(seed)
    nwx = int(width / wres) + 1
    nwy = int(height / wres) + 1
    x = wres * rng.randint(nwx)
    y = wres * rng.randint(nwy)
    tx, ty = x, y
    xs = [x]
    ys = [y]
    for _ in range(steps):
        if x == tx and y == ty:
            tx = wres * rng.randint(nwx)
            ty = wres * rng.randint(nwy)
        if x != tx:
            x += step if tx > x else -step
        elif y != ty:
            y += step if ty > y else -step
        xs.append(x)
        ys.append(y)
    return xs, ys


def traj_random_waypoint(seed, steps, width, height, step):
    """Straight-line motion between uniform waypoints on the step grid."""
    rng = Stream(seed)
    ngx = int(width / step) + 1
    ngy = int(height / step) + 1
    half = step / 2.0
    ix = step * rng.randint(ngx)
    iy = step * rng.randint(ngy)
    tx, ty = ix, iy
    ux = uy = 0.0
    remaining = 0.0  # arc length left on the current leg
    xs = [ix]
    ys = [iy]
    for _ in range(steps):
        if remaining <= 0.0:
            tx = step * rng.randint(ngx)
            ty = step * rng.randint(ngy)
            dx = tx - ix
            dy = ty - iy
            remaining = math.sqrt(dx * dx + dy * dy)
            if remaining > 0.0:
                ux = dx / remaining
                uy = dy / remaining
        if remaining > step:
            ix += step * ux
            iy += step * uy
            remaining -= step
        else:
            # arrive exactly on the waypoint to avoid float drift
            ix = tx
            iy = ty
            remaining = 0.0
        xs.append(_snap(ix, step, half))
        ys.append(_snap(iy, step, half))
    return xs, ys


def traj_random_direction(seed, steps, width, height, step):
    """Constant-heading motion; a new inward heading is drawn at each
    field-edge contact.

    Returns (xs, ys, contact_steps) where contact_steps lists the tick
    indices (1-based position index) at which an edge was hit.
    """
    rng = Stream(seed)
    ngx = int(width / step) + 1
    ngy = int(height / step) + 1
    half = step / 2.0
    ix = step * rng.randint(ngx)
    iy = step * rng.randint(ngy)
    ux, uy = _inward_heading(rng, ix, iy, width, height, step)
    xs = [ix]
    ys = [iy]
    contacts = []
    for t in range(1, steps + 1):
        nix = ix + step * ux
        niy = iy + step * uy
        if nix < 0.0 or nix > width or niy < 0.0 or niy > height:
            # clamp the move to the boundary along the current ray
            f = 1.0
            if nix < 0.0:
                f = min(f, (0.0 - ix) / (step * ux))
            elif nix > width:
                f = min(f, (width - ix) / (step * ux))
            if niy < 0.0:
                f = min(f, (0.0 - iy) / (step * uy))
            elif niy > height:
                f = min(f, (height - iy) / (step * uy))
            ix += step * ux * f
            iy += step * uy * f
            if ix < 0.0:
                ix = 0.0
            elif ix > width:
                ix = width
            if iy < 0.0:
                iy = 0.0
            elif iy > height:
                iy = height
            contacts.append(t)
            ux, uy = _inward_heading(rng, ix, iy, width, height, step)
        else:
            ix = nix
            iy = niy
        xs.append(_snap(ix, step, half))
        ys.append(_snap(iy, step, half))
    return xs, ys, contacts


def _inward_heading(rng, ix, iy, width, height, step):
    """Draw headings until one whose next step stays inside the field."""
    while True:
        theta = 6.283185307179586 * rng.uniform()  # 2*pi
        ux = math.cos(theta)
        uy = math.sin(theta)
        nx = ix + step * ux
        ny = iy + step * uy
        if 0.0 <= nx <= width and 0.0 <= ny <= height:
            return ux, uy


def first_reach(xs, ys, start, cx, cy, thresh2, strict):
    """First index i >= start where squared distance to (cx, cy) crosses
    ``thresh2`` (> if strict, >= otherwise); -1 when never reached."""
    n = len(xs)
    if strict:
        for i in range(start, n):
            dx = xs[i] - cx
            dy = ys[i] - cy
            if dx * dx + dy * dy > thresh2:
                return i
    else:
        for i in range(start, n):
            dx = xs[i] - cx
            dy = ys[i] - cy
            if dx * dx + dy * dy >= thresh2:
                return i
    return -1


def first_below(xs, ys, start, cx, cy, thresh2):
    """First index i >= start where squared distance to (cx, cy) drops
    strictly below ``thresh2``; -1 when never reached."""
    n = len(xs)
    for i in range(start, n):
        dx = xs[i] - cx
        dy = ys[i] - cy
        if dx * dx + dy * dy < thresh2:
            return i
    return -1
