# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: PRNG, trajectory rasterization, zone scans.

Mirror of ``_pykernel.py``: same operations in the same order so both
backends produce bit-identical floats.  Keep the two files in sync.
"""

from libc.math cimport ceil, cos, floor, sin, sqrt

import numpy as np

BACKEND_NAME = "compiled"

cdef extern from *:
    ctypedef unsigned long long uint64_t "unsigned long long"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV_2_53 = 1.1102230246251565e-16  # 2**-53
cdef double TWO_PI = 6.283185307179586


cdef inline uint64_t _next(uint64_t* state) nogil:
    cdef uint64_t s = state[0] + GOLDEN
    state[0] = s
    cdef uint64_t z = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t* state) nogil:
    return <double>(_next(state) >> 11) * INV_2_53


cdef inline long _randint(uint64_t* state, long n) nogil:
    return <long>(_next(state) % <uint64_t>n)


cdef class Stream:
    """SplitMix64 generator; mirrors the Python implementation exactly."""

    cdef uint64_t state

    def __init__(self, seed):
        self.state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)

    def next_u64(self):
        return _next(&self.state)

    def uniform(self):
        return _uniform(&self.state)

    def randint(self, n):
        return _randint(&self.state, n)


cdef inline double _snap(double v, double step, double half) nogil:
    return floor((v + half) / step) * step


def traj_fixed(wx, wy, double step):
    """Rasterize a polyline onto the step grid at one step of arc per tick."""
    cdef Py_ssize_t n = len(wx)
    cdef double[::1] cwx = np.asarray(wx, dtype=np.float64)
    cdef double[::1] cwy = np.asarray(wy, dtype=np.float64)
    cdef double[::1] legs = np.empty(n - 1, dtype=np.float64)
    cdef double total = 0.0
    cdef double dx, dy, length
    cdef Py_ssize_t k
    for k in range(n - 1):
        dx = cwx[k + 1] - cwx[k]
        dy = cwy[k + 1] - cwy[k]
        length = sqrt(dx * dx + dy * dy)
        legs[k] = length
        total += length
    cdef double half = step / 2.0
    cdef Py_ssize_t nticks = <Py_ssize_t>ceil(total / step) if total > 0.0 else 0
    xs = np.empty(nticks + 1, dtype=np.float64)
    ys = np.empty(nticks + 1, dtype=np.float64)
    cdef double[::1] cxs = xs
    cdef double[::1] cys = ys
    cxs[0] = _snap(cwx[0], step, half)
    cys[0] = _snap(cwy[0], step, half)
    cdef double consumed = 0.0
    cdef double s, f, ix, iy
    cdef Py_ssize_t t
    k = 0
    for t in range(1, nticks + 1):
        s = t * step
        if s > total:
            s = total
        while k < n - 2 and s >= consumed + legs[k]:
            consumed += legs[k]
            k += 1
        length = legs[k]
        if s >= consumed + length:
            ix = cwx[k + 1]
            iy = cwy[k + 1]
        else:
            f = (s - consumed) / length
            ix = cwx[k] + (cwx[k + 1] - cwx[k]) * f
            iy = cwy[k] + (cwy[k + 1] - cwy[k]) * f
        cxs[t] = _snap(ix, step, half)
        cys[t] = _snap(iy, step, half)
    return xs, ys


def traj_manhattan(seed, Py_ssize_t steps, double width, double height,
                   double wres, double step):
    """Axis-locked walk between random waypoints on the coarse sub-grid."""
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef long nwx = <long>(width / wres) + 1
    cdef long nwy = <long>(height / wres) + 1
    cdef double x = wres * _randint(&state, nwx)
    cdef double y = wres * _randint(&state, nwy)
    cdef double tx = x
    cdef double ty = y
    xs = np.empty(steps + 1, dtype=np.float64)
    ys = np.empty(steps + 1, dtype=np.float64)
    cdef double[::1] cxs = xs
    cdef double[::1] cys = ys
    cxs[0] = x
    cys[0] = y
    cdef Py_ssize_t t
    for t in range(1, steps + 1):
        if x == tx and y == ty:
            tx = wres * _randint(&state, nwx)
            ty = wres * _randint(&state, nwy)
        if x != tx:
            x += step if tx > x else -step
        elif y != ty:
            y += step if ty > y else -step
        cxs[t] = x
        cys[t] = y
    return xs, ys


def traj_random_waypoint(seed, Py_ssize_t steps, double width, double height,
                         double step):
    """Straight-line motion between uniform waypoints on the step grid."""
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef long ngx = <long>(width / step) + 1
    cdef long ngy = <long>(height / step) + 1
    cdef double half = step / 2.0
    cdef double ix = step * _randint(&state, ngx)
    cdef double iy = step * _randint(&state, ngy)
    cdef double tx = ix
    cdef double ty = iy
    cdef double ux = 0.0
    cdef double uy = 0.0
    cdef double remaining = 0.0
    cdef double dx, dy
    xs = np.empty(steps + 1, dtype=np.float64)
    ys = np.empty(steps + 1, dtype=np.float64)
    cdef double[::1] cxs = xs
    cdef double[::1] cys = ys
    cxs[0] = ix
    cys[0] = iy
    cdef Py_ssize_t t
    for t in range(1, steps + 1):
        if remaining <= 0.0:
            tx = step * _randint(&state, ngx)
            ty = step * _randint(&state, ngy)
            dx = tx - ix
            dy = ty - iy
            remaining = sqrt(dx * dx + dy * dy)
            if remaining > 0.0:
                ux = dx / remaining
                uy = dy / remaining
        if remaining > step:
            ix += step * ux
            iy += step * uy
            remaining -= step
        else:
            ix = tx
            iy = ty
            remaining = 0.0
        cxs[t] = _snap(ix, step, half)
        cys[t] = _snap(iy, step, half)
    return xs, ys


def traj_random_direction(seed, Py_ssize_t steps, double width, double height,
                          double step):
    """Constant-heading motion with a fresh inward heading per edge contact.

    Returns (xs, ys, contact_steps)."""
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef long ngx = <long>(width / step) + 1
    cdef long ngy = <long>(height / step) + 1
    cdef double half = step / 2.0
    cdef double ix = step * _randint(&state, ngx)
    cdef double iy = step * _randint(&state, ngy)
    cdef double ux = 0.0
    cdef double uy = 0.0
    _draw_inward(&state, ix, iy, width, height, step, &ux, &uy)
    xs = np.empty(steps + 1, dtype=np.float64)
    ys = np.empty(steps + 1, dtype=np.float64)
    cdef double[::1] cxs = xs
    cdef double[::1] cys = ys
    cxs[0] = ix
    cys[0] = iy
    contacts = []
    cdef double nix, niy, f
    cdef Py_ssize_t t
    for t in range(1, steps + 1):
        nix = ix + step * ux
        niy = iy + step * uy
        if nix < 0.0 or nix > width or niy < 0.0 or niy > height:
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
            _draw_inward(&state, ix, iy, width, height, step, &ux, &uy)
        else:
            ix = nix
            iy = niy
        cxs[t] = _snap(ix, step, half)
        cys[t] = _snap(iy, step, half)
    return xs, ys, contacts


cdef void _draw_inward(uint64_t* state, double ix, double iy, double width,
                       double height, double step, double* ux, double* uy) nogil:
    cdef double theta, cx, cy, nx, ny
    while True:
        theta = TWO_PI * _uniform(state)
        cx = cos(theta)
        cy = sin(theta)
        nx = ix + step * cx
        ny = iy + step * cy
        if 0.0 <= nx <= width and 0.0 <= ny <= height:
            ux[0] = cx
            uy[0] = cy
            return


def first_reach(double[::1] xs, double[::1] ys, Py_ssize_t start,
                double cx, double cy, double thresh2, bint strict):
    """First index i >= start whose squared distance to (cx, cy) crosses
    thresh2 (> if strict, >= otherwise); -1 when never reached."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i
    cdef double dx, dy, d2
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


def first_below(double[::1] xs, double[::1] ys, Py_ssize_t start,
                double cx, double cy, double thresh2):
    """First index i >= start whose squared distance to (cx, cy) drops
    strictly below thresh2; -1 when never reached."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i
    cdef double dx, dy
    for i in range(start, n):
        dx = xs[i] - cx
        dy = ys[i] - cy
        if dx * dx + dy * dy < thresh2:
            return i
    return -1
