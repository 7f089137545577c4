"""Hot periodogram grid scans, numba-compiled with a pure-numpy fallback.

Backend selection is controlled by the ``CHIRPLIKE_NUMBA`` environment
variable: ``"0"`` forces the numpy path, ``"1"`` requires numba (import
error surfaces), unset picks numba when it is importable.

Both backends evaluate the same direct sums
``(1/n) |sum_t y(t) exp(-i w k t)|^2`` (linear phase) and
``(1/n) |sum_t y(t) exp(-i w k t^2)|^2`` (quadratic phase) on the grid
``w k`` for ``k = k_start, k_start+stride, ... < k_stop``. The numba path
replaces per-element trig with phase-rotation recurrences; agreement with
the numpy path is at the 1e-8 relative level (covered by tests).
"""

from __future__ import annotations

import os

import numpy as np

_NUMPY_BLOCK = 2048  # rows of the angle matrix materialized at once


def _numba_requested() -> bool | None:
    flag = os.environ.get("CHIRPLIKE_NUMBA", "").strip()
    if flag == "0":
        return False
    if flag == "1":
        return True
    return None


def _i1_scan_numpy(y: np.ndarray, k_start: int, k_stop: int, stride: int) -> np.ndarray:
    n = y.size
    t = np.arange(1, n + 1, dtype=np.float64)
    w = np.pi / n
    ks = np.arange(k_start, k_stop, stride, dtype=np.float64)
    out = np.empty(ks.size)
    for s in range(0, ks.size, _NUMPY_BLOCK):
        kb = ks[s : s + _NUMPY_BLOCK]
        ang = np.outer(kb * w, t)
        c = np.cos(ang) @ y
        si = np.sin(ang) @ y
        out[s : s + kb.size] = (c * c + si * si) / n
    return out


def _i2_scan_numpy(y: np.ndarray, m: int, k_start: int, k_stop: int, stride: int) -> np.ndarray:
    n = y.size
    t2 = np.arange(1, n + 1, dtype=np.float64) ** 2
    w = np.pi / m
    ks = np.arange(k_start, k_stop, stride, dtype=np.float64)
    out = np.empty(ks.size)
    for s in range(0, ks.size, _NUMPY_BLOCK):
        kb = ks[s : s + _NUMPY_BLOCK]
        # reduce mod 2*pi before trig: k * t^2 reaches ~1e12 at n = 1000
        ang = np.mod(np.outer(kb * w, t2), 2.0 * np.pi)
        c = np.cos(ang) @ y
        si = np.sin(ang) @ y
        out[s : s + kb.size] = (c * c + si * si) / n
    return out


def _build_numba_kernels():
    from numba import njit

    @njit(cache=True, nogil=True, fastmath=True)
    def i1_scan(y, k_start, k_stop, stride):  # pragma: no cover - compiled
        n = y.size
        npts = (k_stop - k_start + stride - 1) // stride
        out = np.empty(npts)
        w = np.pi / n
        for i in range(npts):
            th = w * (k_start + i * stride)
            # p(t) = exp(-i th t); d = exp(-i th) fixed rotation
            cd = np.cos(th)
            sd = -np.sin(th)
            cp = cd
            sp = sd
            re = y[0] * cp
            im = y[0] * sp
            for t in range(1, n):
                cp, sp = cp * cd - sp * sd, cp * sd + sp * cd
                re += y[t] * cp
                im += y[t] * sp
            out[i] = (re * re + im * im) / n
        return out

    @njit(cache=True, nogil=True, fastmath=True)
    def i2_scan(y, m, k_start, k_stop, stride):  # pragma: no cover - compiled
        n = y.size
        npts = (k_stop - k_start + stride - 1) // stride
        out = np.empty(npts)
        w = np.pi / m
        lanes = 16
        cp = np.empty(lanes)
        sp = np.empty(lanes)
        cd = np.empty(lanes)
        sd = np.empty(lanes)
        cr = np.empty(lanes)
        sr = np.empty(lanes)
        re = np.empty(lanes)
        im = np.empty(lanes)
        for blk in range(0, npts, lanes):
            nlan = min(lanes, npts - blk)
            for j in range(nlan):
                th = w * (k_start + (blk + j) * stride)
                # p(t) = exp(-i th t^2); step d(t) = exp(-i th (2t+1));
                # d itself rotates by r = exp(-i 2 th) each sample
                cp[j] = np.cos(th)
                sp[j] = -np.sin(th)
                cd[j] = np.cos(3.0 * th)
                sd[j] = -np.sin(3.0 * th)
                cr[j] = np.cos(2.0 * th)
                sr[j] = -np.sin(2.0 * th)
                re[j] = y[0] * cp[j]
                im[j] = y[0] * sp[j]
            for t in range(1, n):
                yt = y[t]
                for j in range(lanes):
                    cpn = cp[j] * cd[j] - sp[j] * sd[j]
                    spn = cp[j] * sd[j] + sp[j] * cd[j]
                    cdn = cd[j] * cr[j] - sd[j] * sr[j]
                    sdn = cd[j] * sr[j] + sd[j] * cr[j]
                    cp[j] = cpn
                    sp[j] = spn
                    cd[j] = cdn
                    sd[j] = sdn
                    re[j] += yt * cpn
                    im[j] += yt * spn
            for j in range(nlan):
                out[blk + j] = (re[j] * re[j] + im[j] * im[j]) / n
        return out

    return i1_scan, i2_scan


_requested = _numba_requested()
if _requested is False:
    _i1_impl, _i2_impl = _i1_scan_numpy, _i2_scan_numpy
    BACKEND = "numpy"
else:
    try:
        _i1_impl, _i2_impl = _build_numba_kernels()
        BACKEND = "numba"
    except ImportError:
        if _requested is True:
            raise
        _i1_impl, _i2_impl = _i1_scan_numpy, _i2_scan_numpy
        BACKEND = "numpy"


def backend() -> str:
    """Active kernel backend, ``"numba"`` or ``"numpy"``."""
    return BACKEND


def i1_scan(y: np.ndarray, k_start: int, k_stop: int, stride: int = 1) -> np.ndarray:
    """Linear-phase periodogram on grid ``pi*k/n``, ``k`` in ``range(k_start, k_stop, stride)``."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    return _i1_impl(y, k_start, k_stop, stride)


def i2_scan(y: np.ndarray, m: int, k_start: int, k_stop: int, stride: int = 1) -> np.ndarray:
    """Quadratic-phase periodogram on grid ``pi*k/m``, ``k`` in ``range(k_start, k_stop, stride)``."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    return _i2_impl(y, m, k_start, k_stop, stride)


def i1_scan_numpy(y: np.ndarray, k_start: int, k_stop: int, stride: int = 1) -> np.ndarray:
    """Fallback-path entry point, exposed for benchmarks and equivalence tests."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    return _i1_scan_numpy(y, k_start, k_stop, stride)


def i2_scan_numpy(y: np.ndarray, m: int, k_start: int, k_stop: int, stride: int = 1) -> np.ndarray:
    """Fallback-path entry point, exposed for benchmarks and equivalence tests."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    return _i2_scan_numpy(y, m, k_start, k_stop, stride)
