"""Adaptive Gauss-Kronrod (7/15) quadrature for vectorised integrands."""
from __future__ import annotations

import heapq

import numpy as np

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 nodes on [-1, 1]: -x0..-x6, 0, x6..x0
_NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], [_WG[-1]], _WG[-2::-1]])


def _panel(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.asarray(f(mid + half * _NODES), dtype=np.float64)
    kron = half * np.tensordot(_KWEIGHTS, vals, axes=(0, 0))
    gauss = half * np.tensordot(_GWEIGHTS, vals, axes=(0, 0))
    err = np.max(np.abs(kron - gauss)) if np.ndim(kron) else abs(kron - gauss)
    return kron, float(err)


def integrate(f, a: float, b: float, abs_tol: float = 1e-12, rel_tol: float = 1e-12,
              max_panels: int = 2000):
    """Integrate f over [a, b].

    ``f`` receives a 1-D array of 15 nodes and returns values with the node
    axis first (extra trailing axes integrate component-wise). Panels are
    bisected, worst error first, until the summed Kronrod-Gauss difference
    meets the tolerance for every component.
    """
    if a == b:
        return 0.0 * np.asarray(f(np.full(15, a)))[0], 0.0
    total, err = _panel(f, a, b)
    heap = [(-err, a, b, total)]
    err_sum = err
    panels = 1
    while err_sum > max(abs_tol, rel_tol * float(np.max(np.abs(total)))) and panels < max_panels:
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        left, el = _panel(f, lo, mid)
        right, er = _panel(f, mid, hi)
        total = total - val + left + right
        err_sum += el + er + neg_err
        heapq.heappush(heap, (-el, lo, mid, left))
        heapq.heappush(heap, (-er, mid, hi, right))
        panels += 1
    return total, err_sum
