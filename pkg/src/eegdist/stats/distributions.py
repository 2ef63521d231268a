"""Normal, Student-t, F and studentized-range distribution functions.

t and F go through the regularised incomplete beta function, evaluated by
its continued fraction with the complementary argument carried explicitly
so that far tails keep full relative precision. The studentized range has
no closed form and is integrated numerically.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr

from .quadrature import integrate

_TINY = 1e-300
_EPS = 1e-16


class DistributionError(ValueError):
    pass


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _betacf(a: float, b: float, x: float) -> float:
    # modified Lentz evaluation of the incomplete-beta continued fraction
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, 10000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = _TINY if abs(d) < _TINY else d
        c = 1.0 + aa / c
        c = _TINY if abs(c) < _TINY else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise DistributionError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


_STIRLING = (1 / 12, -1 / 360, 1 / 1260, -1 / 1680, 1 / 1188, -691 / 360360, 1 / 156)


def _stirling_err(z: float) -> float:
    # lgamma(z) - [(z - 1/2) log z - z + log(2 pi)/2], asymptotic series for z >= 10
    r = 1.0 / (z * z)
    acc = 0.0
    for c in reversed(_STIRLING):
        acc = acc * r + c
    return acc / z


def _beta_front(a: float, b: float, x: float, y: float) -> float:
    """x^a y^b / B(a, b) without the lgamma cancellation at large a, b."""
    small, large = min(a, b), max(a, b)
    if small < 10.0 <= large:
        # lgamma(large + small) - lgamma(large) via the Stirling form
        ab = a + b
        lg_ratio = ((large - 0.5) * math.log1p(small / large) + small * math.log(ab) - small
                    + _stirling_err(ab) - _stirling_err(large))
        return math.exp(lg_ratio - math.lgamma(small) + a * math.log(x) + b * math.log(y))
    if large < 10.0:
        return math.exp(
            math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
            + a * math.log(x) + b * math.log(y)
        )
    ab = a + b
    dev = b * x - a * y
    log_pow = a * math.log1p(dev / a) + b * math.log1p(-dev / b)
    corr = _stirling_err(ab) - _stirling_err(a) - _stirling_err(b)
    return math.sqrt(a * b / (2.0 * math.pi * ab)) * math.exp(log_pow + corr)


def betainc_pair(a: float, b: float, x: float, y: float | None = None) -> tuple[float, float]:
    """Return (I_x(a, b), 1 - I_x(a, b)); pass y = 1 - x when known more accurately."""
    if y is None:
        y = 1.0 - x
    if a <= 0 or b <= 0:
        raise DistributionError(f"beta parameters must be positive, got a={a}, b={b}")
    if x <= 0.0:
        return 0.0, 1.0
    if y <= 0.0:
        return 1.0, 0.0
    front = _beta_front(a, b, x, y)
    if x < (a + 1.0) / (a + b + 2.0):
        lower = front * _betacf(a, b, x) / a
        return lower, 1.0 - lower
    upper = front * _betacf(b, a, y) / b
    return 1.0 - upper, upper


def betainc(a: float, b: float, x: float) -> float:
    """Regularised incomplete beta function I_x(a, b)."""
    return betainc_pair(a, b, x)[0]


def _check_df(*dfs):
    for df in dfs:
        if not df >= 1:
            raise DistributionError(f"degrees of freedom must be >= 1, got {df}")


def t_two_sided(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with `df` degrees of freedom."""
    _check_df(df)
    if math.isinf(t):
        return 0.0
    if math.isnan(t):
        return math.nan
    t2 = t * t
    return betainc_pair(0.5 * df, 0.5, df / (df + t2), t2 / (df + t2))[0]


def t_sf(t: float, df: float) -> float:
    p = 0.5 * t_two_sided(t, df)
    return p if t >= 0 else 1.0 - p


def t_cdf(t: float, df: float) -> float:
    p = 0.5 * t_two_sided(t, df)
    return 1.0 - p if t >= 0 else p


def f_cdf(f: float, d1: float, d2: float) -> float:
    _check_df(d1, d2)
    if f <= 0:
        return 0.0
    if math.isinf(f):
        return 1.0
    denom = d1 * f + d2
    return betainc_pair(0.5 * d1, 0.5 * d2, d1 * f / denom, d2 / denom)[0]


def f_sf(f: float, d1: float, d2: float) -> float:
    """Upper tail P(F >= f)."""
    _check_df(d1, d2)
    if f <= 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    denom = d1 * f + d2
    return betainc_pair(0.5 * d1, 0.5 * d2, d1 * f / denom, d2 / denom)[1]


# studentized range ---------------------------------------------------------

_Z_LIMIT = 9.0  # normal density below 1e-17 beyond this


def _range_prob(w: np.ndarray, k: int) -> np.ndarray:
    """P(range of k iid standard normals <= w), elementwise in w."""
    w = np.atleast_1d(np.asarray(w, dtype=np.float64))

    def integrand(z):
        z = z[:, None]
        inner = ndtr(z) - ndtr(z - w[None, :])
        return np.exp(-0.5 * z * z) / math.sqrt(2 * math.pi) * inner ** (k - 1)

    val, _ = integrate(integrand, -_Z_LIMIT, _Z_LIMIT + float(np.max(w, initial=0.0)),
                       abs_tol=1e-13, rel_tol=1e-12)
    return np.clip(k * val, 0.0, 1.0)


def _scale_log_density(s, df):
    # density of sqrt(chi2_df / df)
    return (
        0.5 * df * math.log(df) - math.lgamma(0.5 * df) - (0.5 * df - 1.0) * math.log(2.0)
        + (df - 1.0) * np.log(s) - 0.5 * df * s * s
    )


def _scale_support(df, drop=46.0):
    mode = math.sqrt((df - 1.0) / df) if df > 1 else 0.0
    peak = float(_scale_log_density(max(mode, 1e-300), df)) if mode > 0 else float(
        _scale_log_density(1e-300, df)
    )
    spread = 1.0 / math.sqrt(2.0 * df)

    def below(s):
        return float(_scale_log_density(s, df)) < peak - drop

    hi = mode + spread
    while not below(hi):
        hi = mode + 2.0 * (hi - mode)
    lo = 0.0
    if mode > 0:
        step = spread
        lo = max(mode - step, 0.0)
        while lo > 0.0 and not below(lo):
            step *= 2.0
            lo = max(mode - step, 0.0)
    return lo, hi


def studentized_range_cdf(q: float, k: int, df: float) -> float:
    """P(Q <= q) for the studentized range of k means with df error degrees of freedom."""
    if k < 2:
        raise DistributionError(f"studentized range needs k >= 2, got {k}")
    if not df >= 1:
        raise DistributionError(f"degrees of freedom must be >= 1, got {df}")
    if q <= 0:
        return 0.0
    if math.isinf(q):
        return 1.0
    if math.isinf(df):
        return float(_range_prob(np.array([q]), k)[0])
    lo, hi = _scale_support(df)

    def outer(s):
        s = np.asarray(s, dtype=np.float64)
        dens = np.zeros_like(s)
        pos = s > 0
        dens[pos] = np.exp(_scale_log_density(s[pos], df))
        return dens * _range_prob(q * s, k)

    val, _ = integrate(outer, lo, hi, abs_tol=1e-11, rel_tol=1e-11)
    return float(min(max(val, 0.0), 1.0))


def studentized_range_sf(q: float, k: int, df: float) -> float:
    return 1.0 - studentized_range_cdf(q, k, df)


def studentized_range_ppf(p: float, k: int, df: float) -> float:
    """Quantile of the studentized range distribution."""
    if not 0.0 < p < 1.0:
        raise DistributionError(f"probability must be in (0, 1), got {p}")
    hi = 4.0
    while studentized_range_cdf(hi, k, df) < p:
        hi *= 2.0
        if hi > 1e4:
            raise DistributionError("studentized range quantile search diverged")
    return brentq(lambda q: studentized_range_cdf(q, k, df) - p, 0.0, hi, xtol=1e-10, rtol=1e-12)
