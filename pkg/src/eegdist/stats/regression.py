"""Ordinary least squares with coefficient inference, and nested-model F tests."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .distributions import f_sf, t_two_sided

INTERCEPT = "(Intercept)"


class RegressionError(ValueError):
    pass


@dataclass
class RegressionFit:
    term_names: list[str]
    beta: list[float]
    stderr: list[float]
    t_value: list[float]
    p_value: list[float]
    residual_se: float
    df_residual: int
    r_squared: float
    adj_r_squared: float
    f_statistic: float
    f_p_value: float
    rss: float
    tss: float
    n: int
    response: str = "y"
    log_base: float | None = None
    term_ranges: dict = field(default_factory=dict)
    residuals: np.ndarray | None = field(default=None, repr=False, compare=False)
    fitted: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def regressors(self) -> list[str]:
        return [t for t in self.term_names if t != INTERCEPT]

    def coef(self, term: str) -> float:
        return self.beta[self.term_names.index(term)]

    def p(self, term: str) -> float:
        return self.p_value[self.term_names.index(term)]

    def predict(self, values: dict) -> float:
        total = 0.0
        for name, b in zip(self.term_names, self.beta):
            total += b if name == INTERCEPT else b * float(values[name])
        return total

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("residuals")
        d.pop("fitted")
        return _json_safe(d)

    @classmethod
    def from_dict(cls, d: dict) -> RegressionFit:
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        known.pop("residuals", None)
        known.pop("fitted", None)
        for key in ("beta", "stderr", "t_value", "p_value"):
            known[key] = [math.nan if v is None else float(v) for v in known[key]]
        for key in ("residual_se", "r_squared", "adj_r_squared", "f_statistic", "f_p_value"):
            if known.get(key) is None:
                known[key] = math.nan
        return cls(**known)


def _json_safe(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.generic):
        return _json_safe(obj.item())
    return obj


def _sumsq(v: np.ndarray) -> float:
    return math.fsum((v * v).tolist())


def ols_fit(columns, response, names=None, intercept: bool = True,
            response_name: str = "y", log_base: float | None = None,
            rank_tol: float = 1e-10) -> RegressionFit:
    """Least-squares fit of `response` on the given regressor columns.

    ``columns`` is a mapping name -> values, or a 2-D array with ``names``.
    Solved through a QR factorisation of the design; standard errors use the
    residual variance and (X'X)^-1 = R^-1 R^-T.
    """
    if isinstance(columns, dict):
        names = list(columns)
        cols = [np.asarray(columns[n], dtype=np.float64) for n in names]
    else:
        arr = np.asarray(columns, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(arr.shape[1])]
        cols = [arr[:, i] for i in range(arr.shape[1])]
    y = np.asarray(response, dtype=np.float64)
    n = y.size
    term_names = ([INTERCEPT] if intercept else []) + names
    design_cols = ([np.ones(n)] if intercept else []) + cols
    for name, c in zip(term_names, design_cols):
        if c.shape != (n,):
            raise RegressionError(f"column {name!r} has length {c.size}, response has {n}")
    p = len(term_names)
    if p == 0:
        raise RegressionError("model has no terms")
    if n <= p:
        raise RegressionError(f"need more observations ({n}) than terms ({p})")
    X = np.column_stack(design_cols)
    Q, R = np.linalg.qr(X, mode="reduced")
    col_norms = np.linalg.norm(X, axis=0)
    for j in range(p):
        if col_norms[j] == 0.0 or abs(R[j, j]) <= rank_tol * col_norms[j]:
            raise RegressionError(
                f"design is rank deficient: column {term_names[j]!r} is collinear with earlier terms"
            )
    beta = solve_triangular(R, Q.T @ y)
    fitted = X @ beta
    resid = y - fitted
    rss = _sumsq(resid)
    df = n - p
    sigma2 = rss / df
    r_inv = solve_triangular(R, np.eye(p))
    stderr = np.sqrt(sigma2 * np.sum(r_inv * r_inv, axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = beta / stderr
    pvals = [t_two_sided(float(t), df) for t in tvals]

    if intercept:
        tss = _sumsq(y - y.mean())
        df_model = p - 1
    else:
        tss = _sumsq(y)
        df_model = p
    r2 = 1.0 - rss / tss if tss > 0 else math.nan
    adj = 1.0 - (1.0 - r2) * (n - (1 if intercept else 0)) / df if tss > 0 else math.nan
    if df_model > 0 and tss > 0:
        if rss > 0:
            fstat = ((tss - rss) / df_model) / sigma2
            fp = f_sf(fstat, df_model, df)
        else:
            fstat, fp = math.inf, 0.0
    else:
        fstat, fp = math.nan, math.nan
    ranges = {name: [float(np.min(c)), float(np.max(c))] for name, c in zip(names, cols)}
    return RegressionFit(
        term_names=term_names,
        beta=[float(b) for b in beta],
        stderr=[float(s) for s in stderr],
        t_value=[float(t) for t in tvals],
        p_value=pvals,
        residual_se=math.sqrt(sigma2),
        df_residual=df,
        r_squared=r2,
        adj_r_squared=adj,
        f_statistic=fstat,
        f_p_value=fp,
        rss=rss,
        tss=tss,
        n=n,
        response=response_name,
        log_base=log_base,
        term_ranges=ranges,
        residuals=resid,
        fitted=fitted,
    )


@dataclass(frozen=True)
class NestedAnova:
    rss_full: float
    rss_reduced: float
    df_full: int
    df_reduced: int
    f: float
    p: float
    dropped: tuple[str, ...] = ()

    @property
    def df_diff(self) -> int:
        return self.df_reduced - self.df_full

    @property
    def ss_diff(self) -> float:
        return self.rss_reduced - self.rss_full

    def to_dict(self) -> dict:
        d = _json_safe(asdict(self))
        d["dropped"] = list(self.dropped)
        d["df_diff"] = self.df_diff
        d["ss_diff"] = self.ss_diff
        return d


def nested_anova(full: RegressionFit, reduced: RegressionFit, tss_rtol: float = 1e-8) -> NestedAnova:
    """F test of a reduced model against the full model it is nested in."""
    missing = [t for t in reduced.term_names if t not in full.term_names]
    if missing:
        raise RegressionError(f"models are not nested: {missing} not in the full model")
    if full.n != reduced.n:
        raise RegressionError(f"models use different data sizes ({full.n} vs {reduced.n})")
    if abs(full.tss - reduced.tss) > tss_rtol * max(abs(full.tss), 1e-300):
        raise RegressionError("models were fitted to different responses")
    dropped = tuple(t for t in full.term_names if t not in reduced.term_names)
    df_diff = reduced.df_residual - full.df_residual
    if df_diff == 0 and not dropped:
        return NestedAnova(full.rss, reduced.rss, full.df_residual, reduced.df_residual, 0.0, 1.0)
    if df_diff <= 0:
        raise RegressionError(f"reduced model must have fewer terms (df difference {df_diff})")
    ss = max(reduced.rss - full.rss, 0.0)
    if full.rss == 0.0:
        f, p = (math.inf, 0.0) if ss > 0 else (0.0, 1.0)
    else:
        f = (ss / df_diff) / (full.rss / full.df_residual)
        p = f_sf(f, df_diff, full.df_residual)
    return NestedAnova(full.rss, reduced.rss, full.df_residual, reduced.df_residual, f, p, dropped)


@dataclass(frozen=True)
class PaperModelCoefficients:
    """Published two-regressor log-distortion model (log base 10)."""

    beta0: float = -0.46375
    beta1: float = 0.02606
    beta2: float = -0.0081453
    log_base: float = 10.0
