"""Group comparisons: one-way ANOVA, Tukey HSD and the two-sample z test."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .distributions import (
    f_sf,
    normal_sf,
    studentized_range_cdf,
    studentized_range_ppf,
)
from .regression import _json_safe


class GroupTestError(ValueError):
    pass


def _prepare(groups) -> tuple[list, list[np.ndarray]]:
    if isinstance(groups, dict):
        labels = list(groups)
        data = [np.asarray(groups[k], dtype=np.float64) for k in labels]
    else:
        data = [np.asarray(g, dtype=np.float64) for g in groups]
        labels = [str(i + 1) for i in range(len(data))]
    if len(data) < 2:
        raise GroupTestError(f"need at least 2 groups, got {len(data)}")
    for lab, g in zip(labels, data):
        if g.ndim != 1 or g.size < 2:
            raise GroupTestError(f"group {lab!r} needs at least 2 observations")
        if not np.all(np.isfinite(g)):
            raise GroupTestError(f"group {lab!r} contains non-finite values")
    return labels, data


def _ss(v: np.ndarray) -> float:
    return math.fsum(((v - v.mean()) ** 2).tolist())


@dataclass(frozen=True)
class OneWayAnova:
    k: int
    df_between: int
    ss_between: float
    ms_between: float
    df_within: int
    ss_within: float
    ms_within: float
    f: float
    p: float

    def to_dict(self) -> dict:
        return _json_safe(asdict(self))


def one_way_anova(groups) -> OneWayAnova:
    labels, data = _prepare(groups)
    k = len(data)
    allv = np.concatenate(data)
    grand = allv.mean()
    means = [g.mean() for g in data]
    if all(m == means[0] for m in means):
        ss_between = 0.0  # exact: rounding in the grand mean must not leak in
    else:
        ss_between = math.fsum(g.size * (m - grand) ** 2 for g, m in zip(data, means))
    ss_within = math.fsum(_ss(g) for g in data)
    n = allv.size
    df_b, df_w = k - 1, n - k
    ms_b, ms_w = ss_between / df_b, ss_within / df_w
    if ss_within == 0.0:
        if ss_between == 0.0:
            raise GroupTestError("all observations are identical; F is undefined")
        f, p = math.inf, 0.0
    else:
        f = ms_b / ms_w
        p = f_sf(f, df_b, df_w)
    return OneWayAnova(k, df_b, ss_between, ms_b, df_w, ss_within, ms_w, f, p)


@dataclass(frozen=True)
class TukeyPair:
    group: str
    reference: str
    diff: float
    lwr: float
    upr: float
    p_adj: float

    @property
    def label(self) -> str:
        return f"{self.group}-{self.reference}"


@dataclass(frozen=True)
class TukeyResult:
    pairs: tuple[TukeyPair, ...]
    confidence: float
    q_critical: float
    df_within: int
    ms_within: float

    def pair(self, group, reference) -> TukeyPair:
        for p in self.pairs:
            if (p.group, p.reference) == (str(group), str(reference)):
                return p
        raise KeyError(f"{group}-{reference}")

    def to_dict(self) -> dict:
        return _json_safe({
            "confidence": self.confidence,
            "q_critical": self.q_critical,
            "df_within": self.df_within,
            "ms_within": self.ms_within,
            "pairs": [dict(asdict(p), label=p.label) for p in self.pairs],
        })


def tukey_hsd(groups, family_confidence: float = 0.95) -> TukeyResult:
    """All-pairs Tukey-Kramer comparisons.

    Pairs follow the usual ``later-earlier`` layout: for groups in order
    g1..gk the pair ``gj-gi`` (i < j) reports mean(gj) - mean(gi).
    """
    if not 0.0 < family_confidence < 1.0:
        raise GroupTestError(f"confidence must be in (0, 1), got {family_confidence}")
    labels, data = _prepare(groups)
    aov = one_way_anova(dict(zip(labels, data)))
    k, df = aov.k, aov.df_within
    qcrit = studentized_range_ppf(family_confidence, k, df)
    means = [g.mean() for g in data]
    pairs = []
    for i in range(k):
        for j in range(i + 1, k):
            diff = float(means[j] - means[i])
            se = math.sqrt(aov.ms_within / 2.0 * (1.0 / data[i].size + 1.0 / data[j].size))
            if se == 0.0:
                p_adj = 1.0 if diff == 0.0 else 0.0
            else:
                p_adj = 1.0 - studentized_range_cdf(abs(diff) / se, k, df)
            pairs.append(TukeyPair(
                str(labels[j]), str(labels[i]), diff,
                diff - qcrit * se, diff + qcrit * se, min(max(p_adj, 0.0), 1.0),
            ))
    return TukeyResult(tuple(pairs), family_confidence, qcrit, df, aov.ms_within)


@dataclass(frozen=True)
class ZTestResult:
    z: float
    alpha: float


def two_sample_ztest(mean1, sd1, n1, mean2, sd2, n2) -> ZTestResult:
    """Two-sided z test on a difference of means; alpha = 2 * P(Z > |z|)."""
    if n1 < 2 or n2 < 2:
        raise GroupTestError("each sample needs at least 2 observations")
    if not (sd1 > 0 and sd2 > 0):
        raise GroupTestError("standard deviations must be positive")
    z = (mean2 - mean1) / math.sqrt(sd1**2 / n1 + sd2**2 / n2)
    return ZTestResult(z, 2.0 * normal_sf(abs(z)))
