"""Plain-text tables laid out like R's summary/anova/TukeyHSD printouts."""
from __future__ import annotations

import math

from .groups import OneWayAnova, TukeyResult
from .regression import NestedAnova, RegressionFit

P_FLOOR = 1e-16


def format_p(p: float) -> str:
    if p is None or (isinstance(p, float) and math.isnan(p)):
        return "NA"
    if p < P_FLOOR:
        return "< 1e-16"
    return f"{p:.4g}"


def signif_stars(p: float) -> str:
    if p is None or math.isnan(p):
        return ""
    for cut, mark in ((0.001, "***"), (0.01, "**"), (0.05, "*"), (0.1, ".")):
        if p < cut:
            return mark
    return ""


def _table(header, rows) -> list[str]:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = []
    for row in (header, *rows):
        cells = [str(row[0]).ljust(widths[0])]
        cells += [str(c).rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return lines


def format_fit(fit: RegressionFit) -> str:
    rhs = " + ".join(fit.regressors) or "1"
    out = [f"Call: lm({fit.response} ~ {rhs})", "", "Coefficients:"]
    rows = [
        (name, f"{b:.4e}", f"{se:.4e}", f"{t:.3f}", format_p(p), signif_stars(p))
        for name, b, se, t, p in zip(fit.term_names, fit.beta, fit.stderr, fit.t_value, fit.p_value)
    ]
    out += _table(("", "Estimate", "Std. Error", "t value", "Pr(>|t|)", ""), rows)
    out += [
        "---",
        "Signif. codes:  0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1",
        "",
        f"Residual standard error: {fit.residual_se:.4g} on {fit.df_residual} degrees of freedom",
        f"Multiple R-squared:  {fit.r_squared:.4f},    Adjusted R-squared:  {fit.adj_r_squared:.4f}",
    ]
    if not math.isnan(fit.f_statistic):
        df_model = len(fit.regressors)
        out.append(
            f"F-statistic: {fit.f_statistic:.4g} on {df_model} and {fit.df_residual} DF,  "
            f"p-value: {format_p(fit.f_p_value)}"
        )
    if fit.log_base is not None:
        out.append(f"(response is log base {fit.log_base:g} of PRD)")
    return "\n".join(out)


def format_nested(full: RegressionFit, reduced: RegressionFit, res: NestedAnova) -> str:
    out = [
        "Analysis of Variance Table",
        "",
        f"Model 1: {full.response} ~ {' + '.join(full.regressors) or '1'}",
        f"Model 2: {reduced.response} ~ {' + '.join(reduced.regressors) or '1'}",
    ]
    rows = [
        ("1", str(res.df_full), f"{res.rss_full:.5g}", "", "", "", ""),
        ("2", str(res.df_reduced), f"{res.rss_reduced:.5g}", str(-res.df_diff),
         f"{-res.ss_diff:.5g}", f"{res.f:.4g}", format_p(res.p)),
    ]
    out += _table(("", "Res.Df", "RSS", "Df", "Sum of Sq", "F", "Pr(>F)"), rows)
    return "\n".join(out)


def format_anova(res: OneWayAnova, factor: str = "channel") -> str:
    rows = [
        (factor, str(res.df_between), f"{res.ss_between:.5g}", f"{res.ms_between:.5g}",
         f"{res.f:.5g}", format_p(res.p), signif_stars(res.p)),
        ("Residuals", str(res.df_within), f"{res.ss_within:.5g}", f"{res.ms_within:.5g}", "", "", ""),
    ]
    return "\n".join(
        ["Analysis of Variance Table", ""]
        + _table(("", "Df", "Sum Sq", "Mean Sq", "F value", "Pr(>F)", ""), rows)
    )


def format_tukey(res: TukeyResult) -> str:
    out = [
        "  Tukey multiple comparisons of means",
        f"    {res.confidence * 100:g}% family-wise confidence level",
        "",
    ]
    rows = [(p.label, f"{p.diff:.8f}", f"{p.lwr:.8f}", f"{p.upr:.8f}", f"{p.p_adj:.7e}") for p in res.pairs]
    out += _table(("", "diff", "lwr", "upr", "p adj"), rows)
    return "\n".join(out)
