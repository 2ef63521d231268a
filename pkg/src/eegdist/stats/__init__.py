"""Statistics engine: OLS inference, nested and one-way ANOVA, Tukey HSD, z test."""
from .distributions import (
    DistributionError,
    betainc,
    f_cdf,
    f_sf,
    normal_cdf,
    normal_sf,
    studentized_range_cdf,
    studentized_range_ppf,
    t_cdf,
    t_sf,
    t_two_sided,
)
from .groups import (
    GroupTestError,
    OneWayAnova,
    TukeyPair,
    TukeyResult,
    ZTestResult,
    one_way_anova,
    tukey_hsd,
    two_sample_ztest,
)
from .regression import (
    INTERCEPT,
    NestedAnova,
    PaperModelCoefficients,
    RegressionError,
    RegressionFit,
    nested_anova,
    ols_fit,
)

__all__ = [
    "DistributionError",
    "GroupTestError",
    "INTERCEPT",
    "NestedAnova",
    "OneWayAnova",
    "PaperModelCoefficients",
    "RegressionError",
    "RegressionFit",
    "TukeyPair",
    "TukeyResult",
    "ZTestResult",
    "betainc",
    "f_cdf",
    "f_sf",
    "nested_anova",
    "normal_cdf",
    "normal_sf",
    "ols_fit",
    "one_way_anova",
    "studentized_range_cdf",
    "studentized_range_ppf",
    "t_cdf",
    "t_sf",
    "t_two_sided",
    "tukey_hsd",
    "two_sample_ztest",
]
