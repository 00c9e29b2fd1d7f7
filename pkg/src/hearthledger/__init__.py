"""Atkinson inequality, housewife-labor GDP imputation and the two-stage comparison."""

__version__ = "0.1.0"

from .distributions import (
    IncomeDistribution,
    LognormalSpec,
    from_samples,
    mean,
    quantize_lognormal,
    scale,
    transfer,
)
from .inequality import (
    INFINITY,
    DecompositionResult,
    InequalityResult,
    atkinson,
    atkinson_lognormal,
    atkinson_ratio,
    decompose,
    ede,
    epsilon_sweep,
    gini,
)
from .kernels import BACKEND
from .model import Mode, ModelResult, Verdict, audit_report, run_two_stage
from .national_accounts import (
    AccountsSnapshot,
    ExpenditureComponents,
    ImputationResult,
    IncomeComponents,
    augmented_gdp,
    augmented_mean,
    gdp_expenditure,
    gdp_income,
    gdp_production,
    impute,
    impute_housewife_labor,
    per_capita_monthly_mean,
)
