"""GDP accounting identities and the housewife-labor imputation.

Aggregates are exact Python ints in TL and are bounded by the int64 range.
Nothing is divided until the final per-capita step, which goes through
:class:`fractions.Fraction` and is rounded once to a double.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Iterable

from .errors import (
    AmbiguousBreakdown,
    EmptyInput,
    InvariantViolation,
    Overflow,
    TradeDeficitWarning,
    ZeroPopulation,
)

INT64_MAX = 2**63 - 1
MONTHS = 12


def _checked(value: int, what: str) -> int:
    if abs(value) > INT64_MAX:
        raise Overflow(f"{what} = {value} exceeds the 64-bit range")
    return value


def _require_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvariantViolation(f"{name} must be an integer, got {value!r}", column=name)
    return value


@dataclass(frozen=True)
class AccountsSnapshot:
    """One country-year. Money in TL, headcounts in persons."""

    year: int
    gdp_annual: int
    population: int
    employed: int
    housewives: int
    min_wage_monthly: int

    def __post_init__(self):
        for f in fields(self):
            _require_int(getattr(self, f.name), f.name)
            _checked(getattr(self, f.name), f.name)
        for name in ("gdp_annual", "population", "employed", "housewives"):
            if getattr(self, name) < 0:
                raise InvariantViolation(f"{name} is negative", column=name)
        if self.min_wage_monthly <= 0:
            raise InvariantViolation("minimum wage must be positive", column="min_wage_monthly")
        if self.employed > self.population:
            raise InvariantViolation(
                f"employed {self.employed} exceeds population {self.population}",
                column="employed")
        if self.housewives > self.population:
            raise InvariantViolation(
                f"housewives {self.housewives} exceed population {self.population}",
                column="housewives")
        if self.employed + self.housewives > self.population:
            raise InvariantViolation(
                "employed + housewives exceed population", column="housewives")


@dataclass(frozen=True)
class ExpenditureComponents:
    consumption: int
    investment: int
    government: int
    exports: int
    imports: int

    def __post_init__(self):
        for f in fields(self):
            if _require_int(getattr(self, f.name), f.name) < 0:
                raise InvariantViolation(f"{f.name} is negative", column=f.name)


_FACTOR = ("labor_income", "capital_income", "indirect_taxes", "depreciation")
_ACCOUNTS = ("salaries", "gross_operating_surplus", "gross_mixed_income",
             "taxes_minus_subsidies")


@dataclass(frozen=True)
class IncomeComponents:
    """Income-side GDP in one of two breakdowns.

    Factor incomes (labor, capital, indirect taxes, depreciation) or the
    national-accounts form (salaries, gross operating surplus, gross mixed
    income, taxes less subsidies). Populate exactly one.
    """

    labor_income: int | None = None
    capital_income: int | None = None
    indirect_taxes: int | None = None
    depreciation: int | None = None
    salaries: int | None = None
    gross_operating_surplus: int | None = None
    gross_mixed_income: int | None = None
    taxes_minus_subsidies: int | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                _require_int(v, f.name)
        factor = [getattr(self, n) is not None for n in _FACTOR]
        accounts = [getattr(self, n) is not None for n in _ACCOUNTS]
        if any(factor) and any(accounts):
            raise AmbiguousBreakdown("both income breakdowns are populated")
        if not any(factor) and not any(accounts):
            raise EmptyInput("no income breakdown is populated")
        chosen = _FACTOR if any(factor) else _ACCOUNTS
        missing = [n for n in chosen if getattr(self, n) is None]
        if missing:
            raise InvariantViolation(f"incomplete breakdown, missing {', '.join(missing)}",
                                     column=missing[0])

    @property
    def breakdown(self) -> tuple[int, ...]:
        names = _FACTOR if self.labor_income is not None else _ACCOUNTS
        return tuple(getattr(self, n) for n in names)


@dataclass(frozen=True)
class ImputationResult:
    l_kev: int
    l_gdp: int
    mu_kev_annual: float
    mu_kev_monthly: float
    mu_baseline_monthly: float
    annualized: bool = False


def gdp_production(value_added: Iterable[int]) -> int:
    """Production method: sum of value added over all firms."""
    total = 0
    count = 0
    for v in value_added:
        if _require_int(v, "value_added") < 0:
            raise InvariantViolation(f"negative value added {v}", index=count)
        total += v
        count += 1
    if count == 0:
        raise EmptyInput("no value-added entries")
    return _checked(total, "production GDP")


def gdp_expenditure(c: ExpenditureComponents) -> int:
    """Expenditure method: ``C + I + G + (X - M)``.

    A negative result is returned as-is with a :class:`TradeDeficitWarning`.
    """
    total = _checked(c.consumption + c.investment + c.government + (c.exports - c.imports),
                     "expenditure GDP")
    if total < 0:
        warnings.warn(f"expenditure GDP is negative ({total}): imports exceed domestic demand",
                      TradeDeficitWarning, stacklevel=2)
    return total


def gdp_income(c: IncomeComponents) -> int:
    """Income method: sum of whichever breakdown is populated."""
    return _checked(sum(c.breakdown), "income GDP")


def _monthly_fraction(gdp_annual: int, population: int) -> Fraction:
    if population <= 0:
        raise ZeroPopulation("population must be positive")
    return Fraction(gdp_annual, population * MONTHS)


def per_capita_monthly_mean(gdp_annual: int, population: int) -> float:
    return float(_monthly_fraction(gdp_annual, population))


def impute_housewife_labor(housewives: int, min_wage_monthly: int, *,
                           annualize: bool = False) -> int:
    """Value of housewife labor: headcount times gross monthly minimum wage.

    The monthly product is used directly as an annual aggregate, which is the
    published convention. ``annualize=True`` multiplies by 12 instead; that
    figure is not the published one.
    """
    _require_int(housewives, "housewives")
    _require_int(min_wage_monthly, "min_wage_monthly")
    if housewives < 0:
        raise InvariantViolation("housewives is negative", column="housewives")
    if min_wage_monthly <= 0:
        raise InvariantViolation("minimum wage must be positive", column="min_wage_monthly")
    value = housewives * min_wage_monthly
    if annualize:
        value *= MONTHS
    return _checked(value, "L_Kev")


def augmented_gdp(gdp_annual: int, l_kev: int) -> int:
    if _require_int(gdp_annual, "gdp_annual") < 0 or _require_int(l_kev, "l_kev") < 0:
        raise InvariantViolation("GDP and imputed labor must be >= 0")
    return _checked(gdp_annual + l_kev, "augmented GDP")


def augmented_mean(l_gdp: int, population: int) -> tuple[float, float]:
    """``(annual, monthly)`` per-capita augmented GDP."""
    if population <= 0:
        raise ZeroPopulation("population must be positive")
    annual = Fraction(l_gdp, population)
    return float(annual), float(annual / MONTHS)


def impute(snapshot: AccountsSnapshot, *, annualize: bool = False) -> ImputationResult:
    """Run impute, augment and mean on one snapshot."""
    l_kev = impute_housewife_labor(snapshot.housewives, snapshot.min_wage_monthly,
                                   annualize=annualize)
    l_gdp = augmented_gdp(snapshot.gdp_annual, l_kev)
    annual, monthly = augmented_mean(l_gdp, snapshot.population)
    return ImputationResult(
        l_kev=l_kev,
        l_gdp=l_gdp,
        mu_kev_annual=annual,
        mu_kev_monthly=monthly,
        mu_baseline_monthly=per_capita_monthly_mean(snapshot.gdp_annual, snapshot.population),
        annualized=annualize,
    )
