import pytest
from hypothesis import given
from hypothesis import strategies as st

from hearthledger import (
    AccountsSnapshot,
    ExpenditureComponents,
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
from hearthledger.errors import (
    AmbiguousBreakdown,
    EmptyInput,
    InvariantViolation,
    Overflow,
    TradeDeficitWarning,
    ZeroPopulation,
)
from hearthledger.model import TURKEY_2014

GDP_2014 = 2_054_897_828_000
N_2014 = 77_695_900


class TestGdpMethods:
    def test_production(self):
        assert gdp_production([0, 0]) == 0
        assert gdp_production([100, 250, 650]) == 1000

    def test_production_at_paper_scale(self):
        assert gdp_production([2_054_898] * 10**6) == 2_054_898_000_000

    def test_production_empty(self):
        with pytest.raises(EmptyInput):
            gdp_production([])

    def test_production_overflow(self):
        with pytest.raises(Overflow):
            gdp_production([2**62, 2**62])

    def test_expenditure(self):
        assert gdp_expenditure(ExpenditureComponents(0, 0, 0, 0, 0)) == 0
        assert gdp_expenditure(ExpenditureComponents(100, 20, 30, 10, 15)) == 145

    def test_expenditure_trade_deficit(self):
        with pytest.warns(TradeDeficitWarning):
            assert gdp_expenditure(ExpenditureComponents(100, 20, 30, 10, 200)) == -40

    def test_expenditure_rejects_negative_component(self):
        with pytest.raises(InvariantViolation):
            ExpenditureComponents(-1, 0, 0, 0, 0)

    def test_income(self):
        assert gdp_income(IncomeComponents(0, 0, 0, 0)) == 0
        assert gdp_income(IncomeComponents(1000, 400, 100, 50)) == 1550
        alt = IncomeComponents(salaries=800, gross_operating_surplus=500,
                               gross_mixed_income=200, taxes_minus_subsidies=50)
        assert gdp_income(alt) == 1550

    def test_income_ambiguous(self):
        with pytest.raises(AmbiguousBreakdown):
            IncomeComponents(1000, 400, 100, 50, salaries=800)

    def test_income_incomplete(self):
        with pytest.raises(InvariantViolation):
            IncomeComponents(labor_income=5)

    @given(st.lists(st.integers(0, 10**9), min_size=4, max_size=4),
           st.integers(0, 10**9), st.integers(0, 10**9))
    def test_three_methods_agree(self, parts, exports, imports):
        # one synthetic economy seen three ways
        labor, capital, taxes, depreciation = parts
        total = labor + capital + taxes + depreciation
        value_added = [labor, capital, taxes, depreciation]
        consumption = total - (exports - imports)
        if consumption < 0:
            return
        exp = ExpenditureComponents(consumption, 0, 0, exports, imports)
        assert gdp_production(value_added) == gdp_expenditure(exp) == gdp_income(
            IncomeComponents(labor, capital, taxes, depreciation)) == total


class TestPerCapita:
    def test_paper_mean(self):
        mu = per_capita_monthly_mean(GDP_2014, N_2014)
        assert mu == pytest.approx(2203.9964228, abs=1e-6)
        assert round(mu) == 2204

    def test_trivial(self):
        assert per_capita_monthly_mean(12_000, 1) == 1000.0
        assert per_capita_monthly_mean(0, 5) == 0.0

    def test_zero_population(self):
        with pytest.raises(ZeroPopulation):
            per_capita_monthly_mean(1, 0)


class TestImputation:
    def test_paper_l_kev(self):
        assert impute_housewife_labor(11_589_000, 1_102) == 12_771_078_000

    def test_trivial(self):
        assert impute_housewife_labor(0, 1_102) == 0
        assert impute_housewife_labor(10, 1_000) == 10_000

    def test_annualized(self):
        assert impute_housewife_labor(11_589_000, 1_102, annualize=True) == 153_252_936_000

    def test_rejects_float(self):
        with pytest.raises(InvariantViolation):
            impute_housewife_labor(10.0, 1_000)

    @given(st.integers(0, 10**6), st.integers(0, 10**8), st.integers(1, 10**5))
    def test_linear(self, a, n, p):
        assert impute_housewife_labor(a * n, p) == a * impute_housewife_labor(n, p)

    def test_augmented_gdp(self):
        assert augmented_gdp(GDP_2014, 12_771_078_000) == 2_067_668_906_000
        assert augmented_gdp(GDP_2014, 0) == GDP_2014
        assert augmented_gdp(5, 7) == 12

    def test_augmented_mean(self):
        annual, monthly = augmented_mean(2_067_668_906_000, N_2014)
        assert annual == pytest.approx(26_612.33, abs=0.005)
        assert monthly == pytest.approx(2_217.69, abs=0.005)
        assert round(monthly) == 2218
        assert augmented_mean(24_000, 2) == (12_000.0, 1_000.0)

    def test_augmented_mean_zero_population(self):
        with pytest.raises(ZeroPopulation):
            augmented_mean(1, 0)

    def test_pipeline_on_2014(self):
        r = impute(TURKEY_2014)
        assert r.l_gdp - GDP_2014 == r.l_kev == 12_771_078_000
        assert r.mu_kev_monthly == r.mu_kev_annual / 12 or abs(
            r.mu_kev_monthly - r.mu_kev_annual / 12) <= 1e-12 * r.mu_kev_monthly

    def test_no_housewives_means_equal(self):
        snap = AccountsSnapshot(2014, GDP_2014, N_2014, 25_933_000, 0, 1_102)
        r = impute(snap)
        assert r.mu_kev_monthly == r.mu_baseline_monthly

    @given(st.integers(0, 10**13), st.integers(1, 10**8), st.integers(0, 10**8),
           st.integers(1, 10**5))
    def test_mean_never_falls(self, gdp, pop, hw, wage):
        hw = min(hw, pop)
        r = impute(AccountsSnapshot(2000, gdp, pop, 0, hw, wage))
        assert r.mu_kev_monthly >= r.mu_baseline_monthly
        assert (r.mu_kev_monthly == r.mu_baseline_monthly) == (hw * wage == 0)
        assert r.l_gdp - gdp == r.l_kev


class TestSnapshot:
    @pytest.mark.parametrize("kw", [
        dict(employed=10**9),
        dict(housewives=10**9),
        dict(employed=50_000_000, housewives=30_000_000),
        dict(min_wage_monthly=0),
        dict(gdp_annual=-1),
    ])
    def test_invariants(self, kw):
        base = dict(year=2014, gdp_annual=GDP_2014, population=N_2014, employed=25_933_000,
                    housewives=11_589_000, min_wage_monthly=1_102)
        base.update(kw)
        with pytest.raises(InvariantViolation):
            AccountsSnapshot(**base)

    def test_overflow(self):
        with pytest.raises(Overflow):
            AccountsSnapshot(2014, 2**63, N_2014, 0, 0, 1)
