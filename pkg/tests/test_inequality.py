import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from hearthledger import (
    INFINITY,
    LognormalSpec,
    atkinson,
    atkinson_lognormal,
    atkinson_ratio,
    decompose,
    ede,
    epsilon_sweep,
    from_samples,
    gini,
    scale,
    transfer,
)
from hearthledger.errors import (
    InfiniteEpsilonUnsupported,
    InvalidEpsilon,
    MissingLabel,
    NonPositiveAmount,
)
from hearthledger.inequality import utility, welfare

mpmath.mp.dps = 50

EPS_PROPS = [0.0, 0.5, 1.0, 2.0, INFINITY]

dists = st.lists(
    st.tuples(st.floats(0.5, 1e6), st.integers(1, 20)), min_size=1, max_size=40
).map(lambda pts: from_samples([p[0] for p in pts], [p[1] for p in pts]))


def ede_oracle(ys, ws, eps):
    """Direct high-precision evaluation of the EDE definition."""
    ys = [mpmath.mpf(y) for y in ys]
    total = mpmath.fsum(ws)
    if eps == 1:
        return float(mpmath.exp(mpmath.fsum(w * mpmath.log(y) for y, w in zip(ys, ws)) / total))
    s = mpmath.fsum(w * y ** (1 - eps) for y, w in zip(ys, ws)) / total
    return float(s ** (1 / mpmath.mpf(1 - eps)))


def gini_oracle(ys, ws):
    """O(n^2) pairwise weighted mean absolute difference over twice the mean."""
    total = sum(ws)
    mu = sum(y * w for y, w in zip(ys, ws)) / total
    mad = sum(wi * wj * abs(yi - yj) for yi, wi in zip(ys, ws) for yj, wj in zip(ys, ws))
    return mad / total**2 / (2 * mu)


class TestEde:
    @pytest.mark.parametrize("eps", [0, 0.5, 1, 2, 5, INFINITY])
    def test_equal_distribution(self, eps):
        assert ede(from_samples([2, 2, 2]), eps) == 2.0

    def test_harmonic_mean(self):
        assert ede(from_samples([1, 3]), 2) == pytest.approx(1.5, rel=1e-15)

    def test_rawlsian_minimum(self):
        assert ede(from_samples([1, 3]), INFINITY) == 1.0

    def test_geometric_mean(self):
        assert ede(from_samples([1, 3]), 1) == pytest.approx(math.sqrt(3), rel=1e-15)

    def test_eps_zero_is_mean(self):
        assert ede(from_samples([1, 3], [3, 1]), 0) == 1.5

    @pytest.mark.parametrize("eps", [-1, float("nan")])
    def test_invalid_epsilon(self, eps):
        with pytest.raises(InvalidEpsilon):
            ede(from_samples([1, 3]), eps)

    @settings(max_examples=60)
    @given(dists, st.sampled_from([0.25, 0.5, 1.0, 1.5, 2.0, 4.0, 8.0]))
    def test_matches_high_precision_oracle(self, d, eps):
        expected = ede_oracle(d.incomes.tolist(), d.weights.tolist(), eps)
        assert ede(d, eps) == pytest.approx(expected, rel=1e-12)

    def test_extreme_aversion_does_not_overflow(self):
        d = from_samples([1e-3, 1e6])
        assert math.isfinite(ede(d, 50))
        assert ede(d, 50) == pytest.approx(ede_oracle([1e-3, 1e6], [1, 1], 50), rel=1e-12)


class TestAtkinson:
    def test_equality(self):
        assert atkinson(from_samples([2, 2, 2]), 2).index == 0.0

    def test_two_points_eps2(self):
        r = atkinson(from_samples([1, 3]), 2)
        assert r.index == pytest.approx(0.25, abs=1e-15)
        assert (r.ede, r.mean, r.epsilon) == (pytest.approx(1.5), 2.0, 2.0)

    def test_two_points_eps1(self):
        assert atkinson(from_samples([1, 3]), 1).index == pytest.approx(1 - math.sqrt(3) / 2,
                                                                        abs=1e-15)
        assert 1 - math.sqrt(3) / 2 == pytest.approx(0.13397, abs=1e-5)

    @given(dists)
    def test_eps_zero_is_zero(self, d):
        assert atkinson(d, 0).index == 0.0

    @given(dists, st.sampled_from(EPS_PROPS))
    def test_result_consistency(self, d, eps):
        r = atkinson(d, eps)
        assert abs(r.index - (1 - r.ede / r.mean)) <= 1e-12
        assert 0 <= r.index < 1

    @given(dists, st.floats(1e-3, 1e3), st.sampled_from(EPS_PROPS))
    def test_scale_invariance(self, d, lam, eps):
        assert abs(atkinson(scale(d, lam), eps).index - atkinson(d, eps).index) <= 1e-10

    @given(dists)
    def test_zero_iff_equal(self, d):
        idx = atkinson(d, 2).index
        if d.is_equal:
            assert idx == 0.0
        else:
            assert idx > 1e-12 or np.ptp(d.support) / d.support.max() < 1e-5

    @given(dists)
    def test_monotone_in_epsilon(self, d):
        grid = [k / 4 for k in range(33)] + [INFINITY]
        idx = [atkinson(d, e).index for e in grid]
        assert all(b >= a for a, b in zip(idx, idx[1:]))

    @given(st.lists(st.floats(1, 1e6), min_size=2, max_size=40), st.floats(0.05, 1.0),
           st.sampled_from([0.5, 1.0, 2.0]))
    def test_pigou_dalton(self, ys, frac, eps):
        d = from_samples(ys)
        i, j = int(np.argmax(d.incomes)), int(np.argmin(d.incomes))
        gap = d.incomes[i] - d.incomes[j]
        if gap < 1e-6 * d.incomes[i]:
            return
        moved = transfer(d, i, j, frac * gap / 2)
        assert atkinson(moved, eps).index < atkinson(d, eps).index

    @given(dists, st.sampled_from([0.5, 1.0, 2.0, 3.0, INFINITY]))
    def test_welfare_of_ede_equals_welfare(self, d, eps):
        w = welfare(d, eps)
        assert abs(utility(ede(d, eps), eps) - w) <= 1e-10 * max(1.0, abs(w))

    def test_interpretation_identity(self):
        d = from_samples([1, 2, 4, 8, 16])
        r = atkinson(d, 2)
        assert (1 - r.index) * r.mean == pytest.approx(r.ede, rel=1e-13)
        # I = 0.30 means 70% of the mean income delivers the same welfare
        assert (1 - 0.30) * 100 == pytest.approx(70)


class TestRatio:
    def test_paper_first_stage(self):
        assert atkinson_ratio(1102, 2204, 2) == 0.5

    @pytest.mark.parametrize("eps", [0, 0.5, 1, 2, 7])
    def test_ratio_one(self, eps):
        assert atkinson_ratio(1000, 1000, eps) == 0.0

    def test_second_stage_unrounded_mean(self):
        assert atkinson_ratio(1102, 2217.69, 2) == pytest.approx(0.5031, abs=5e-4)

    @pytest.mark.parametrize("eps", [0, 0.25, 0.5, 0.99, 1, 1.5, 2, 3, 10])
    @pytest.mark.parametrize("y, mu", [(1102, 2204), (1102, 2217.69), (5, 3), (0.1, 1e6)])
    def test_collapses_exactly(self, y, mu, eps):
        got = atkinson_ratio(y, mu, eps)
        assert got == 1 - y / mu
        if eps != 1:
            # the literal power form agrees up to rounding
            literal = 1 - ((y / mu) ** (1 - eps)) ** (1 / (1 - eps))
            assert got == pytest.approx(literal, abs=1e-12)

    def test_rejects_infinity(self):
        with pytest.raises(InfiniteEpsilonUnsupported):
            atkinson_ratio(1, 2, INFINITY)

    @pytest.mark.parametrize("y, mu", [(0, 1), (1, 0), (-1, 2)])
    def test_rejects_nonpositive(self, y, mu):
        with pytest.raises(NonPositiveAmount):
            atkinson_ratio(y, mu, 2)


class TestLognormalClosedForm:
    def test_no_dispersion(self):
        assert atkinson_lognormal(LognormalSpec(3, 0), 2) == 0.0

    def test_values(self):
        assert atkinson_lognormal(LognormalSpec(0, 0.8), 2) == pytest.approx(0.47271, abs=1e-5)
        assert atkinson_lognormal(LognormalSpec(0, 0.8), 1) == pytest.approx(0.27385, abs=1e-5)

    def test_infinity_rejected(self):
        with pytest.raises(InfiniteEpsilonUnsupported):
            atkinson_lognormal(LognormalSpec(0, 1), INFINITY)

    @pytest.mark.parametrize("sigma", [0.2, 0.5, 0.8, 1.2])
    @pytest.mark.parametrize("eps", [0.5, 1.0, 2.0])
    def test_against_quadrature(self, sigma, eps):
        pdf = stats.lognorm(s=sigma).pdf
        mu = integrate.quad(lambda y: y * pdf(y), 0, np.inf, limit=200)[0]
        if eps == 1:
            e = math.exp(integrate.quad(lambda y: math.log(y) * pdf(y), 0, np.inf, limit=200)[0])
        else:
            e = integrate.quad(lambda y: y ** (1 - eps) * pdf(y), 0, np.inf,
                               limit=200)[0] ** (1 / (1 - eps))
        assert atkinson_lognormal(LognormalSpec(0, sigma), eps) == pytest.approx(1 - e / mu,
                                                                                 abs=1e-8)


class TestGini:
    def test_equal(self):
        assert gini(from_samples([2, 2, 2])) == 0.0

    def test_two_points(self):
        assert gini(from_samples([1, 3])) == pytest.approx(0.25, abs=1e-15)

    def test_weighted_matches_expanded_population(self):
        # weights (3, 1) behave like the population {1, 1, 1, 3}
        assert gini(from_samples([1, 3], [3, 1])) == pytest.approx(0.25, abs=1e-15)
        assert gini_oracle([1, 1, 1, 3], [1, 1, 1, 1]) == pytest.approx(0.25)

    @given(dists)
    def test_against_pairwise(self, d):
        ys, ws = d.incomes.tolist(), d.weights.tolist()
        assert gini(d) == pytest.approx(gini_oracle(ys, ws), abs=1e-10)
        assert 0 <= gini(d) < 1


class TestDecompose:
    def test_one_group(self):
        d = from_samples([1, 3, 2, 7])
        r = decompose(d, ["a"] * 4, 2)
        assert r.between == 0.0
        assert r.within == r.total == atkinson(d, 2).index

    def test_singleton_groups(self):
        d = from_samples([1, 3, 2, 7])
        r = decompose(d, [1, 2, 3, 4], 0.5)
        assert r.between == r.total
        assert r.within == 0.0

    def test_two_groups_exact(self):
        r = decompose(from_samples([1, 3, 2, 2]), list("AABB"), 2)
        # exact rational oracle: total 1/7, between 1/49, within 1/8
        assert r.total == pytest.approx(float(Fraction(1, 7)), abs=1e-14)
        assert r.between == pytest.approx(float(Fraction(1, 49)), abs=1e-14)
        assert r.within == pytest.approx(float(Fraction(1, 8)), abs=1e-14)

    def test_missing_label(self):
        with pytest.raises(MissingLabel):
            decompose(from_samples([1, 3]), ["a", None], 2)
        with pytest.raises(MissingLabel):
            decompose(from_samples([1, 3]), ["a"], 2)

    def test_infinite_rejected(self):
        with pytest.raises(InfiniteEpsilonUnsupported):
            decompose(from_samples([1, 3]), "ab", INFINITY)

    @given(dists, st.data(), st.sampled_from([0.5, 1.0, 2.0]))
    def test_identity(self, d, data, eps):
        labels = data.draw(st.lists(st.integers(0, 3), min_size=len(d), max_size=len(d)))
        r = decompose(d, labels, eps)
        assert abs((1 - r.total) - (1 - r.between) * (1 - r.within)) <= 1e-10


class TestSweep:
    def test_equal(self):
        assert [i for _, i in epsilon_sweep(from_samples([2, 2]))] == [0, 0, 0]

    def test_two_points(self):
        rows = epsilon_sweep(from_samples([1, 3]), [1, 2])
        assert [e for e, _ in rows] == [1, 2]
        assert [i for _, i in rows] == pytest.approx([0.13397, 0.25], abs=1e-5)

    def test_ratio_is_epsilon_independent(self):
        rows = epsilon_sweep((1102, 2204), [0.5, 1, 2])
        assert [i for _, i in rows] == [0.5, 0.5, 0.5]

    def test_default_list(self):
        assert [e for e, _ in epsilon_sweep(from_samples([1, 3]))] == [0.5, 1.0, 2.0]

    def test_empty_list(self):
        with pytest.raises(InvalidEpsilon):
            epsilon_sweep(from_samples([1, 3]), [])
