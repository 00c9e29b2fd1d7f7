"""Atkinson indices, EDE income, Gini, subgroup decomposition and sweeps.

Inequality aversion ``epsilon`` is a plain float; :data:`INFINITY` (``math.inf``)
selects the Rawlsian limit where the EDE income is the minimum income.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import kernels
from .distributions import IncomeDistribution, LognormalSpec, mean
from .errors import (
    InfiniteEpsilonUnsupported,
    InvalidEpsilon,
    MissingLabel,
    NonPositiveAmount,
)

INFINITY = math.inf
DEFAULT_EPSILONS = (0.5, 1.0, 2.0)


def check_epsilon(eps: float) -> float:
    eps = float(eps)
    if math.isnan(eps) or eps < 0:
        raise InvalidEpsilon(f"inequality aversion must be >= 0, got {eps!r}")
    return eps


@dataclass(frozen=True)
class InequalityResult:
    index: float
    ede: float
    mean: float
    epsilon: float
    welfare: float


@dataclass(frozen=True)
class DecompositionResult:
    total: float
    between: float
    within: float


def utility(y: float, eps: float) -> float:
    """Isoelastic utility ``y**(1-eps)/(1-eps)``, ``log y`` at ``eps == 1``."""
    if eps == 1:
        return math.log(y)
    if math.isinf(eps):
        return y
    return y ** (1 - eps) / (1 - eps)


def welfare(dist: IncomeDistribution, eps: float) -> float:
    """Average utility ``sum f_i U(y_i)``.

    In the Rawlsian limit the welfare ordering is that of the minimum income,
    which is what gets returned.
    """
    eps = check_epsilon(eps)
    y, f = dist.incomes, dist.freqs
    if math.isinf(eps):
        return float(dist.support.min())
    if eps == 1:
        return kernels.log_sum(y, f, 1.0)
    return kernels.power_sum(y, f, 1 - eps, 1.0) / (1 - eps)


def ede(dist: IncomeDistribution, eps: float) -> float:
    """Equally distributed equivalent income for aversion ``eps``."""
    eps = check_epsilon(eps)
    support = dist.support
    lo, hi = float(support.min()), float(support.max())
    if lo == hi:
        return lo
    if eps == 0:
        return mean(dist)
    if math.isinf(eps):
        return lo
    y, f = dist.incomes, dist.freqs
    if eps == 1:
        return hi * math.exp(kernels.log_sum(y, f, hi))
    # normalizing by the extreme that keeps every ratio**(1-eps) <= 1 avoids overflow
    ref = lo if eps > 1 else hi
    return ref * kernels.power_sum(y, f, 1 - eps, ref) ** (1 / (1 - eps))


def atkinson(dist: IncomeDistribution, eps: float) -> InequalityResult:
    eps = check_epsilon(eps)
    mu = mean(dist)
    e = ede(dist, eps)
    index = 0.0 if dist.is_equal else max(0.0, 1.0 - e / mu)
    return InequalityResult(index=index, ede=e, mean=mu, epsilon=eps,
                            welfare=welfare(dist, eps))


def atkinson_ratio(representative_income: float, reference_mean: float,
                   eps: float) -> float:
    """Atkinson formula evaluated at one income against an external mean.

    ``1 - [(y/mu)**(1-eps)]**(1/(1-eps))`` cancels to ``1 - y/mu`` for every
    finite ``eps``, so that is what is returned. The result does not depend on
    ``eps`` and is not a distributional index.
    """
    eps = check_epsilon(eps)
    if math.isinf(eps):
        raise InfiniteEpsilonUnsupported("ratio mode has no minimum to take")
    y, mu = representative_income, reference_mean
    if not (y > 0 and mu > 0 and math.isfinite(y) and math.isfinite(mu)):
        raise NonPositiveAmount(f"income and mean must be positive, got {y!r} and {mu!r}")
    return 1.0 - y / mu


def atkinson_lognormal(spec: LognormalSpec, eps: float) -> float:
    """Closed form ``1 - exp(-eps * sigma**2 / 2)`` for a lognormal population."""
    eps = check_epsilon(eps)
    if math.isinf(eps):
        raise InfiniteEpsilonUnsupported("lognormal minimum is zero; use a finite epsilon")
    return -math.expm1(-eps * spec.sigma_log ** 2 / 2)


def gini(dist: IncomeDistribution) -> float:
    """Weighted mean absolute difference over twice the mean.

    Sorted prefix sums make this O(n log n).
    """
    if dist.is_equal:
        return 0.0
    order = np.argsort(dist.incomes, kind="stable")
    y = np.ascontiguousarray(dist.incomes[order])
    f = np.ascontiguousarray(dist.freqs[order])
    return max(0.0, kernels.gini_sorted(y, f) / mean(dist))


def decompose(dist: IncomeDistribution, group_labels: Sequence[Hashable],
              eps: float) -> DecompositionResult:
    """Split Atkinson inequality into between- and within-group parts.

    ``between`` is the index of the distribution in which each income is
    replaced by its group's EDE income; ``within`` closes the multiplicative
    identity ``1 - total = (1 - between)(1 - within)``.
    """
    eps = check_epsilon(eps)
    if math.isinf(eps):
        raise InfiniteEpsilonUnsupported("decomposition needs a finite epsilon")
    labels = list(group_labels)
    if len(labels) != len(dist):
        raise MissingLabel(f"{len(labels)} labels for {len(dist)} points")
    for i, lab in enumerate(labels):
        if lab is None or lab == "":
            raise MissingLabel(f"point {i} has no group label", index=i)

    groups: dict[Hashable, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)

    smoothed = np.empty(len(dist))
    for idx in groups.values():
        sub_w = dist.weights[idx]
        if sub_w.sum() > 0:
            sub = IncomeDistribution(dist.incomes[idx], sub_w)
            smoothed[idx] = ede(sub, eps)
        else:
            smoothed[idx] = dist.incomes[idx]

    total = atkinson(dist, eps).index
    between = atkinson(IncomeDistribution(smoothed, dist.weights), eps).index
    within = (total - between) / (1.0 - between)
    return DecompositionResult(total=total, between=between, within=within)


def epsilon_sweep(source: IncomeDistribution | tuple[float, float],
                  eps_list: Iterable[float] = DEFAULT_EPSILONS) -> list[tuple[float, float]]:
    """One ``(eps, index)`` row per requested aversion, in order.

    ``source`` is either a distribution or a ``(income, mean)`` pair for
    ratio mode.
    """
    eps_list = [check_epsilon(e) for e in eps_list]
    if not eps_list:
        raise InvalidEpsilon("epsilon list is empty")
    if isinstance(source, IncomeDistribution):
        return [(e, atkinson(source, e).index) for e in eps_list]
    y, mu = source
    return [(e, atkinson_ratio(y, mu, e)) for e in eps_list]
