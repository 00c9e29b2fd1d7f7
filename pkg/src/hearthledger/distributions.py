"""Discrete weighted income distributions and a lognormal discretizer."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np
from scipy.special import ndtri

from . import kernels
from .errors import (
    EmptyInput,
    IndexOutOfRange,
    NegativeWeight,
    NonPositiveAmount,
    NonPositiveIncome,
    NonPositiveScale,
    RankReversal,
    TooFewPoints,
    TransferBankruptsDonor,
    UnequalWeights,
    ZeroTotalWeight,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class IncomeDistribution:
    """Positive incomes ``y_i`` with nonnegative weights.

    Points keep the order they were given in, so indices used by
    :func:`transfer` refer to input positions. ``weights`` are kept as
    supplied (counts or shares); ``freqs`` are the normalized frequencies
    ``f(y_i)``. Instances are immutable.

    Build through :func:`from_samples`, which validates; the constructor
    trusts its arguments.
    """

    __slots__ = ("incomes", "weights", "freqs")

    def __init__(self, incomes: np.ndarray, weights: np.ndarray):
        self.incomes = _frozen(np.ascontiguousarray(incomes, dtype=np.float64))
        self.weights = _frozen(np.ascontiguousarray(weights, dtype=np.float64))
        self.freqs = _frozen(self.weights / self.weights.sum())

    def __len__(self) -> int:
        return self.incomes.shape[0]

    def __iter__(self) -> Iterator[tuple[float, float]]:
        return zip(self.incomes.tolist(), self.weights.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IncomeDistribution):
            return NotImplemented
        return (np.array_equal(self.incomes, other.incomes)
                and np.array_equal(self.weights, other.weights))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if len(self) <= 6:
            body = ", ".join(f"({y!r}, {w!r})" for y, w in self)
        else:
            body = f"{len(self)} points"
        return f"IncomeDistribution([{body}])"

    @property
    def support(self) -> np.ndarray:
        """Incomes carrying positive weight."""
        return self.incomes[self.weights > 0]

    @property
    def is_equal(self) -> bool:
        """True when every weighted point has the same income."""
        s = self.support
        return bool(s.min() == s.max())


def from_samples(values: Iterable[float],
                 weights: Iterable[float] | None = None) -> IncomeDistribution:
    """Validate incomes (and optional weights) into an :class:`IncomeDistribution`.

    Omitted weights default to uniform. Errors carry ``index`` pointing at the
    first offending position.
    """
    y = np.asarray(values if isinstance(values, np.ndarray) else list(values),
                   dtype=np.float64)
    if y.ndim != 1 or y.shape[0] == 0:
        raise EmptyInput("distribution needs at least one income")
    if weights is None:
        w = np.ones_like(y)
    else:
        w = np.asarray(weights if isinstance(weights, np.ndarray) else list(weights),
                       dtype=np.float64)
        if w.shape != y.shape:
            raise EmptyInput(f"{w.shape[0]} weights for {y.shape[0]} incomes")
    bad = np.flatnonzero(~(y > 0) | ~np.isfinite(y))
    if bad.size:
        i = int(bad[0])
        raise NonPositiveIncome(f"income {y[i]!r} at position {i} is not a positive finite number",
                                index=i)
    bad = np.flatnonzero(~(w >= 0) | ~np.isfinite(w))
    if bad.size:
        i = int(bad[0])
        raise NegativeWeight(f"weight {w[i]!r} at position {i} is negative or not finite",
                             index=i)
    if not w.sum() > 0:
        raise ZeroTotalWeight("weights sum to zero")
    return IncomeDistribution(y, w)


def mean(dist: IncomeDistribution) -> float:
    """Weighted mean income ``sum f_i y_i``.

    Computed as ``sum w_i y_i / sum w_i`` so that exactly representable inputs
    give an exact result.
    """
    if dist.is_equal:
        return float(dist.support[0])
    return kernels.weighted_sum(dist.incomes, dist.weights) / float(dist.weights.sum())


def scale(dist: IncomeDistribution, lam: float) -> IncomeDistribution:
    """Multiply every income by ``lam > 0``; weights are untouched."""
    if not (lam > 0 and math.isfinite(lam)):
        raise NonPositiveScale(f"scale factor must be positive and finite, got {lam!r}")
    return IncomeDistribution(dist.incomes * lam, dist.weights)


def transfer(dist: IncomeDistribution, from_index: int, to_index: int,
             amount: float) -> IncomeDistribution:
    """Move ``amount`` from one point to another of equal weight.

    The donor must stay strictly positive and may not end up below the
    recipient, so every accepted transfer is progressive.
    """
    n = len(dist)
    for i in (from_index, to_index):
        if not 0 <= i < n:
            raise IndexOutOfRange(f"index {i} outside 0..{n - 1}", index=i)
    if from_index == to_index:
        raise IndexOutOfRange("donor and recipient are the same point", index=from_index)
    if not amount > 0:
        raise NonPositiveAmount(f"transfer amount must be > 0, got {amount!r}")
    if dist.weights[from_index] != dist.weights[to_index]:
        raise UnequalWeights(
            f"weights differ: {dist.weights[from_index]!r} vs {dist.weights[to_index]!r}")
    donor = dist.incomes[from_index] - amount
    recipient = dist.incomes[to_index] + amount
    if not donor > 0:
        raise TransferBankruptsDonor(f"donor would be left with {donor!r}", index=from_index)
    if donor < recipient:
        raise RankReversal(
            f"donor would end at {donor!r}, below recipient at {recipient!r}",
            index=from_index)
    y = dist.incomes.copy()
    y[from_index] = donor
    y[to_index] = recipient
    return IncomeDistribution(y, dist.weights)


@dataclass(frozen=True)
class LognormalSpec:
    """Log-income ~ Normal(mu_log, sigma_log**2)."""

    mu_log: float
    sigma_log: float

    def __post_init__(self):
        if not (self.sigma_log >= 0 and math.isfinite(self.sigma_log)):
            raise ValueError(f"sigma_log must be finite and >= 0, got {self.sigma_log!r}")
        if not math.isfinite(self.mean):
            raise ValueError("implied lognormal mean is not finite")

    @property
    def mean(self) -> float:
        return math.exp(self.mu_log + self.sigma_log ** 2 / 2)


def quantize_lognormal(spec: LognormalSpec, n_points: int) -> IncomeDistribution:
    """Equal-weight points at the quantile midpoints ``(k + 1/2) / n``."""
    if n_points < 2:
        raise TooFewPoints(f"need at least 2 points, got {n_points}")
    if spec.sigma_log == 0:
        y = np.full(n_points, math.exp(spec.mu_log))
    else:
        p = (np.arange(n_points, dtype=np.float64) + 0.5) / n_points
        y = np.exp(spec.mu_log + spec.sigma_log * ndtri(p))
    return IncomeDistribution(y, np.ones(n_points))
