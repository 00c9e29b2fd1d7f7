"""Exception and warning types raised across hearthledger.

Every data problem raises a subclass of :class:`HearthError` (itself a
``ValueError``) so callers and the CLI can separate bad input from bugs.
Ingestion errors carry the offending ``row`` (1-based file line) and
``column`` when they are known.
"""

from __future__ import annotations


class HearthError(ValueError):
    """Base class for all validation errors."""

    def __init__(self, message: str, *, row: int | None = None,
                 column: str | None = None, index: int | None = None):
        self.row = row
        self.column = column
        self.index = index
        self.detail = message
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


# distributions
class EmptyInput(HearthError):
    pass


class NonPositiveIncome(HearthError):
    pass


class NegativeWeight(HearthError):
    pass


class ZeroTotalWeight(HearthError):
    pass


class NonPositiveScale(HearthError):
    pass


class IndexOutOfRange(HearthError):
    pass


class TransferBankruptsDonor(HearthError):
    pass


class RankReversal(TransferBankruptsDonor):
    """Transfer would leave the donor poorer than the recipient."""


class UnequalWeights(HearthError):
    pass


class TooFewPoints(HearthError):
    pass


# inequality
class InvalidEpsilon(HearthError):
    pass


class NonPositiveAmount(HearthError):
    pass


class InfiniteEpsilonUnsupported(HearthError):
    pass


class MissingLabel(HearthError):
    pass


# national accounts
class Overflow(HearthError):
    pass


class AmbiguousBreakdown(HearthError):
    pass


class ZeroPopulation(HearthError):
    pass


class InvariantViolation(HearthError):
    pass


# model
class DistributionModeUnderspecified(HearthError):
    pass


class NegativeTolerance(HearthError):
    pass


# ingest
class MissingColumn(HearthError):
    pass


class NonNumericCell(HearthError):
    pass


class RateOutOfRange(HearthError):
    pass


class DataWarning(UserWarning):
    """Input was accepted but looks suspicious."""


class PlausibilityWarning(DataWarning):
    pass


class DuplicateCountryWarning(DataWarning):
    pass


class TradeDeficitWarning(DataWarning):
    """Expenditure-side GDP came out negative because imports dominate."""
