"""Half-up rounding for display. Computations never see rounded values."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction


def round_half_up(value: float | int | Fraction, places: int = 0) -> Decimal:
    if isinstance(value, Fraction):
        d = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        d = Decimal(value)
    return d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def fmt(value: float | int, places: int = 4) -> str:
    d = round_half_up(value, places)
    if d == 0:
        d = abs(d)
    return str(d)
