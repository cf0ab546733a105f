"""Exact rational scalars and their text format.

``fractions.Fraction`` already keeps numerator/denominator in lowest terms with a
positive denominator and raises on division by zero, so it is used as-is.
"""

from fractions import Fraction
from typing import Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal literal into an exact Fraction.

    Decimals are converted digit-for-digit (``"0.1"`` is ``1/10``, not the
    nearest binary float).
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floats are not accepted; pass a string literal")
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational literal")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


def format_rational(value: RationalLike) -> str:
    """Serialize as ``"p/q"`` (always with an explicit denominator)."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"
