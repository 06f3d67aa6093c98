"""Decimal rendering of exact rationals (round-half-even, fixed digits)."""

from __future__ import annotations

from fractions import Fraction


def decimal_str(value: int | Fraction, digits: int) -> str:
    """Render an exact rational with exactly `digits` decimals, ties to even.

    Internal values stay exact everywhere; this is the one place values are
    rounded, and only for display.
    """
    if digits < 0:
        raise ValueError(f"digits must be non-negative, got {digits}")
    frac = Fraction(value)
    sign = "-" if frac < 0 else ""
    scaled = abs(frac) * 10**digits
    whole, rem = divmod(scaled.numerator, scaled.denominator)
    double = 2 * rem
    if double > scaled.denominator or (double == scaled.denominator and whole % 2 == 1):
        whole += 1
    text = str(whole).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def rational_str(value: int | Fraction) -> str:
    """Serialize a rational as "numerator/denominator" (or plain integer)."""
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"
