"""Exact max-plus scalars.

A tropical value is either a :class:`fractions.Fraction` or the singleton
:data:`BOTTOM` standing for the additive identity -inf.  ``oplus`` is max,
``otimes`` is +, ``oslash`` is - and ``opow`` is scalar multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DomainError, TropicalDivisionError

__all__ = [
    "BOTTOM",
    "ONE",
    "Bottom",
    "TropValue",
    "is_bottom",
    "oplus",
    "otimes",
    "oslash",
    "opow",
    "to_rational",
    "to_value",
    "format_value",
    "format_rational",
]


class Bottom:
    """The tropical zero, ordered strictly below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (Bottom, ())

    def __hash__(self):
        return hash("tropnev.BOTTOM")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


BOTTOM = Bottom()
ONE = Fraction(0)

TropValue = Union[Fraction, Bottom]


def is_bottom(a) -> bool:
    return a is BOTTOM


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``p/q`` strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational literal: {x!r}") from exc
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    raise TypeError(f"cannot interpret {x!r} as a rational")


def to_value(x) -> TropValue:
    """Like :func:`to_rational` but also accepts bottom (``BOTTOM`` or ``'-inf'``)."""
    if x is BOTTOM:
        return BOTTOM
    if isinstance(x, str) and x.strip() == "-inf":
        return BOTTOM
    return to_rational(x)


def oplus(a: TropValue, b: TropValue) -> TropValue:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def otimes(a: TropValue, b: TropValue) -> TropValue:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def oslash(a: TropValue, b: TropValue) -> TropValue:
    if b is BOTTOM:
        raise TropicalDivisionError("division by bottom (0_o has no inverse)")
    if a is BOTTOM:
        return BOTTOM
    return a - b


def opow(a: TropValue, s) -> TropValue:
    s = to_rational(s)
    if a is BOTTOM:
        if s <= 0:
            raise TropicalDivisionError("bottom raised to a nonpositive power")
        return BOTTOM
    return s * a


def format_rational(q: Fraction) -> str:
    """Decimal string when the expansion terminates, ``p/q`` otherwise."""
    q = Fraction(q)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    if q.denominator == 1:
        return str(q.numerator)
    digits = max(twos, fives)
    scaled = q * 10**digits
    assert scaled.denominator == 1
    n = scaled.numerator
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def format_value(a: TropValue) -> str:
    """Literal form used in input files: ``p/q``, integer, or ``-inf``."""
    if a is BOTTOM:
        return "-inf"
    a = Fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"
