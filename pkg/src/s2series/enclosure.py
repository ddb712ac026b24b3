"""Exact rationals and certified enclosures.

``fractions.Fraction`` is the rational type: it is always stored reduced with a
positive denominator, which is exactly the invariant we need.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

Rational = Fraction


def format_rational(x: Fraction) -> str:
    """Text form ``numerator/denominator`` in base 10, denominator always present."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    if not sep:
        raise ValueError(f"expected 'numerator/denominator', got {text!r}")
    return Fraction(int(num), int(den))


def decimal_preview(x: Fraction, digits: int = 50) -> str:
    """Rounded decimal approximation of an exact rational, for display only."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` of rationals certified to contain a real constant."""

    lo: Fraction
    hi: Fraction
    target_name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure: lo={self.lo} > hi={self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def gap(self, other: "Enclosure") -> Fraction:
        """Distance between the two intervals, 0 when they overlap."""
        return max(other.lo - self.hi, self.lo - other.hi, Fraction(0))

    def scale(self, factor, target_name: str | None = None) -> "Enclosure":
        factor = Fraction(factor)
        lo, hi = sorted((self.lo * factor, self.hi * factor))
        return Enclosure(lo, hi, self.target_name if target_name is None else target_name)

    def to_dict(self) -> dict:
        return {
            "target_name": self.target_name,
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "width": format_rational(self.width),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Enclosure":
        enc = cls(parse_rational(data["lo"]), parse_rational(data["hi"]), data.get("target_name", ""))
        if "width" in data and parse_rational(data["width"]) != enc.width:
            raise ValueError("width field does not match hi - lo")
        return enc
