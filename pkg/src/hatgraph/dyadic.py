from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True, init=False)
class DyadicProb:
    """Exact probability ``numerator / 2**exponent`` in lowest terms."""

    numerator: int
    exponent: int

    def __init__(self, numerator: int, exponent: int):
        if exponent < 0 or numerator < 0 or numerator > 1 << exponent:
            raise ValueError(f"{numerator}/2^{exponent} is not a probability")
        while exponent > 0 and numerator % 2 == 0:
            numerator //= 2
            exponent -= 1
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def from_fraction(cls, q) -> "DyadicProb":
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} does not have a power-of-two denominator")
        return cls(q.numerator, den.bit_length() - 1)

    @property
    def denominator(self) -> int:
        return 1 << self.exponent

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self):
        return self.numerator / self.denominator

    def _cmp_key(self, other):
        if isinstance(other, DyadicProb):
            other = other.to_fraction()
        elif isinstance(other, (int, Fraction)):
            other = Fraction(other)
        else:
            return NotImplemented
        return other

    def __eq__(self, other):
        other = self._cmp_key(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-multiplication, no division
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __lt__(self, other):
        other = self._cmp_key(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator * other.denominator < other.numerator * self.denominator

    def __hash__(self):
        return hash(self.to_fraction())

    def exact_str(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        if self.exponent == 1:
            return f"{self.numerator}/2"
        return f"{self.numerator}/2^{self.exponent}"

    def decimal_str(self) -> str:
        """Terminating decimal expansion, exact."""
        e = self.exponent
        digits = str(self.numerator * 5**e).rjust(e + 1, "0")
        if e == 0:
            return digits
        return f"{digits[:-e]}.{digits[-e:]}"

    def __str__(self):
        return f"{self.exact_str()} ({self.decimal_str()})"
