"""Exact arithmetic in Q/Z.

A value is stored as a reduced fraction num/den with 0 <= num < den and
gcd(num, den) == 1; zero is canonically 0/1.  All torsion bookkeeping in the
package (cochain values, class coordinates, primitives) runs through this
type, so equality is exact and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class QZ:
    """An element of Q/Z, reduced mod 1 to the canonical representative."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("QZ denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("QZ is immutable")

    # -- arithmetic (group law is addition mod 1) --

    def __add__(self, other: "QZ") -> "QZ":
        return QZ(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "QZ") -> "QZ":
        return QZ(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QZ":
        return QZ(-self.num, self.den)

    def scale(self, k: int) -> "QZ":
        """Integer scalar multiple k*self (Z-module structure)."""
        return QZ(k * self.num, self.den)

    def __mul__(self, k):
        return self.scale(k) if isinstance(k, int) else NotImplemented

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.num != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, QZ) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"QZ({self.num}, {self.den})"

    # -- conversions --

    def as_fraction(self) -> Fraction:
        """The canonical rational lift in [0, 1)."""
        return Fraction(self.num, self.den)

    @staticmethod
    def from_fraction(q: Fraction) -> "QZ":
        return QZ(q.numerator, q.denominator)

    def __str__(self) -> str:
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    @staticmethod
    def parse(text: str) -> "QZ":
        """Parse 'num/den' (or a bare integer, which reduces to 0)."""
        text = text.strip()
        if "/" in text:
            a, _, b = text.partition("/")
            return QZ(int(a), int(b))
        return QZ(int(text))


ZERO = QZ(0)
