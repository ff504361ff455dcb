"""Torus-invariant Q-Weil divisors on a fixed fan."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Optional, Sequence, Tuple, Union

from . import exact, toric
from .errors import DimensionMismatch, NotIntegral, NotTorsion
from .exact import IntVec
from .toric import Fan

Rational = Union[int, Fraction, str]


def parse_rational(x: Rational) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a number into an exact Fraction."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'p/q' strings")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QDivisor:
    fan: Fan
    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.fan.n_rays:
            raise DimensionMismatch(
                f"{len(self.coefficients)} coefficients for {self.fan.n_rays} rays"
            )

    @classmethod
    def from_values(cls, fan: Fan, values: Sequence[Rational]) -> "QDivisor":
        return cls(fan, tuple(parse_rational(x) for x in values))

    @classmethod
    def zero(cls, fan: Fan) -> "QDivisor":
        return cls(fan, (Fraction(0),) * fan.n_rays)

    @classmethod
    def prime(cls, fan: Fan, ray: int, coefficient: Rational = 1) -> "QDivisor":
        values = [0] * fan.n_rays
        values[ray] = coefficient
        return cls.from_values(fan, values)

    def _same_fan(self, other: "QDivisor") -> None:
        if self.fan != other.fan:
            raise DimensionMismatch("divisors live on different fans")

    def __add__(self, other: "QDivisor") -> "QDivisor":
        self._same_fan(other)
        return QDivisor(self.fan, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        self._same_fan(other)
        return QDivisor(self.fan, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> "QDivisor":
        return QDivisor(self.fan, tuple(-a for a in self.coefficients))

    def __mul__(self, k: Rational) -> "QDivisor":
        k = parse_rational(k)
        return QDivisor(self.fan, tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coefficients)

    def integer_coefficients(self) -> IntVec:
        if not self.is_integral():
            raise NotIntegral(f"divisor {self.as_strings()} is not integral")
        return tuple(a.numerator for a in self.coefficients)

    def as_strings(self) -> list:
        return [format_rational(a) for a in self.coefficients]

    def __str__(self) -> str:
        terms = [f"{format_rational(a)}*D{i}" for i, a in enumerate(self.coefficients) if a]
        return " + ".join(terms) if terms else "0"


def floor_div(D: QDivisor) -> QDivisor:
    return QDivisor(D.fan, tuple(Fraction(math.floor(a)) for a in D.coefficients))


def frac_div(D: QDivisor) -> QDivisor:
    return D - floor_div(D)


def support(D: QDivisor) -> FrozenSet[int]:
    return frozenset(i for i, a in enumerate(D.coefficients) if a != 0)


def frac_support(D: QDivisor) -> FrozenSet[int]:
    return frozenset(i for i, a in enumerate(D.coefficients) if a.denominator != 1)


def denominator(D: QDivisor) -> int:
    """Least positive ``L`` with ``L * D`` integral."""
    return math.lcm(*(a.denominator for a in D.coefficients)) if D.coefficients else 1


def is_principal(D: QDivisor) -> Optional[IntVec]:
    """A character ``v`` with ``div(chi^v) = D``, or None."""
    return exact.solve_integer(D.fan.pairing_matrix(), D.integer_coefficients())


def linearly_equivalent(D1: QDivisor, D2: QDivisor) -> bool:
    return is_principal(D1 - D2) is not None


def torsion_index(D: QDivisor) -> Tuple[int, IntVec]:
    """Least ``r >= 1`` with ``r*D`` principal, and a character trivializing it.

    Candidates are multiples of the coefficient denominator, up to the
    torsion exponent of the class group, which bounds the search.
    """
    cl = toric.class_group(D.fan)
    L = denominator(D)
    if cl.order_of((L * D).integer_coefficients()) is None:
        raise NotTorsion(f"the class of {D} has infinite order")
    for k in range(1, cl.exponent + 1):
        v = is_principal((L * k) * D)
        if v is not None:
            return L * k, v
    raise AssertionError("torsion class without a trivializing multiple")


def is_cartier(D: QDivisor) -> bool:
    """Locally principal: one character per maximal cone matches ``D`` on its rays."""
    coeffs = D.integer_coefficients()
    fan = D.fan
    for cone in fan.cones:
        rows = fan.cone_rays(cone)
        if exact.solve_integer(rows, [coeffs[i] for i in cone]) is None:
            return False
    return True
