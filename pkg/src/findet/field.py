"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Union

Coefficient = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientField:
    """Q when ``characteristic == 0``, otherwise F_p.

    Rational elements are stored as ``int`` when integral and as a reduced
    ``Fraction`` otherwise; F_p elements are ``int`` in ``[0, p)``.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise FieldError(f"{p} is not prime")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def size(self) -> float:
        return self.characteristic if self.characteristic else float("inf")

    def __str__(self) -> str:
        return f"F_{self.characteristic}" if self.characteristic else "Q"

    def convert(self, c) -> Coefficient:
        p = self.characteristic
        if isinstance(c, bool):
            c = int(c)
        if p:
            if isinstance(c, int):
                return c % p
            if isinstance(c, Rational):
                num, den = c.numerator % p, c.denominator % p
                if den == 0:
                    raise ZeroDivisionError(f"denominator of {c} vanishes mod {p}")
                return num * pow(den, -1, p) % p
            raise TypeError(f"cannot convert {c!r} into {self}")
        if isinstance(c, int):
            return c
        if isinstance(c, Rational):
            c = Fraction(c)
            return c.numerator if c.denominator == 1 else c
        raise TypeError(f"cannot convert {c!r} into {self}")

    def add(self, a, b):
        s = a + b
        return s % self.characteristic if self.characteristic else _canon(s)

    def sub(self, a, b):
        s = a - b
        return s % self.characteristic if self.characteristic else _canon(s)

    def mul(self, a, b):
        s = a * b
        return s % self.characteristic if self.characteristic else _canon(s)

    def neg(self, a):
        return (-a) % self.characteristic if self.characteristic else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return _canon(Fraction(1) / a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """Enumerate a finite field; undefined for Q."""
        if not self.characteristic:
            raise FieldError("Q is infinite")
        return range(self.characteristic)


def _canon(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


QQ = CoefficientField(0)


def GF(p: int) -> CoefficientField:
    return CoefficientField(p)
