"""Exact arithmetic in the cyclotomic field Q(zeta_8).

The field is generated by zeta = exp(i pi / 4) with zeta^4 = -1, so every
element has a unique expansion

    x = c0 + c1 zeta + c2 zeta^2 + c3 zeta^3,   c_k in Q.

The two constants the rest of the engine needs live here exactly:
i = zeta^2 and sqrt(2) = zeta - zeta^3.  Complex conjugation sends zeta to
-zeta^3, i.e. (c0, c1, c2, c3) -> (c0, -c3, -c2, -c1), and inversion goes
through the product of the three nontrivial Galois conjugates, whose product
with x is the rational field norm.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "DivisionByZero",
    "ExactScalar",
    "ZERO",
    "ONE",
    "ZETA",
    "I",
    "SQRT2",
    "HALF",
    "INV_SQRT2",
]

_Rat = int | Fraction


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero element of Q(zeta_8)."""


def _as_ratio(c: _Rat) -> tuple[int, int]:
    if isinstance(c, int):
        return c, 1
    if isinstance(c, Fraction):
        return c.numerator, c.denominator
    raise TypeError(f"rational coefficient expected, got {type(c).__name__}")


class ExactScalar:
    """An element of Q(zeta_8), stored as integer numerators over one denominator."""

    __slots__ = ("_n", "_d")

    def __init__(self, c0: _Rat = 0, c1: _Rat = 0, c2: _Rat = 0, c3: _Rat = 0) -> None:
        ratios = [_as_ratio(c) for c in (c0, c1, c2, c3)]
        den = math.lcm(*(r[1] for r in ratios))
        nums = tuple(r[0] * (den // r[1]) for r in ratios)
        g = math.gcd(den, *nums)
        self._n = tuple(n // g for n in nums)
        self._d = den // g

    @classmethod
    def _raw(cls, nums: tuple[int, int, int, int], den: int) -> ExactScalar:
        # den > 0 required; normalization happens here exactly once.
        self = object.__new__(cls)
        g = math.gcd(den, *nums)
        self._n = tuple(n // g for n in nums)
        self._d = den // g
        return self

    @classmethod
    def from_rational(cls, value: _Rat) -> ExactScalar:
        num, den = _as_ratio(value)
        return cls._raw((num, 0, 0, 0), den)

    @classmethod
    def zeta_power(cls, k: int) -> ExactScalar:
        """zeta^k for any integer k, reduced with zeta^4 = -1."""
        k %= 8
        sign = 1 if k < 4 else -1
        nums = [0, 0, 0, 0]
        nums[k % 4] = sign
        return cls._raw(tuple(nums), 1)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._d) for n in self._n)

    @property
    def is_rational(self) -> bool:
        return self._n[1] == self._n[2] == self._n[3] == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._n[0], self._d)

    def __bool__(self) -> bool:
        return self._n != (0, 0, 0, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactScalar):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            num, den = _as_ratio(other)
            return self._n == (num, 0, 0, 0) and self._d == den
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(Fraction(self._n[0], self._d))
        return hash((self._n, self._d))

    def __neg__(self) -> ExactScalar:
        out = object.__new__(ExactScalar)
        out._n = tuple(-n for n in self._n)
        out._d = self._d
        return out

    def __add__(self, other: ExactScalar | _Rat) -> ExactScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._n, other._n
        da, db = self._d, other._d
        return ExactScalar._raw(tuple(x * db + y * da for x, y in zip(a, b)), da * db)

    __radd__ = __add__

    def __sub__(self, other: ExactScalar | _Rat) -> ExactScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ExactScalar | _Rat) -> ExactScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: ExactScalar | _Rat) -> ExactScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._n, other._n
        # Convolution of zeta-power expansions; wrap at degree 4 with a sign.
        out = [0, 0, 0, 0]
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                k = i + j
                if k < 4:
                    out[k] += ai * bj
                else:
                    out[k - 4] -= ai * bj
        return ExactScalar._raw(tuple(out), self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other: ExactScalar | _Rat) -> ExactScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: ExactScalar | _Rat) -> ExactScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, exponent: int) -> ExactScalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        out = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> ExactScalar:
        """Complex conjugation, zeta -> zeta^(-1) = -zeta^3."""
        a = self._n
        return ExactScalar._raw((a[0], -a[3], -a[2], -a[1]), self._d)

    def galois(self, k: int) -> ExactScalar:
        """The automorphism zeta -> zeta^k; k must be odd mod 8."""
        if k % 2 == 0:
            raise ValueError("Galois conjugates of zeta_8 need odd k")
        out = [0, 0, 0, 0]
        for i, ai in enumerate(self._n):
            if not ai:
                continue
            e = (i * k) % 8
            if e < 4:
                out[e] += ai
            else:
                out[e - 4] -= ai
        return ExactScalar._raw(tuple(out), self._d)

    def field_norm(self) -> Fraction:
        """Product of all four Galois conjugates; rational, zero only at zero."""
        prod = self * self.galois(3) * self.galois(5) * self.galois(7)
        return prod.as_fraction()

    def inv(self) -> ExactScalar:
        if not self:
            raise DivisionByZero("zero has no inverse in Q(zeta_8)")
        cofactor = self.galois(3) * self.galois(5) * self.galois(7)
        n = self.field_norm()
        return cofactor * ExactScalar.from_rational(1 / n)

    def to_float(self) -> complex:
        z = complex(math.sqrt(0.5), math.sqrt(0.5))
        c = self.coefficients
        return float(c[0]) + float(c[1]) * z + float(c[2]) * z**2 + float(c[3]) * z**3

    def __str__(self) -> str:
        c = self.coefficients
        return f"{c[0]} + {c[1]}*z + {c[2]}*z2 + {c[3]}*z3"

    def __repr__(self) -> str:
        return f"ExactScalar.from_str({str(self)!r})"

    @classmethod
    def from_str(cls, text: str) -> ExactScalar:
        parts = [p.strip() for p in text.split("+")]
        if len(parts) != 4:
            raise ValueError(f"expected four '+'-separated terms, got {text!r}")
        coeffs = []
        for part, suffix in zip(parts, ("", "*z", "*z2", "*z3")):
            if suffix and not part.endswith(suffix):
                raise ValueError(f"term {part!r} should end with {suffix!r}")
            body = part[: len(part) - len(suffix)] if suffix else part
            coeffs.append(Fraction(body))
        return cls(*coeffs)


def _coerce(value: object) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.from_rational(value)
    return NotImplemented


ZERO = ExactScalar()
ONE = ExactScalar(1)
ZETA = ExactScalar(0, 1)
I = ExactScalar(0, 0, 1)
SQRT2 = ExactScalar(0, 1, 0, -1)
HALF = ExactScalar(Fraction(1, 2))
INV_SQRT2 = ExactScalar(0, Fraction(1, 2), 0, Fraction(-1, 2))
