"""Scalar fields: the rationals (via :class:`fractions.Fraction`) and prime fields.

Rational scalars are plain ``Fraction`` objects.  Prime-field scalars are
:class:`Mod` instances.  Mixing the two in arithmetic raises
:class:`~radkernel.errors.FieldMismatch`; Python ``int`` coerces into either.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from ..errors import FieldMismatch

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Mod:
    """Residue class modulo a prime ``p``; value kept in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, bool):
            return int(other)
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise FieldMismatch(f"cannot mix GF({self.p}) and rational {other}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Mod(o, self.p) * self.inverse()

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Scalar = Union[Fraction, Mod]


class Field:
    """Common interface of :data:`QQ` and :func:`GF`."""

    characteristic: int = 0
    tag: str = ""

    def __call__(self, x) -> Scalar:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def parse(self, text: str) -> Scalar:
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ValueError(f"not a rational literal: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ZeroDivisionError(text)
        return self(Fraction(num, den))

    def format(self, x: Scalar) -> str:
        return str(x)

    def contains(self, x) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def elements(self):
        raise TypeError(f"{self} is infinite")


class RationalField(Field):
    characteristic = 0
    tag = "rational"

    def __call__(self, x) -> Fraction:
        if type(x) is Fraction:
            return x
        if isinstance(x, Mod):
            raise FieldMismatch(f"cannot convert GF({x.p}) element to a rational")
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def to_json(self):
        return {"kind": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    tag = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> Mod:
        if type(x) is Mod:
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element given to GF({self.p})")
            return x
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element given to GF({self.p})")
            return x
        if isinstance(x, float):
            raise TypeError("floats are not exact scalars")
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return Mod(x.numerator, self.p) * Mod(x.denominator, self.p).inverse()
        return Mod(int(x), self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Mod) and x.p == self.p

    def elements(self):
        return [Mod(i, self.p) for i in range(self.p)]

    def to_json(self):
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj) -> Field:
    if obj is None or obj == "rational" or (isinstance(obj, dict) and obj.get("kind") == "rational"):
        return QQ
    if obj.get("kind") == "prime":
        return GF(int(obj["p"]))
    raise ValueError(f"unknown field descriptor {obj!r}")
