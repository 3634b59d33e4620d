"""Dense univariate polynomials over a field, low degree first."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from ..errors import FieldMismatch
from .fields import Field, QQ
from .linalg import Matrix


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence = ()):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def from_roots(cls, field: Field, roots) -> "Poly":
        """Monic polynomial ``prod (t - r)^m`` for ``roots`` given as ``(r, m)`` pairs."""
        p = cls(field, (1,))
        for r, m in roots:
            p = p * cls(field, (-field(r), 1)) ** m
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return Poly(self.field, (other,))

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.field.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = o.coeffs + (z,) * (n - len(o.coeffs))
        return Poly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = Poly(self.field, (1,))
        for _ in range(k):
            r = r * self
        return r

    def __divmod__(self, other):
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [self.field.zero] * max(0, len(rem) - len(o.coeffs) + 1)
        lead_inv = self.field.one / o.coeffs[-1]
        while len(rem) >= len(o.coeffs) and rem:
            shift = len(rem) - len(o.coeffs)
            c = rem[-1] * lead_inv
            q[shift] = c
            for i, b in enumerate(o.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self:
            return self
        inv = self.field.one / self.coeffs[-1]
        return Poly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, self._lift(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def lcm(self, other: "Poly") -> "Poly":
        if not self or not other:
            return Poly(self.field)
        return (self * other // self.gcd(other)).monic()

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a scalar or a square :class:`Matrix`."""
        if isinstance(x, Matrix):
            n = x.nrows
            acc = Matrix.zeros(self.field, n, n)
            ident = Matrix.identity(self.field, n)
            for c in reversed(self.coeffs):
                acc = acc @ x + ident.scale(c)
            return acc
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly(self.field, (other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = str(c)
            if mono:
                text = mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}"
            else:
                text = cs
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def roots(self) -> list:
        """Roots in the base field with multiplicities, as ``[(root, mult)]`` sorted by root.

        Rational roots come from the rational root theorem applied to the
        integer-cleared polynomial; prime-field roots by exhaustive search.
        """
        if not self:
            raise ValueError("zero polynomial has every element as a root")
        found = []
        p = self.monic()
        for r in _candidate_roots(p):
            m = 0
            lin = Poly(self.field, (-r, 1))
            while p.degree >= 1:
                q, rem = divmod(p, lin)
                if rem:
                    break
                p = q
                m += 1
            if m:
                found.append((r, m))
        key = (lambda rm: rm[0]) if self.field == QQ else (lambda rm: int(rm[0]))
        return sorted(found, key=key)

    def split_remainder(self) -> "Poly":
        """Monic cofactor left after removing every root found by :meth:`roots`."""
        rest = self.monic()
        for r, m in self.roots():
            rest = rest // Poly(self.field, (-r, 1)) ** m
        return rest


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _candidate_roots(p: Poly):
    if p.field != QQ:
        return p.field.elements()
    cands = set()
    if p.coeffs and not p.coeffs[0]:
        cands.add(Fraction(0))
    # strip the zero root so the constant term is nonzero
    cs = list(p.coeffs)
    while cs and not cs[0]:
        cs.pop(0)
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if len(ints) > 1:
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                cands.add(Fraction(a, b))
                cands.add(Fraction(-a, b))
    return sorted(cands)


def minimal_polynomial(m: Matrix) -> Poly:
    """Monic minimal polynomial of a square matrix.

    Built as the lcm over basis vectors ``e_i`` of the monic generator of
    ``{q : q(m) e_i = 0}``, found from the first linear dependency in the Krylov
    sequence ``e_i, m e_i, m^2 e_i, ...``.
    """
    from .linalg import solve

    n = m.nrows
    field = m.field
    result = Poly(field, (1,))
    for i in range(n):
        v = tuple(field.one if k == i else field.zero for k in range(n))
        krylov = [v]
        while True:
            w = m.apply(krylov[-1])
            cols = Matrix.from_columns(field, krylov, n)
            x = solve(cols, w)
            if x is not None:
                q = Poly(field, [-c for c in x] + [field.one])
                result = result.lcm(q)
                break
            krylov.append(w)
    return result
