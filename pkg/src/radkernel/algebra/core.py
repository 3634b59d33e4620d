"""Algebra base class and the immutable :class:`Element` type.

Every element stores a *normal form*: a dict mapping standard monomials to
nonzero scalars.  What a "monomial" is depends on the algebra kind (exponent
vector, word, basis index, or ``(frequency, power)`` pair); all arithmetic is
routed through the owning algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..errors import AlgebraMismatch, InfiniteDimensional
from ..exactmath import Field, Matrix, Mod, Subspace


def _is_scalar_like(x) -> bool:
    return isinstance(x, (int, Fraction, Mod)) and not isinstance(x, bool)


class Element:
    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: "Algebra", terms: dict):
        # callers guarantee ``terms`` is already normalized
        self.algebra = algebra
        self.terms = terms
        self._hash = None

    def _lift(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")
            return other
        if _is_scalar_like(other):
            return self.algebra.scalar(other)
        raise TypeError(f"cannot combine Element with {type(other).__name__}")

    def __add__(self, other):
        o = self._lift(other)
        terms = dict(self.terms)
        for k, c in o.terms.items():
            v = terms.get(k)
            v = c if v is None else v + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Element":
        c = self.algebra.field(c)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if _is_scalar_like(other):
            return self.scale(other)
        o = self._lift(other)
        return self.algebra.mul(self, o)

    def __rmul__(self, other):
        if _is_scalar_like(other):
            return self.scale(other)
        return self._lift(other) * self

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            raise ValueError("negative powers are not supported")
        one = self.algebra.one()
        if not self.algebra.commutative:
            result = one
            for _ in range(k):
                result = result * self
            return result
        result, base = one, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return (other.algebra is self.algebra or other.algebra == self.algebra) \
                and self.terms == other.terms
        if _is_scalar_like(other):
            return self.terms == self.algebra.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        unit = self.algebra.unit_key
        return all(k == unit for k in self.terms)

    def scalar_value(self):
        """The scalar ``c`` when this element equals ``c * 1``."""
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar multiple of the unit")
        return self.terms.get(self.algebra.unit_key, self.algebra.field.zero)

    def coords(self) -> tuple:
        return self.algebra.coords(self)

    @property
    def degree(self) -> int:
        """Largest monomial degree present (``-1`` for zero)."""
        return max((self.algebra.mono_degree(k) for k in self.terms), default=-1)

    def __str__(self):
        return self.algebra.format(self)

    def __repr__(self):
        return f"Element({self.algebra.format(self)!r})"


class Algebra:
    """Common machinery; subclasses define monomials and their products."""

    kind: str = ""
    field: Field
    names: tuple

    # ---- to be provided by subclasses -------------------------------------------------
    unit_key = None

    def _mul_keys(self, k1, k2) -> dict:
        raise NotImplementedError

    def is_standard(self, key) -> bool:
        return True

    def sort_key(self, key):
        return key

    def mono_degree(self, key) -> int:
        return 0

    def format_monomial(self, key) -> str:
        raise NotImplementedError

    @property
    def commutative(self) -> bool:
        raise NotImplementedError

    @property
    def dim(self) -> int | None:
        """Dimension, or ``None`` for infinite-dimensional algebras."""
        raise NotImplementedError

    def _basis_keys(self) -> list:
        raise NotImplementedError

    def standard_monomials(self, max_degree: int) -> list:
        raise NotImplementedError

    def gen(self, name: str) -> Element:
        raise NotImplementedError

    def _key(self):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    # ---- shared behaviour ---------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Algebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def is_finite(self) -> bool:
        return self.dim is not None

    def basis(self) -> list:
        if not self.is_finite:
            raise InfiniteDimensional(f"{self} has no finite basis")
        if not hasattr(self, "_basis_cache"):
            keys = self._basis_keys()
            self._basis_cache = keys
            self._index_cache = {k: i for i, k in enumerate(keys)}
        return self._basis_cache

    def basis_elements(self) -> list[Element]:
        return [self.monomial(k) for k in self.basis()]

    def index_of(self, key) -> int:
        self.basis()
        return self._index_cache[key]

    def element(self, terms: dict | Iterable = ()) -> Element:
        """Normal form of ``sum c * monomial``; nonstandard monomials are dropped."""
        items = terms.items() if isinstance(terms, dict) else terms
        out: dict = {}
        for k, c in items:
            c = self.field(c)
            if not c or not self.is_standard(k):
                continue
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Element(self, out)

    def monomial(self, key, coeff=1) -> Element:
        return self.element({key: coeff})

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return self.scalar(1)

    def scalar(self, c) -> Element:
        c = self.field(c)
        return Element(self, {self.unit_key: c} if c else {})

    def _mul_keys_cached(self, k1, k2) -> tuple:
        # monomial products are reused heavily; cache them for finite algebras
        cache = self.__dict__.setdefault("_mul_cache", {})
        hit = cache.get((k1, k2))
        if hit is None:
            hit = tuple(self._mul_keys(k1, k2).items())
            if self.is_finite:
                cache[(k1, k2)] = hit
        return hit

    def mul(self, a: Element, b: Element) -> Element:
        out: dict = {}
        zero = self.field.zero
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                for k, c in self._mul_keys_cached(k1, k2):
                    v = c1 * c2 if c == 1 else c1 * c2 * c
                    out[k] = out.get(k, zero) + v
        return Element(self, {k: c for k, c in out.items() if c})

    def coords(self, e: Element) -> tuple:
        basis = self.basis()
        z = self.field.zero
        v = [z] * len(basis)
        for k, c in e.terms.items():
            v[self._index_cache[k]] = c
        return tuple(v)

    def from_coords(self, v) -> Element:
        basis = self.basis()
        if len(v) != len(basis):
            raise ValueError(f"expected {len(basis)} coordinates, got {len(v)}")
        return self.element({k: c for k, c in zip(basis, v)})

    def linear_map_matrix(self, f) -> Matrix:
        """Matrix (columns = images of basis elements) of a linear map ``f``."""
        cols = [self.coords(f(b)) for b in self.basis_elements()]
        return Matrix.from_columns(self.field, cols, len(cols))

    def left_mult_matrix(self, a: Element) -> Matrix:
        return self.linear_map_matrix(lambda b: a * b)

    def right_mult_matrix(self, a: Element) -> Matrix:
        return self.linear_map_matrix(lambda b: b * a)

    def subspace(self, elements: Iterable[Element]) -> Subspace:
        """Span of the given elements, in coordinates."""
        return Subspace.span(self.field, self.dim, [self.coords(e) for e in elements])

    def elements_of(self, space: Subspace) -> list[Element]:
        return [self.from_coords(b) for b in space.basis]

    def random_element(self, rng, coeffs=range(-2, 3), max_degree: int = 3, terms: int = 4) -> Element:
        """Random element; finite algebras sample every basis coordinate."""
        if self.is_finite:
            return self.from_coords([self.field(rng.choice(coeffs)) for _ in self.basis()])
        monos = self.standard_monomials(max_degree)
        picks = [rng.choice(monos) for _ in range(terms)]
        return self.element([(k, rng.choice(coeffs)) for k in picks])

    def format(self, e: Element) -> str:
        if not e.terms:
            return "0"
        parts = []
        for k in sorted(e.terms, key=self.sort_key):
            c = e.terms[k]
            cs = self.field.format(c)
            if k == self.unit_key:
                parts.append(cs)
                continue
            mono = self.format_monomial(k)
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def parse(self, text: str) -> Element:
        from .parse import parse_element

        return parse_element(self, text)

    def __call__(self, x) -> Element:
        """Coerce a string, scalar or element of this algebra."""
        if isinstance(x, Element):
            if x.algebra != self:
                raise AlgebraMismatch(f"{x.algebra} vs {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return self.scalar(x)
