"""Derivations of algebras: construction, validation, application, classification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Algebra, Element
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    IdealNotPreserved,
    InfiniteDimensional,
    LeibnizViolation,
    UnitNotKilled,
    UnknownVariable,
)
from .exactmath import Matrix, Poly, Subspace, kernel_basis, solve
from .exactmath import minimal_polynomial as _matrix_minpoly


class Derivation:
    """A derivation given by generator images or by a matrix on a finite basis.

    ``images`` maps each algebra variable to its image; for exponential
    polynomials the single image ``g = D(x)`` means ``D = g * d/dx``.
    """

    def __init__(self, algebra: Algebra, *, images=None, matrix: Matrix | None = None,
                 name: str = "D", validate: bool = True):
        self.algebra = algebra
        self.name = name
        self.images = None
        self.matrix = None
        self._memo: dict = {}
        if (images is None) == (matrix is None):
            raise ValueError("give exactly one of images or matrix")
        if matrix is not None:
            n = algebra.dim
            if n is None:
                raise InfiniteDimensional("matrix form needs a finite-dimensional algebra")
            if matrix.shape != (n, n):
                raise DimensionMismatch(f"expected a {n}x{n} matrix, got {matrix.shape}")
            self.matrix = matrix
        elif algebra.kind == "structure_constants":
            # images of basis labels; anything unspecified goes to zero
            cols = []
            for label in algebra.names:
                img = images.get(label, algebra.zero())
                cols.append(algebra.coords(algebra(img)))
            unknown = set(images) - set(algebra.names)
            if unknown:
                raise UnknownVariable(", ".join(sorted(unknown)))
            self.matrix = Matrix.from_columns(algebra.field, cols, len(cols))
        else:
            unknown = set(images) - set(algebra.names)
            if unknown:
                raise UnknownVariable(", ".join(sorted(unknown)))
            self.images = tuple(algebra(images.get(v, algebra.zero())) for v in algebra.names)
        if validate:
            self.validate()

    # ---- constructors ---------------------------------------------------------------
    @classmethod
    def from_images(cls, algebra, images: dict, name="D"):
        return cls(algebra, images=images, name=name)

    @classmethod
    def from_matrix(cls, algebra, matrix, name="D"):
        return cls(algebra, matrix=matrix, name=name)

    @classmethod
    def zero(cls, algebra, name="0"):
        if algebra.kind == "structure_constants":
            n = algebra.dim
            return cls(algebra, matrix=Matrix.zeros(algebra.field, n, n), name=name)
        return cls(algebra, images={}, name=name)

    @classmethod
    def partial(cls, algebra, var: str, name=None):
        """``d/d var``: the variable goes to 1, every other variable to 0."""
        return cls(algebra, images={var: algebra.one()}, name=name or f"d/d{var}")

    @classmethod
    def d_dx(cls, algebra, coeff=1, name="d/dx"):
        """``g * d/dx`` on exponential polynomials (or on a one-variable quotient)."""
        return cls(algebra, images={algebra.names[0]: algebra(coeff)}, name=name)

    @classmethod
    def euler(cls, algebra, weights=None, name="E"):
        """``sum w_i x_i d/dx_i`` (all weights 1 by default)."""
        weights = weights or [1] * len(algebra.names)
        imgs = {v: algebra.gen(v).scale(w) for v, w in zip(algebra.names, weights)}
        return cls(algebra, images=imgs, name=name)

    @classmethod
    def inner(cls, algebra, x: Element, name=None):
        """``ad_x : a -> xa - ax`` on a finite-dimensional algebra."""
        m = algebra.left_mult_matrix(x) - algebra.right_mult_matrix(x)
        return cls(algebra, matrix=m, name=name or f"ad({x})")

    # ---- validation -----------------------------------------------------------------
    def validate(self) -> None:
        A = self.algebra
        if self.matrix is not None:
            basis = A.basis_elements()
            if not self.apply(A.one()).is_zero():
                raise UnitNotKilled(f"{self.name}(1) = {self.apply(A.one())}")
            for i, j in itertools.product(range(len(basis)), repeat=2):
                a, b = basis[i], basis[j]
                if self.apply(a * b) != self.apply(a) * b + a * self.apply(b):
                    raise LeibnizViolation(i, j)
            return
        if A.kind == "commutative":
            for g in A.ideal:
                img = A.zero()
                for i, e in enumerate(g):
                    if e:
                        rest = tuple(x - (k == i) for k, x in enumerate(g))
                        img = img + A.monomial(rest, e) * self.images[i]
                if img:
                    raise IdealNotPreserved(A.format_monomial(g), str(img))
        elif A.kind == "noncommutative":
            for g in A.ideal:
                img = A.zero()
                for i, letter in enumerate(g):
                    img = img + A.monomial(g[:i]) * self.images[letter] * A.monomial(g[i + 1:])
                if img:
                    raise IdealNotPreserved(A.format_monomial(g), str(img))

    # ---- application ----------------------------------------------------------------
    def _apply_key(self, key) -> Element:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        A = self.algebra
        out = A.zero()
        if A.kind == "commutative":
            for i, e in enumerate(key):
                if e:
                    rest = tuple(x - (k == i) for k, x in enumerate(key))
                    out = out + A.monomial(rest, e) * self.images[i]
        elif A.kind == "noncommutative":
            for i, letter in enumerate(key):
                out = out + A.monomial(key[:i]) * self.images[letter] * A.monomial(key[i + 1:])
        elif A.kind == "exp_poly":
            lam, j = key
            deriv = A.element({(lam, j): lam, (lam, j - 1): j}) if j else A.monomial(key, lam)
            out = self.images[0] * deriv
        self._memo[key] = out
        return out

    def apply(self, a: Element) -> Element:
        if a.algebra is not self.algebra and a.algebra != self.algebra:
            raise AlgebraMismatch(f"{a.algebra} vs {self.algebra}")
        if self.matrix is not None:
            return self.algebra.from_coords(self.matrix.apply(self.algebra.coords(a)))
        out = self.algebra.zero()
        for k, c in a.terms.items():
            out = out + self._apply_key(k).scale(c)
        return out

    __call__ = apply

    def apply_power(self, a: Element, k: int) -> Element:
        for _ in range(k):
            if a.is_zero():
                break
            a = self.apply(a)
        return a

    def matrix_of(self) -> Matrix:
        if self.matrix is not None:
            return self.matrix
        if not self.algebra.is_finite:
            raise InfiniteDimensional(f"{self.algebra} is infinite-dimensional")
        self.matrix = self.algebra.linear_map_matrix(self.apply)
        return self.matrix

    def minimal_polynomial(self) -> Poly:
        return _matrix_minpoly(self.matrix_of())

    def generators(self) -> list[Element]:
        """Elements on which two derivations must agree to be equal."""
        A = self.algebra
        if A.kind == "structure_constants":
            return A.basis_elements()
        return [A.gen(v) for v in A.names]

    # ---- algebra of derivations -------------------------------------------------------
    def _same(self, other: "Derivation"):
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other: "Derivation") -> "Derivation":
        self._same(other)
        if self.images is not None and other.images is not None:
            imgs = {v: a + b for v, a, b in zip(self.algebra.names, self.images, other.images)}
            return Derivation(self.algebra, images=imgs, name=f"{self.name}+{other.name}", validate=False)
        return Derivation(self.algebra, matrix=self.matrix_of() + other.matrix_of(),
                          name=f"{self.name}+{other.name}", validate=False)

    def scale(self, c) -> "Derivation":
        if self.images is not None:
            imgs = {v: a.scale(c) for v, a in zip(self.algebra.names, self.images)}
            return Derivation(self.algebra, images=imgs, name=f"{c}*{self.name}", validate=False)
        return Derivation(self.algebra, matrix=self.matrix.scale(self.algebra.field(c)),
                          name=f"{c}*{self.name}", validate=False)

    def __eq__(self, other):
        if not isinstance(other, Derivation) or other.algebra != self.algebra:
            return NotImplemented
        return all(self.apply(g) == other.apply(g) for g in self.generators())

    def __hash__(self):
        return hash((self.algebra, tuple(self.apply(g) for g in self.generators())))

    def __repr__(self):
        if self.images is not None:
            body = ", ".join(f"{v} -> {img}" for v, img in zip(self.algebra.names, self.images))
            return f"Derivation({self.name}: {body})"
        return f"Derivation({self.name}: matrix {self.matrix.shape})"


def commute_check(d1: Derivation, d2: Derivation) -> bool:
    """Whether ``d1 d2 = d2 d1``."""
    d1._same(d2)
    A = d1.algebra
    if A.is_finite:
        m1, m2 = d1.matrix_of(), d2.matrix_of()
        return m1 @ m2 == m2 @ m1
    # the commutator is again a derivation, so agreement on generators suffices
    return all(d1(d2(g)) == d2(d1(g)) for g in d1.generators())


def orbit_minimal_polynomial(D: Derivation, a: Element, budget: int = 64) -> Poly | None:
    """Monic generator of ``{q : q(D) a = 0}``, or ``None`` when the orbit of ``a``
    under ``D`` spans more than ``budget`` dimensions."""
    A = D.algebra
    field = A.field
    orbit = [a]
    keys: dict = {}

    def vec(e):
        for k in e.terms:
            keys.setdefault(k, len(keys))
        return e

    vec(a)
    for _ in range(budget + 1):
        nxt = vec(D(orbit[-1]))
        n = len(keys)
        cols = [tuple(e.terms.get(k, field.zero) for k in keys) for e in orbit]
        target = tuple(nxt.terms.get(k, field.zero) for k in keys)
        x = solve(Matrix.from_columns(field, cols, n), target)
        if x is not None:
            return Poly(field, [-c for c in x] + [field.one])
        orbit.append(nxt)
        if len(orbit) > budget:
            return None
    return None


@dataclass(frozen=True)
class Classification:
    """Tri-state flags: ``True``/``False`` when decided, ``None`` when the budget ran out."""

    nilpotent: bool | None
    nilpotency_index: int | None
    locally_nilpotent: bool | None
    locally_finite: bool | None
    algebraic: bool | None
    minimal_polynomial: Poly | None


def classify(D: Derivation, budget: int = 64) -> Classification:
    A = D.algebra
    if A.is_finite:
        mp = D.minimal_polynomial()
        nil = mp.coeffs[:-1] == (A.field.zero,) * mp.degree
        idx = mp.degree if nil else None
        return Classification(nil, idx, nil, True, True, mp)
    if A.kind == "exp_poly":
        g = D.images[0]
        if g.is_zero():
            return Classification(True, 1, True, True, True, Poly(A.field, (0, 1)))
        if g.is_scalar():
            # c*d/dx has eigenvalue c*lam on e^(lam x) for every rational lam
            return Classification(False, None, False, True, False, None)
    gens = D.generators()
    orbits = [orbit_minimal_polynomial(D, g, budget) for g in gens]
    if A.kind == "exp_poly":
        # x alone does not generate; the exponentials e^(+-x) are tested as well
        orbits += [orbit_minimal_polynomial(D, A.exp(s), budget) for s in (1, -1)]
    if any(p is None for p in orbits):
        return Classification(None, None, None, None, None, None)
    ln = all(p.coeffs[:-1] == (A.field.zero,) * p.degree for p in orbits)
    if A.kind == "exp_poly" and not ln:
        return Classification(False, None, False, None, None, None)
    # local finiteness on generators propagates to the generated algebra
    return Classification(None if ln else False, None, ln, True, None, None)


def derivation_space(A: Algebra) -> list[Derivation]:
    """Basis of all derivations of a finite-dimensional algebra (as matrices)."""
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    basis = A.basis_elements()
    n = len(basis)
    F = A.field
    prods = [[A.coords(a * b) for b in basis] for a in basis]
    # unknown D[k][i] = k-th coordinate of D(e_i), flattened at k * n + i
    rows = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                row = [F.zero] * (n * n)
                for k in range(n):
                    t = prods[i][j][k]
                    if t:
                        row[l * n + k] += t
                    t = prods[k][j][l]
                    if t:
                        row[k * n + i] -= t
                    t = prods[i][k][l]
                    if t:
                        row[k * n + j] -= t
                if any(row):
                    rows.append(row)
    if not rows:
        rows = [[F.zero] * (n * n)]
    space: Subspace = kernel_basis(Matrix(F, rows, n * n))
    out = []
    for v in space.basis:
        m = Matrix(F, [[v[k * n + i] for i in range(n)] for k in range(n)])
        out.append(Derivation(A, matrix=m, name=f"D{len(out)}", validate=False))
    return out
