"""Nilpotency tests and the nilradical of a finite-dimensional commutative algebra."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CharPUnsupported, InfiniteDimensional, Noncommutative
from ..exactmath import Matrix, Subspace, kernel_basis
from .core import Element


@dataclass(frozen=True)
class Nilpotency:
    status: str  # "yes" | "no" | "unknown"
    index: int | None = None

    def __bool__(self):
        return self.status == "yes"


def nilpotency_index(a: Element, limit: int) -> int | None:
    """Least ``m <= limit`` with ``a^m = 0``, else ``None``."""
    if a.is_zero():
        return 1
    p = a
    for m in range(2, limit + 1):
        p = p * a
        if p.is_zero():
            return m
    return None


def _word_power_persists(a: Element) -> bool:
    # for a single-term word w, w^m is standard for all m iff w^(k) avoids every
    # ideal word, which is decided once w^L is standard for L past the longest generator
    if len(a.terms) != 1:
        return False
    (w,) = a.terms
    if not w:
        return True
    A = a.algebra
    reps = A._maxlen // len(w) + 2
    return A.is_standard(w * reps)


def is_nilpotent(a: Element, budget: int = 64) -> Nilpotency:
    A = a.algebra
    if A.is_finite:
        idx = nilpotency_index(a, A.dim + 1)
        return Nilpotency("yes", idx) if idx is not None else Nilpotency("no")
    idx = nilpotency_index(a, budget)
    if idx is not None:
        return Nilpotency("yes", idx)
    if A.kind == "exp_poly":
        # an integral domain: nonzero elements are never nilpotent
        return Nilpotency("no")
    if A.kind == "noncommutative" and _word_power_persists(a):
        return Nilpotency("no")
    if A.kind == "commutative":
        # a nonzero term with exponents on unbounded variables only survives every power
        if _leading_term_persists(a):
            return Nilpotency("no")
    return Nilpotency("unknown")


def _leading_term_persists(a: Element) -> bool:
    # under a monomial order the leading monomial L of a^m is L(a)^m, and L^m is
    # standard for every m iff no generator is supported inside supp(L)
    A = a.algebra
    lead = max(a.terms, key=A.sort_key)
    supp = {i for i, e in enumerate(lead) if e}
    return not any({i for i, e in enumerate(g) if e} <= supp for g in A.ideal)


def trace_form(A) -> Matrix:
    """Gram matrix ``(i, j) -> trace(L_{b_i b_j})`` on the monomial basis.

    The trace is linear, so only ``t_k = trace(L_{b_k})`` is computed from
    products of basis elements; ``trace(L_c) = sum_k c_k t_k``.
    """
    keys = A.basis()
    basis = A.basis_elements()
    n = len(basis)
    t = []
    for k in range(n):
        tk = A.field.zero
        for l in range(n):
            c = (basis[k] * basis[l]).terms.get(keys[l])
            if c:
                tk = tk + c
        t.append(tk)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            prod = basis[i] * basis[j]
            v = A.field.zero
            for key, c in prod.terms.items():
                v = v + c * t[A.index_of(key)]
            rows[i][j] = rows[j][i] = v
    return Matrix(A.field, rows)


def nilradical(A) -> Subspace:
    """The nilpotent elements of a finite-dimensional commutative algebra over the rationals."""
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    if not A.commutative:
        raise Noncommutative(f"{A} is not commutative")
    if A.field.characteristic != 0:
        raise CharPUnsupported("the trace form needs characteristic zero")
    nil = kernel_basis(trace_form(A))
    for v in nil.basis:
        if not is_nilpotent(A.from_coords(v)):
            raise AssertionError(f"trace-form kernel vector {v} is not nilpotent")
    return nil
