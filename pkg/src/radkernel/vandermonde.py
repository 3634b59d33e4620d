"""Differential Vandermonde determinants and their consequences for radicals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

from .algebra import Element, is_nilpotent
from .derivation import Derivation
from .errors import HypothesisFails, NonSquare, Noncommutative
from .exactmath import QQ, Matrix, det_bareiss
from .kerrad import ann
from .report import HYPOTHESIS_NOT_MET, NOT_APPLICABLE, Report
from .weylop import OperatorPolynomial, op_from_polynomial


def alpha_n(n: int) -> int:
    """``prod_{k=1}^{n-1} k!``."""
    return prod(factorial(k) for k in range(1, n))


@dataclass
class DiffVandermondeMatrix:
    f: Element
    D: Derivation
    n: int
    entries: list  # entries[i][j] = D^i(f^(j+1)), zero-based

    @property
    def algebra(self):
        return self.f.algebra

    @property
    def alpha(self) -> int:
        return alpha_n(self.n)

    def recompute_ok(self) -> bool:
        return self.entries == build_matrix(self.f, self.D, self.n).entries


def _require_commutative(A):
    if not A.commutative:
        raise Noncommutative(f"{A} is noncommutative")


def build_matrix(f: Element, D: Derivation, n: int) -> DiffVandermondeMatrix:
    _require_commutative(f.algebra)
    if n < 1:
        raise ValueError("n must be positive")
    rows = [[None] * n for _ in range(n)]
    for j in range(n):
        e = f ** (j + 1)
        for i in range(n):
            rows[i][j] = e
            e = D(e)
    return DiffVandermondeMatrix(f, D, n, rows)


def _square(m) -> list:
    rows = [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquare(f"{n} rows of lengths {[len(r) for r in rows]}")
    return rows


def element_det(m) -> Element:
    """Division-free determinant via Laplace expansion over column subsets.

    Row ``i`` is expanded against every ``i``-subset of columns already used;
    this is ``O(n 2^n)`` ring operations instead of ``n!``.
    """
    rows = _square(m)
    n = len(rows)
    if n == 0:
        raise NonSquare("empty matrix")
    A = rows[0][0].algebra
    _require_commutative(A)
    # dp[mask] = determinant of the minor on rows 0..k-1, columns in mask
    dp = {0: A.one()}
    for i in range(n):
        nxt = {}
        for mask, val in dp.items():
            if not val:
                continue
            # sign: number of used columns to the right of j
            for j in range(n):
                if mask >> j & 1 or not rows[i][j]:
                    continue
                right = bin(mask >> (j + 1)).count("1")
                term = val * rows[i][j]
                if right % 2:
                    term = -term
                key = mask | 1 << j
                nxt[key] = nxt[key] + term if key in nxt else term
        dp = nxt
    return dp.get((1 << n) - 1, A.zero())


def element_det_cofactor(m) -> Element:
    """Reference: first-row cofactor expansion."""
    rows = _square(m)
    A = rows[0][0].algebra
    _require_commutative(A)
    if len(rows) == 1:
        return rows[0][0]
    total = A.zero()
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        t = a * element_det_cofactor(minor)
        total = total - t if j % 2 else total + t
    return total


def vandermonde_det_check(f: Element, D: Derivation, n: int) -> Report:
    """``det = alpha_n (Df)^(n(n-1)/2) f^n``."""
    M = build_matrix(f, D, n)
    lhs = element_det(M.entries)
    rhs = (D(f) ** (n * (n - 1) // 2) * f ** n).scale(M.alpha)
    rep = Report()
    rep.expect(f"differential Vandermonde n={n}", lhs == rhs, f"f = {f}",
               None if lhs == rhs else {"det": str(lhs), "expected": str(rhs)})
    return rep


@dataclass
class AlphaTable:
    k: int
    coeffs: dict  # j -> int, 1 <= j <= k-1


def alpha_recursion(k_max: int) -> list[AlphaTable]:
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    tables = [AlphaTable(2, {1: 1})]
    for k in range(2, k_max):
        a = tables[-1].coeffs
        new = {1: -a[1]}
        for j in range(2, k):
            new[j] = a[j - 1] - a[j]
        new[k] = 1 + a[k - 1]
        tables.append(AlphaTable(k + 1, new))
    return tables


@lru_cache(maxsize=None)
def _alpha_coeffs(k: int) -> dict:
    return alpha_recursion(k)[-1].coeffs


def column_reduction_check(f: Element, D: Derivation, k: int) -> Report:
    """Column reduction: ``D^i(f^k) - sum_j a_kj f^(k-j) D^i(f^j) = [i = k-1] (k-1)! (Df)^(k-1) f``."""
    A = f.algebra
    _require_commutative(A)
    if k < 2:
        raise ValueError("k must be at least 2")
    a = _alpha_coeffs(k)
    powers = [A.one()] + [f ** j for j in range(1, k + 1)]
    cols = {j: powers[j] for j in range(1, k + 1)}
    rep = Report()
    bad = None
    Df = D(f)
    for i in range(k):
        lhs = cols[k]
        for j in range(1, k):
            lhs = lhs - (powers[k - j] * cols[j]).scale(a[j])
        rhs = (Df ** (k - 1) * f).scale(factorial(k - 1)) if i == k - 1 else A.zero()
        if lhs != rhs and bad is None:
            bad = {"i": i, "lhs": str(lhs), "rhs": str(rhs)}
        cols = {j: D(c) for j, c in cols.items()}
    rep.expect(f"column reduction k={k}", bad is None, f"f = {f}", bad)
    return rep


def factorial_det_check(n_max: int) -> Report:
    rep = Report()
    for n in range(1, n_max + 1):
        m = Matrix(QQ, [[factorial(i + j) for j in range(n)] for i in range(n)])
        d = det_bareiss(m)
        want = alpha_n(n) ** 2
        rep.expect(f"factorial Hankel determinant n={n}", d == want, f"det = {d}",
                   None if d == want else {"expected": want})
    return rep


def _coefficients(P: OperatorPolynomial) -> list:
    if P.arity != 1:
        raise ValueError("univariate polynomial expected")
    A = P.algebra
    return [A(P.coeffs.get((i,), A.zero())) for i in range(P.degree + 1)]


def _hypothesis(P: OperatorPolynomial, D: Derivation, f: Element) -> int | None:
    """First ``m <= d+1`` with ``P(D) f^m != 0``."""
    phi = op_from_polynomial(P, [D])
    e = f.algebra.one()
    for m in range(1, P.degree + 2):
        e = e * f
        if phi.apply(e):
            return m
    return None


def vandermonde_kill_check(P: OperatorPolynomial, D: Derivation, f: Element, strict: bool = False) -> Report:
    """``alpha_(d+1) c_i (Df)^(d(d+1)/2) f^(d+1) = 0`` once ``f, ..., f^(d+1)`` lie in ``Ker P(D)``.

    A failed hypothesis is reported as a status; ``strict`` raises
    :class:`HypothesisFails` instead.
    """
    A = f.algebra
    _require_commutative(A)
    rep = Report()
    d = P.degree
    m = _hypothesis(P, D, f)
    if m is not None:
        if strict:
            raise HypothesisFails(m)
        rep.add("powers of f in the kernel", HYPOTHESIS_NOT_MET, f"P(D) f^{m} != 0", {"m": m})
        return rep
    core = (D(f) ** (d * (d + 1) // 2) * f ** (d + 1)).scale(alpha_n(d + 1))
    bad = next((i for i, c in enumerate(_coefficients(P)) if c * core), None)
    rep.expect(f"c_i (Df)^{d * (d + 1) // 2} f^{d + 1} = 0 for i <= {d}", bad is None,
               f"f = {f}", None if bad is None else {"i": bad})
    return rep


def _non_zero_divisor(c: Element) -> bool:
    A = c.algebra
    if not c:
        return False
    if not A.is_finite:
        # only exponential polynomials are infinite and commutative here; they form a domain
        return A.kind == "exp_poly" or c.is_scalar()
    return ann(c).dim == 0


def vandermonde_nilpotency_check(P: OperatorPolynomial, D: Derivation, f: Element, strict: bool = False) -> Report:
    """With some coefficient a non-zero-divisor, ``f Df`` is nilpotent of bounded index."""
    rep = vandermonde_kill_check(P, D, f, strict)
    if not rep.ok or any(c.status == HYPOTHESIS_NOT_MET for c in rep):
        return rep
    d = P.degree
    if not any(_non_zero_divisor(c) for c in _coefficients(P)):
        rep.add("f Df nilpotent", NOT_APPLICABLE, "every coefficient is a zero divisor")
        return rep
    bound = max(d + 1, d * (d + 1) // 2)
    g = f * D(f)
    ok = not g ** bound
    nil = is_nilpotent(g) if g.algebra.is_finite else None
    rep.expect(f"(f Df)^{bound} = 0", ok and (nil is None or bool(nil)),
               f"nilpotency index {nil.index if nil else 'n/a'}", None if ok else {"f": str(f)})
    return rep
