"""Kernels of operators, exact radical membership, annihilators and Mathieu-subspace witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, Element, ExpPolyAlgebra, is_nilpotent, make_algebra, matrix_algebra, nilradical
from .derivation import Derivation
from .errors import (
    CharPUnsupported,
    InfiniteDimensional,
    NoncommutativeAlgebra,
    NotReduced,
    RootFactorizationMismatch,
)
from .exactmath import QQ, Matrix, Poly, Subspace, kernel_basis
from .report import FAIL, HYPOTHESIS_NOT_MET, NOT_APPLICABLE, PASS, Report
from .weylop import DiffOperator, OperatorPolynomial, gradient, op_from_polynomial


# ---- kernels ---------------------------------------------------------------------------

def ker_op(phi: DiffOperator, algebra: Algebra | None = None) -> Subspace:
    """Kernel of ``phi`` on a finite-dimensional algebra.

    Passing a length truncation of ``phi.algebra`` computes the kernel of the
    induced map there; ``phi`` must then preserve word length.
    """
    A = phi.algebra
    if algebra is None or algebra == A:
        if not A.is_finite:
            raise InfiniteDimensional(f"{A} is infinite-dimensional")
        return kernel_basis(phi.matrix())
    return kernel_basis(descended_matrix(phi, algebra))


def descended_matrix(phi: DiffOperator, target: Algebra) -> Matrix:
    """Matrix of ``phi`` on a quotient ``target`` of ``phi.algebra`` by words of large length."""
    A = phi.algebra
    if target.names != A.names or not target.is_finite:
        raise ValueError("target must be a finite truncation of the operator's algebra")
    if not all(not A.is_standard(g) or A.mono_degree(g) >= _cutoff(target) for g in target.ideal):
        raise ValueError("target is not a length truncation")
    cut = _cutoff(target)
    # degree preservation on every word up to the cutoff makes the induced map well defined
    images = {}
    for w in A.standard_monomials(cut):
        img = phi(A.monomial(w))
        if any(A.mono_degree(k) != len(w) for k in img.terms):
            raise ValueError(f"operator does not preserve length on {A.format_monomial(w)}")
        images[w] = img
    cols = [target.coords(target.element(images[w].terms)) for w in target.basis()]
    return Matrix.from_columns(target.field, cols, len(cols))


def _cutoff(target) -> int:
    return max(len(g) for g in target.ideal)


def ker_op_exppoly(P, roots=None) -> list[Element]:
    """Basis ``x^j e^(lam x)``, ``0 <= j < m``, of ``Ker P(d/dx)`` on exponential polynomials.

    ``P`` is a univariate scalar polynomial (a :class:`Poly` or an
    :class:`OperatorPolynomial` with scalar coefficients); ``roots`` lists
    ``(lam, m)`` and must reproduce ``P`` up to its leading coefficient.
    """
    E = ExpPolyAlgebra()
    poly = _scalar_poly(P)
    if roots is None:
        roots = poly.roots()
        if sum(m for _, m in roots) != poly.degree:
            raise RootFactorizationMismatch(f"{poly} does not split over the rationals")
    roots = [(Fraction(r), int(m)) for r, m in roots]
    if Poly.from_roots(QQ, roots) != poly.monic():
        raise RootFactorizationMismatch(f"roots {roots} do not factor {poly}")
    basis = [E.exp(lam, j) for lam, m in roots for j in range(m)]
    op = exppoly_operator(poly)
    for b in basis:
        if op(b):
            raise AssertionError(f"P(D) does not kill {b}")
    return basis


def _scalar_poly(P) -> Poly:
    if isinstance(P, Poly):
        return P
    sc = P.scalar_coefficients()
    if sc is None or P.arity != 1:
        raise ValueError("need a univariate polynomial with scalar coefficients")
    deg = P.degree
    return Poly(QQ, [sc.get((k,), 0) for k in range(deg + 1)])


def exppoly_operator(poly: Poly) -> DiffOperator:
    E = ExpPolyAlgebra()
    P = OperatorPolynomial.univariate(E, list(poly.coeffs))
    return op_from_polynomial(P, [Derivation.d_dx(E)])


# ---- radical membership -----------------------------------------------------------------

@dataclass
class RadicalDecision:
    element: Element
    subspace: Subspace
    s_inf: Subspace
    n_star: int
    verdict: str  # "InRadical" | "NotInRadical"

    @property
    def in_radical(self) -> bool:
        return self.verdict == "InRadical"

    def __bool__(self):
        return self.in_radical


def power_span_chain(a: Element) -> tuple[Subspace, int, list[Subspace]]:
    """``S_N = span{a^m : m >= N}`` iterated until it stabilizes.

    Returns ``(S_inf, N*, [S_1, ..., S_N*])``.
    """
    A = a.algebra
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    d = A.dim
    powers = []
    p = a
    for _ in range(d + 1):
        powers.append(A.coords(p))
        p = p * a
    S = Subspace.span(A.field, d, powers)
    chain = [S]
    while True:
        nxt = Subspace.span(A.field, d, [A.coords(a * A.from_coords(v)) for v in S.basis])
        if nxt == S:
            return S, len(chain), chain
        S = nxt
        chain.append(S)


def radical_member(a: Element, V: Subspace) -> RadicalDecision:
    """Exact decision of ``a^m in V for all large m``."""
    s_inf, n_star, _ = power_span_chain(a)
    verdict = "InRadical" if s_inf <= V else "NotInRadical"
    return RadicalDecision(a, V, s_inf, n_star, verdict)


def radical_bruteforce(a: Element, V: Subspace) -> bool:
    """Oracle: some ``N <= d + 1`` has ``a^m in V`` for every ``N <= m <= N + d``."""
    A = a.algebra
    d = A.dim
    inside = []
    p = a
    for _ in range(2 * d + 2):
        inside.append(A.coords(p) in V)
        p = p * a
    return any(all(inside[N - 1:N + d]) for N in range(1, d + 2))


def ann(a: Element) -> Subspace:
    """``{b : ab = 0 = ba}``."""
    A = a.algebra
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    left = kernel_basis(A.left_mult_matrix(a))
    if A.commutative:
        return left
    return left & kernel_basis(A.right_mult_matrix(a))


def ann_left(a: Element) -> Subspace:
    """``{b : ab = 0}``."""
    A = a.algebra
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    return kernel_basis(A.left_mult_matrix(a))


def _sample_points(A, rng, samples, extra=()):
    pts = [A.zero()] + A.basis_elements() + list(extra)
    if rng is not None:
        pts += [A.random_element(rng) for _ in range(samples)]
    return pts


def radical_inclusions_check(P: OperatorPolynomial, derivs: Sequence[Derivation], A: Algebra,
                             rng=None, samples: int = 20) -> Report:
    """Consequences of the power-kernel identities for ``r(Ker P(D))``.

    1. every radical member ``u`` lies in ``r(Ann(a0))``;
    2. if ``a0`` is not a zero divisor, ``r(Ker P(D)) = nil(A)``;
    3. for ``v = u^(2N*)``, ``P_d(grad v) = 0``; with one derivation, ``Du`` is nilpotent.
    """
    if not A.commutative:
        raise NoncommutativeAlgebra("needs a commutative algebra")
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    rep = Report()
    phi = op_from_polynomial(P, derivs)
    V = ker_op(phi)
    nil = nilradical(A)
    a0 = P.a0
    ann_a0 = ann(a0)
    regular = ann_a0.dim == 0
    Pd = P.leading_form()
    points = _sample_points(A, rng, samples, A.elements_of(nil))
    bad1 = bad2 = bad3 = bad3n = None
    members = 0
    for u in points:
        dec = radical_member(u, V)
        if not dec.in_radical:
            continue
        members += 1
        if bad1 is None and not radical_member(u, ann_a0).in_radical:
            bad1 = u
        if regular and bad2 is None and A.coords(u) not in nil:
            bad2 = u
        v = u ** (2 * dec.n_star)
        if bad3 is None and Pd.degree >= 1 and Pd.evaluate(gradient(v, derivs)):
            bad3 = u
        if len(derivs) == 1 and bad3n is None and not is_nilpotent(derivs[0](u)):
            bad3n = u
    note = f"{len(points)} points, {members} radical members"
    rep.expect("radical lies in r(Ann(a0))", bad1 is None, note, _ce(bad1))
    if regular:
        rep.expect("a0 regular: radical members are nilpotent", bad2 is None, note, _ce(bad2))
        missing = next((n for n in A.elements_of(nil) if not radical_member(n, V).in_radical), None)
        rep.expect("a0 regular: nil(A) inside the radical", missing is None,
                   f"dim nil = {nil.dim}", _ce(missing))
    else:
        rep.add("a0 regular: radical equals nil(A)", NOT_APPLICABLE, f"dim Ann(a0) = {ann_a0.dim}")
    if Pd.degree >= 1:
        rep.expect("leading form vanishes on gradients of high powers", bad3 is None, note, _ce(bad3))
    if len(derivs) == 1:
        rep.expect("single derivation: Du is nilpotent", bad3n is None, note, _ce(bad3n))
    return rep


def _ce(u):
    return None if u is None else {"u": str(u)}


# ---- Mathieu-subspace witnesses ----------------------------------------------------------

@dataclass
class WitnessResult:
    verdict: str  # "ViolationConfirmed" | "NoViolation"
    premise: bool
    scope: str  # "exact" or "horizon <h>"
    detail: str = ""

    @property
    def violation(self) -> bool:
        return self.verdict == "ViolationConfirmed"


def ms_witness_verify(V: Subspace, a: Element, b: Element, c: Element,
                      horizon: int | None = None) -> WitnessResult:
    """Check whether ``(a, b, c)`` witnesses that ``V`` is not a Mathieu subspace.

    Exact mode compares ``b S_inf c`` with ``V``.  With ``horizon`` the premise is
    still exact, while the violation is confirmed when ``b a^m c`` leaves ``V``
    for every ``1 <= m <= horizon`` and ``a^horizon`` is nonzero.
    """
    A = a.algebra
    s_inf, n_star, chain = power_span_chain(a)
    premise = chain[0] <= V
    scope = "exact" if horizon is None else f"horizon {horizon}"
    if not premise:
        return WitnessResult("NoViolation", False, scope, "some power of a lies outside V")
    if horizon is None:
        imgs = [A.coords(b * A.from_coords(v) * c) for v in s_inf.basis]
        outside = next((w for w in imgs if w not in V), None)
        if outside is None:
            return WitnessResult("NoViolation", True, scope, f"b S_inf c inside V (N* = {n_star})")
        return WitnessResult("ViolationConfirmed", True, scope,
                             f"b S_inf c leaves V (dim S_inf = {s_inf.dim}, N* = {n_star})")
    p = a
    for m in range(1, horizon + 1):
        if p.is_zero():
            return WitnessResult("NoViolation", True, scope, f"a^{m} = 0 inside the horizon")
        if A.coords(b * p * c) in V:
            return WitnessResult("NoViolation", True, scope, f"b a^{m} c lies in V")
        p = p * a
    return WitnessResult("ViolationConfirmed", True, scope,
                         f"b a^m c outside V for 1 <= m <= {horizon}")


# ---- the word-algebra example ------------------------------------------------------------

def word_example():
    """``Q<X,Y>/(Y^2)``, ``D = d/dX`` and ``Phi = I - l_X D``."""
    B = make_algebra({"kind": "noncommutative", "variables": ["X", "Y"], "ideal": ["YY"]})
    D = Derivation.partial(B, "X", name="D")
    phi = op_from_polynomial(OperatorPolynomial.univariate(B, [1, "-X"]), [D])
    return B, D, phi


def word_algebra_check(m_max: int = 8, horizon: int | None = None) -> Report:
    """Symbolic identities in ``Q<X,Y>/(Y^2)``, then the witness in a length truncation
    and an exact finite-dimensional analogue inside ``M_2(Q)``."""
    rep = Report()
    B, D, phi = word_example()
    X, Y = B.gen("X"), B.gen("Y")
    f = X * Y
    bad = None
    prev, fm = B.one(), f
    for m in range(1, m_max + 1):
        ok = fm and not phi(fm) and phi(X * fm) == -(X * fm) and D(fm) == Y * prev
        if not ok:
            bad = m
            break
        prev, fm = fm, fm * f
    rep.expect("f^m in the kernel and X f^m outside it", bad is None, f"1 <= m <= {m_max}", {"m": bad})
    rep.expect("f = XY is not nilpotent", not any((f ** m).is_zero() for m in range(1, m_max + 1)),
               f"checked up to m = {m_max}")

    h = horizon if horizon is not None else min(m_max, 4)
    L = 2 * h + 3
    T = B.truncation(L)
    M = descended_matrix(phi, T)
    V = kernel_basis(M)
    # the induced map agrees with the untruncated computation on the test words
    proj = lambda e: T.coords(T.element(e.terms))
    agree = all(M.apply(proj(w)) == proj(phi(w)) for m in range(1, h + 1) for w in (f ** m, X * f ** m))
    rep.expect("truncated operator matches the symbolic one", agree, f"length cutoff {L}, dim {T.dim}")
    fT, XT = T.element(f.terms), T.element(X.terms)
    exact = ms_witness_verify(V, fT, XT, T.one())
    rep.add("truncated model, exact verdict", PASS if not exact.violation else FAIL,
            f"{exact.verdict}: XY is nilpotent in any finite truncation ({exact.detail})")
    bounded = ms_witness_verify(V, fT, XT, T.one(), horizon=h)
    rep.expect("truncated model, witness (XY, X, 1)", bounded.violation,
               f"{bounded.verdict} ({bounded.scope}; {bounded.detail})")

    M2 = matrix_algebra(QQ, 2)
    e12, e21, e22 = M2.gen("E12"), M2.gen("E21"), M2.gen("E22")
    delta = Derivation.inner(M2, e12, name="ad(E12)")
    psi = op_from_polynomial(OperatorPolynomial.univariate(M2, [1, -e21]), [delta])
    W = ker_op(psi)
    res = ms_witness_verify(W, e22, e12, M2.one())
    rep.expect("2x2 matrices: witness (E22, E12, 1) for I - l_E21 ad(E12)", res.violation,
               f"{res.verdict} ({res.scope}; dim Ker = {W.dim}; {res.detail})")
    return rep


# ---- exponential polynomials ---------------------------------------------------------------

def exppoly_radical_member(u: Element, poly: Poly) -> tuple[bool, str]:
    """Exact ``u in r(Ker P(d/dx))`` on exponential polynomials for a scalar ``P``.

    The extreme frequencies of ``u^m`` are ``m`` times those of ``u`` and never
    cancel, so membership forces ``u`` to be a polynomial, then a constant.
    """
    if not poly:
        return True, "P = 0: the kernel is everything"
    if u.is_zero():
        return True, "u = 0"
    freqs = sorted({k[0] for k in u.terms})
    if freqs[0] != 0 or freqs[-1] != 0:
        return False, f"extreme frequency {freqs[-1] if freqs[-1] else freqs[0]} scales with m"
    deg = max(k[1] for k in u.terms)
    if deg > 0:
        return False, f"u^m has x-degree {deg}m, unbounded"
    if poly(0):
        return False, "nonzero constant and P(0) != 0"
    return True, "constant and P(0) = 0"


def exppoly_window_oracle(u: Element, poly: Poly, start: int, width: int = 3) -> bool:
    """Direct test ``P(D) u^m = 0`` for ``start <= m < start + width``."""
    op = exppoly_operator(poly)
    return all(op(u ** m).is_zero() for m in range(start, start + width))


# ---- derivations on reduced algebras ----------------------------------------------------------

def _require_reduced(A: Algebra):
    if A.field.characteristic != 0:
        raise CharPUnsupported("needs characteristic zero")
    if A.kind == "exp_poly":
        return
    if not A.is_finite:
        raise InfiniteDimensional(f"cannot certify that {A} is reduced")
    if A.commutative and nilradical(A).dim:
        raise NotReduced(f"{A} has nonzero nilpotents")


def iterated_kernel_check(D: Derivation, a: Element, r: int) -> Report:
    """``D^r a^m = 0`` for ``1 <= m <= 2^(r-1)`` forces ``Da = 0`` on a reduced algebra."""
    _require_reduced(D.algebra)
    rep = Report()
    for m in range(1, 2 ** (r - 1) + 1):
        if D.apply_power(a ** m, r):
            rep.add("hypothesis", HYPOTHESIS_NOT_MET, f"D^{r} a^{m} != 0", {"m": m})
            return rep
    Da = D(a)
    rep.expect(f"Da = 0 (r = {r})", Da.is_zero(), f"a = {a}", {"Da": str(Da)})
    return rep


def iterated_kernel_radical_check(D: Derivation, r: int, rng=None, samples: int = 20) -> Report:
    """``r(Ker D^r) = r(Ker D)`` pointwise and ``Ker D`` inside ``r(Ker D^r)``."""
    A = D.algebra
    _require_reduced(A)
    rep = Report()
    if A.kind == "exp_poly":
        if not D.images[0].is_scalar() or D.images[0].is_zero():
            rep.add("radical equality", NOT_APPLICABLE, "only c*d/dx with c != 0 is decided")
            return rep
        c = D.images[0].scalar_value()
        # P(c d/dx) with P = t^r and t: scale roots by c
        pr = Poly(QQ, [0] * r + [c ** r])
        p1 = Poly(QQ, [0, c])
        pts = [A.one(), A.gen("x"), A.exp(1), A.exp(-1), A.zero()]
        if rng is not None:
            pts += [A.random_element(rng) for _ in range(samples)]
        bad = next((u for u in pts if exppoly_radical_member(u, pr)[0] != exppoly_radical_member(u, p1)[0]), None)
        rep.expect(f"r(Ker D^{r}) = r(Ker D) on samples", bad is None, f"{len(pts)} points", _ce(bad))
        rep.expect("constants lie in r(Ker D^r)", exppoly_radical_member(A.one(), pr)[0], "Ker D = constants")
        return rep
    Mr = D.matrix_of() ** r
    Vr = kernel_basis(Mr)
    V1 = kernel_basis(D.matrix_of())
    pts = _sample_points(A, rng, samples)
    bad = next((u for u in pts if radical_member(u, Vr).in_radical != radical_member(u, V1).in_radical), None)
    rep.expect(f"r(Ker D^{r}) = r(Ker D) on samples", bad is None, f"{len(pts)} points", _ce(bad))
    missing = next((k for k in A.elements_of(V1) if not radical_member(k, Vr).in_radical), None)
    rep.expect("Ker D inside r(Ker D^r)", missing is None, f"dim Ker D = {V1.dim}", _ce(missing))
    return rep

