"""Generalized-eigenspace gradings, extremal weights, and the checks built on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra import Algebra, Element, is_nilpotent, nilradical
from .derivation import Derivation, classify, commute_check, derivation_space
from .errors import (
    CharPolyDoesNotSplit,
    CharPUnsupported,
    InfiniteDimensional,
    NoExtremalFound,
    NonCommutingTuple,
    NotReduced,
    PointNotInSet,
)
from .exactmath import Matrix, Poly, Subspace, kernel_basis, lp_feasible_max, solve
from .kerrad import exppoly_radical_member, ker_op, radical_member
from .report import HYPOTHESIS_NOT_MET, NOT_APPLICABLE, Report
from .weylop import OperatorPolynomial, op_from_polynomial


# ---- eigenspaces and gradings ---------------------------------------------------------------

def generalized_eigenspaces(D: Derivation) -> dict:
    """``lam -> Ker (M - lam I)^dim`` for every eigenvalue of ``D``."""
    A = D.algebra
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    M = D.matrix_of()
    n = M.nrows
    mp = D.minimal_polynomial()
    rest = mp.split_remainder()
    if rest.degree > 0:
        raise CharPolyDoesNotSplit(rest)
    ident = Matrix.identity(A.field, n)
    out = {}
    for lam, _ in mp.roots():
        out[lam] = kernel_basis((M - ident.scale(lam)) ** n)
    total = sum(S.dim for S in out.values())
    if total != n:
        raise AssertionError(f"eigenspace dimensions sum to {total}, expected {n}")
    return out


@dataclass
class Grading:
    algebra: Algebra
    derivs: tuple
    pieces: dict  # weight tuple -> Subspace

    @property
    def weights(self) -> list:
        return list(self.pieces)

    def piece(self, lam) -> Subspace:
        lam = tuple(lam)
        return self.pieces.get(lam, Subspace.zero(self.algebra.field, self.algebra.dim))

    @property
    def A0(self) -> Subspace:
        return self.piece((self.algebra.field.zero,) * len(self.derivs))

    def _stacked(self):
        cols, owners = [], []
        for lam, S in self.pieces.items():
            for v in S.basis:
                cols.append(v)
                owners.append(lam)
        return Matrix.from_columns(self.algebra.field, cols, self.algebra.dim), owners

    def decompose(self, u: Element) -> dict:
        """Homogeneous components ``lam -> u_lam`` (zero components omitted)."""
        A = self.algebra
        M, owners = self._stacked()
        x = solve(M, A.coords(u))
        comps: dict = {}
        for coef, lam, v in zip(x, owners, M.columns()):
            if coef:
                w = tuple(coef * c for c in v)
                prev = comps.get(lam)
                comps[lam] = w if prev is None else tuple(p + q for p, q in zip(prev, w))
        out = {lam: A.from_coords(v) for lam, v in comps.items()}
        return {lam: e for lam, e in out.items() if e}

    def is_homogeneous_subspace(self, V: Subspace) -> bool:
        """Whether ``V`` is the sum of its intersections with the pieces."""
        inter = Subspace.zero(V.field, V.ambient_dim)
        for S in self.pieces.values():
            inter = inter + (S & V)
        return inter == V

    def check(self) -> Report:
        A = self.algebra
        rep = Report()
        M, owners = self._stacked()
        rep.expect("pieces form a direct sum", M.ncols == A.dim and M.rank == A.dim,
                   f"{len(self.pieces)} weights, dim A = {A.dim}")
        bad = None
        for lam, S in self.pieces.items():
            for D in self.derivs:
                for v in S.basis:
                    if A.coords(D(A.from_coords(v))) not in S:
                        bad = bad or (lam, D.name)
        rep.expect("pieces are invariant", bad is None, "", None if bad is None else {"weight": _wjson(bad[0]), "derivation": bad[1]})
        bad = None
        for (l1, S1), (l2, S2) in itertools.product(self.pieces.items(), repeat=2):
            target = self.piece(tuple(a + b for a, b in zip(l1, l2)))
            for v in S1.basis:
                for w in S2.basis:
                    if A.coords(A.from_coords(v) * A.from_coords(w)) not in target:
                        bad = bad or (l1, l2)
        rep.expect("A_lam A_mu inside A_(lam+mu)", bad is None, "",
                   None if bad is None else {"weights": [_wjson(bad[0]), _wjson(bad[1])]})
        return rep


def _wjson(lam):
    return [str(x) for x in lam]


def joint_grading(derivs: Sequence[Derivation]) -> Grading:
    derivs = tuple(derivs)
    A = derivs[0].algebra
    for a, b in itertools.combinations(derivs, 2):
        if not commute_check(a, b):
            raise NonCommutingTuple(f"{a.name} and {b.name} do not commute")
    per = [generalized_eigenspaces(D) for D in derivs]
    pieces = {}
    for combo in itertools.product(*(sorted(p.items(), key=lambda t: _sort_scalar(t[0])) for p in per)):
        S = combo[0][1]
        for _, T in combo[1:]:
            S = S & T
            if not S.dim:
                break
        if S.dim:
            pieces[tuple(lam for lam, _ in combo)] = S
    g = Grading(A, derivs, pieces)
    rep = g.check()
    if not rep.ok:
        raise AssertionError(f"grading invariants fail: {rep}")
    return g


def _sort_scalar(x):
    return x if isinstance(x, Fraction) else int(x)


# ---- identities --------------------------------------------------------------------------------

def shifted_power(D: Derivation, lam, k: int, a: Element) -> Element:
    """``(D - lam I)^k a``."""
    for _ in range(k):
        a = D(a) - a.scale(lam)
    return a


def shifted_leibniz_check(D: Derivation, lam, mu, m: int, rng, samples: int = 20) -> Report:
    """Binomial expansion of ``(D - (lam + mu) I)^m`` on products."""
    A = D.algebra
    rep = Report()
    F = A.field
    lam, mu = F(lam), F(mu)
    bad = None
    for _ in range(samples):
        a, b = A.random_element(rng), A.random_element(rng)
        lhs = shifted_power(D, lam + mu, m, a * b)
        rhs = A.zero()
        for i in range(m + 1):
            rhs = rhs + (shifted_power(D, lam, i, a) * shifted_power(D, mu, m - i, b)).scale(comb(m, i))
        if lhs != rhs:
            bad = {"a": str(a), "b": str(b)}
            break
    rep.expect(f"shifted Leibniz m={m} lam={lam} mu={mu}", bad is None,
               f"{samples} random pairs on {A!r}", bad)
    return rep


def eval_scalar(P: OperatorPolynomial, point) -> object:
    """``P(point)`` for scalar-coefficient ``P``."""
    sc = P.scalar_coefficients()
    if sc is None:
        raise ValueError("polynomial has non-scalar coefficients")
    F = P.algebra.field
    total = F.zero
    for alpha, c in sc.items():
        term = c
        for x, e in zip(point, alpha):
            term = term * F(x) ** e
        total = total + term
    return total


def kernel_grading_check(P: OperatorPolynomial, derivs: Sequence[Derivation], grading: Grading | None = None) -> Report:
    """``Ker P(D)`` is graded and lies in the sum of pieces whose weight is a zero of ``P``."""
    rep = Report()
    g = grading or joint_grading(derivs)
    K = ker_op(op_from_polynomial(P, derivs))
    rep.expect("kernel is homogeneous", g.is_homogeneous_subspace(K), f"dim Ker = {K.dim}")
    zeros = [lam for lam in g.weights if not eval_scalar(P, lam)]
    Z = Subspace.zero(K.field, K.ambient_dim)
    for lam in zeros:
        Z = Z + g.piece(lam)
    rep.expect("kernel inside the zero-weight pieces", K <= Z,
               f"zeros {[_wjson(z) for z in zeros]}")
    return rep


# ---- extremal points -------------------------------------------------------------------------

def _as_points(S) -> list[tuple]:
    return [tuple(Fraction(x) for x in p) for p in S]


def is_extremal(lam, S) -> bool:
    """No ``m lam`` is a nonnegative integer combination of the other points with
    coefficient sum in ``[1, m]``.

    Equivalent to: no rational ``t >= 0`` with ``sum t_i mu_i = lam`` and
    ``0 < sum t <= 1`` (divide an integer witness by ``m``; clear denominators
    of a rational one), decided by an exact LP.
    """
    pts = _as_points(S)
    lam = tuple(Fraction(x) for x in lam)
    if lam not in pts:
        raise PointNotInSet(str(lam))
    others = [p for p in pts if p != lam]
    if not others:
        return True
    res = lp_feasible_max(others, lam)
    return res is None or res[0] == 0


def extremal_witness(lam, S):
    """Integer witness ``(m, c)`` with ``m lam = sum c_i mu_i``, or ``None``."""
    pts = _as_points(S)
    lam = tuple(Fraction(x) for x in lam)
    others = [p for p in pts if p != lam]
    if not others:
        return None
    res = lp_feasible_max(others, lam)
    if res is None or res[0] == 0:
        return None
    _, t = res
    m = 1
    for x in t:
        m = m * x.denominator // _gcd(m, x.denominator)
    return m, [int(x * m) for x in t]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def find_extremal(S):
    for p in _as_points(S):
        if is_extremal(p, S):
            return p
    raise NoExtremalFound(f"no extremal point in {S}")


def extremal_bruteforce_oracle(lam, S, m_max: int = 12) -> bool:
    """``True`` when no witness with ``m <= m_max`` exists."""
    pts = _as_points(S)
    lam = tuple(Fraction(x) for x in lam)
    others = [p for p in pts if p != lam]
    n = len(lam)
    for m in range(1, m_max + 1):
        target = tuple(m * x for x in lam)
        for c in _compositions_upto(len(others), m):
            if all(sum(ci * p[k] for ci, p in zip(c, others)) == target[k] for k in range(n)):
                return False
    return True


def _compositions_upto(k: int, total: int):
    """All ``c in N^k`` with ``1 <= sum c <= total``."""
    if k == 0:
        return
    for s in range(1, total + 1):
        for bars in itertools.combinations(range(s + k - 1), k - 1):
            prev = -1
            c = []
            for b in bars:
                c.append(b - prev - 1)
                prev = b
            c.append(s + k - 2 - prev)
            yield c


def homogeneous_values_from_samples(values: Sequence, ms: Sequence[int], field) -> tuple:
    """Solve ``values[j] = sum_k ms[j]^k h_k`` for ``h``; the system is Vandermonde."""
    rows = [[field(m) ** k for k in range(len(ms))] for m in ms]
    x = solve(Matrix(field, rows), tuple(field(v) for v in values))
    if x is None:
        raise ValueError("sample points are not distinct")
    return x


def extremal_component_check(P: OperatorPolynomial, derivs: Sequence[Derivation], u: Element,
                             grading: Grading | None = None) -> Report:
    """At each extremal weight of ``u``: ``u_lam`` is nilpotent or every ``P_k(lam)`` vanishes."""
    rep = Report()
    g = grading or joint_grading(derivs)
    K = ker_op(op_from_polynomial(P, derivs))
    if not radical_member(u, K).in_radical:
        rep.add("hypothesis", HYPOTHESIS_NOT_MET, f"{u} is not in r(Ker P(D))")
        return rep
    comps = g.decompose(u)
    support = list(comps)
    d = P.degree
    bad = None
    checked = 0
    for lam in support:
        if not is_extremal(lam, support):
            continue
        checked += 1
        nil = bool(is_nilpotent(comps[lam]))
        vanish = all(not eval_scalar(P.homogeneous(k), lam) for k in range(d + 1))
        if not (nil or vanish):
            bad = {"weight": _wjson(lam), "component": str(comps[lam])}
    rep.expect("extremal components nilpotent or weight a common zero", bad is None,
               f"{checked} extremal weights of {len(support)}", bad)
    return rep


# ---- combined suites ------------------------------------------------------------------------

def _reduced_or_raise(A):
    if A.field.characteristic != 0:
        raise CharPUnsupported("needs characteristic zero")
    if A.kind == "exp_poly":
        return
    if not A.is_finite:
        raise InfiniteDimensional(f"cannot certify that {A} is reduced")
    if nilradical(A).dim:
        raise NotReduced(f"{A} has nonzero nilpotents")


def reduced_radical_check(P: OperatorPolynomial, derivs: Sequence[Derivation], A: Algebra, rng=None,
                          samples: int = 20, assert_no_common_zero: bool = False) -> Report:
    """On a reduced algebra: radical members of ``Ker P(D)`` are weight-zero, and
    are zero when ``P(0) != 0``."""
    _reduced_or_raise(A)
    rep = Report()
    n = len(derivs)
    P0 = eval_scalar(P, (0,) * n)
    hyp1 = P.degree >= 1 and (n == 1 or assert_no_common_zero)
    if A.kind == "exp_poly":
        return _reduced_radical_exppoly(P, derivs, A, rng, samples, hyp1, P0)
    g = joint_grading(derivs)
    K = ker_op(op_from_polynomial(P, derivs))
    pts = [A.zero()] + A.basis_elements() + ([A.random_element(rng) for _ in range(samples)] if rng else [])
    members = [u for u in pts if radical_member(u, K).in_radical]
    note = f"{len(pts)} points, {len(members)} radical members"
    if hyp1:
        bad = next((u for u in members if A.coords(u) not in g.A0), None)
        rep.expect("radical inside A_0", bad is None, note, None if bad is None else {"u": str(bad)})
    else:
        rep.add("radical inside A_0", NOT_APPLICABLE, "no-common-zero hypothesis not asserted")
    if P0:
        bad = next((u for u in members if u), None)
        rep.expect("P(0) != 0 gives a zero radical", bad is None, note, None if bad is None else {"u": str(bad)})
    else:
        rep.add("P(0) != 0 gives a zero radical", NOT_APPLICABLE, "P(0) = 0")
    return rep


def _reduced_radical_exppoly(P, derivs, A, rng, samples, hyp1, P0) -> Report:
    rep = Report()
    (D,) = derivs
    if not (D.images[0].is_scalar() and D.images[0]):
        rep.add("exponential polynomials", NOT_APPLICABLE, "only c*d/dx with c != 0 is decided")
        return rep
    c = D.images[0].scalar_value()
    sc = P.scalar_coefficients()
    # P(c d/dx) = Q(d/dx) with Q(t) = P(c t)
    q = Poly(A.field, [sc.get((k,), 0) * c ** k for k in range(P.degree + 1)])
    pts = [A.zero(), A.one(), A.gen("x"), A.exp(1), A.exp(-2, 1)]
    if rng is not None:
        pts += [A.random_element(rng) for _ in range(samples)]
    members = [u for u in pts if exppoly_radical_member(u, q)[0]]
    note = f"{len(pts)} points, {len(members)} radical members"
    # the weight-zero piece of c*d/dx is the polynomial part
    in_a0 = lambda u: all(k[0] == 0 for k in u.terms)
    if hyp1:
        bad = next((u for u in members if not in_a0(u)), None)
        rep.expect("radical inside A_0", bad is None, note, None if bad is None else {"u": str(bad)})
    else:
        rep.add("radical inside A_0", NOT_APPLICABLE, "no-common-zero hypothesis not asserted")
    if P0:
        bad = next((u for u in members if u), None)
        rep.expect("P(0) != 0 gives a zero radical", bad is None, note, None if bad is None else {"u": str(bad)})
    else:
        rep.add("P(0) != 0 gives a zero radical", NOT_APPLICABLE, "P(0) = 0")
    return rep


def char_p_contrast(p: int, m_max: int = 50) -> Report:
    """``d/dx`` on ``F_p[x]`` is nonzero yet ``D^p`` kills every monomial."""
    from .algebra import MonomialQuotient
    from .exactmath import GF

    A = MonomialQuotient(GF(p), ["x"], [])
    D = Derivation.d_dx(A)
    rep = Report()
    x = A.gen("x")
    bad = next((m for m in range(m_max + 1) if D.apply_power(x ** m, p)), None)
    rep.expect(f"F_{p}[x]: D^{p} x^m = 0 for m <= {m_max}", bad is None, "", None if bad is None else {"m": bad})
    rep.expect(f"F_{p}[x]: D != 0", bool(D(x)), f"D(x) = {D(x)}")
    return rep


def nilpotent_image_checks(A: Algebra, D: Derivation, rng=None, samples: int = 5, primes=()) -> Report:
    """Image of ``D`` inside ``nil(A)``, images of subspaces, rigidity of reduced
    algebras, and the positive-characteristic contrast."""
    rep = Report()
    if not A.is_finite:
        raise InfiniteDimensional(f"{A} is infinite-dimensional")
    char0 = A.field.characteristic == 0
    if A.commutative and char0:
        nil = nilradical(A)
        M = D.matrix_of()
        image = Subspace.span(A.field, A.dim, M.columns())
        rep.expect("Im D inside nil(A)", image <= nil, f"dim Im D = {image.dim}, dim nil = {nil.dim}")
        bad = None
        for _ in range(samples if rng else 0):
            k = rng.randint(1, A.dim)
            V = A.subspace(A.random_element(rng) for _ in range(k))
            DV = V.image(M)
            if not DV <= nil:
                bad = {"V": [str(e) for e in A.elements_of(V)]}
                break
        rep.expect("D(V) inside nil(A) for random V", bad is None, f"{samples} subspaces", bad)
        if nil.dim == 0:
            space = derivation_space(A)
            rep.expect("reduced algebra has only the zero derivation", not space,
                       f"dim Der(A) = {len(space)}")
        else:
            rep.add("reduced algebra has only the zero derivation", NOT_APPLICABLE, f"dim nil = {nil.dim}")
    else:
        why = "noncommutative" if char0 else f"characteristic {A.field.characteristic}"
        rep.add("Im D inside nil(A)", NOT_APPLICABLE, why)
        cls = classify(D)
        if not char0:
            rep.add("nilpotency in positive characteristic", "pass" if cls.nilpotent else NOT_APPLICABLE,
                    f"nilpotency index {cls.nilpotency_index}")
    for p in primes:
        rep.extend(char_p_contrast(p))
    return rep


def quaternions(field=None):
    """``H`` over the rationals: a reduced noncommutative algebra."""
    from .algebra import StructureConstantAlgebra
    from .exactmath import QQ

    F = field or QQ
    # basis 1, i, j, k
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for (a, b), (s, c) in mult.items():
        table[a][b][c] = s
    return StructureConstantAlgebra(F, table, 0, ["1", "i", "j", "k"])


def noncommutative_rigidity_contrast() -> Report:
    """Reduced but noncommutative: the quaternions carry nonzero algebraic derivations.

    Recorded as an expected violation of the commutative rigidity statement.
    """
    H = quaternions()
    rep = Report()
    space = derivation_space(H)
    D = Derivation.inner(H, H.gen("i"))
    mp = D.minimal_polynomial()
    # H is a division algebra: a * conj(a) = |a|^2 > 0 for a != 0
    basis = H.basis_elements()
    conj = lambda a: H.from_coords([c if k == 0 else -c for k, c in enumerate(H.coords(a))])
    norm_ok = all((b * conj(b)).is_scalar() and (b * conj(b)).scalar_value() > 0 for b in basis)
    rep.expect("quaternions: expected nonzero derivations", len(space) == 3 and bool(D(H.gen("j"))),
               f"dim Der(H) = {len(space)}, ad_i has minimal polynomial {mp}; reduced: {norm_ok}")
    return rep
