"""Named verification suites: each returns a :class:`Report` for given options."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction

from . import kerrad, spectral, vandermonde
from .algebra import (
    ExpPolyAlgebra,
    MonomialQuotient,
    StructureConstantAlgebra,
    direct_product,
    is_nilpotent,
    matrix_algebra,
    structure_constants_from,
)
from .bundle import Bundle
from .derivation import Derivation, classify, derivation_space
from .errors import HypothesisFails, NotReduced, RadkernelError
from .exactmath import QQ, Subspace
from .instances import (
    a_n,
    random_commutative_algebra,
    random_derivation,
    random_hypothesis_instance,
    random_weights,
)
from .kerrad import word_example
from .report import FAIL, HYPOTHESIS_NOT_MET, NOT_APPLICABLE, PASS, Check, Report
from .weylop import (
    OperatorPolynomial,
    ad_expansion_check,
    commutator_check,
    op_from_polynomial,
    power_kernel_check,
)

SUITES = ("weyl", "grading", "radical", "derivations", "vandermonde")


@dataclass
class Options:
    seed: int = 0
    trials: int = 100
    budget: int = 64
    m_max: int = 8
    n_max: int = 8
    assert_no_common_zero: bool = False
    bundle: Bundle | None = None


def rng_for(seed: int, name: str) -> random.Random:
    """Independent stream per check so adding a check never shifts the others."""
    h = hashlib.sha256(f"{seed}/{name}".encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


def tally(name: str, reports, what: str = "instances") -> Check:
    """Fold many small reports into one check."""
    reports = list(reports)
    checks = [c for r in reports for c in r]
    fails = [c for c in checks if c.status == FAIL]
    counts = {s: sum(c.status == s for c in checks) for s in (PASS, FAIL, HYPOTHESIS_NOT_MET, NOT_APPLICABLE)}
    details = f"{len(reports)} {what}; " + ", ".join(f"{v} {k}" for k, v in counts.items() if v)
    if fails:
        c = fails[0]
        return Check(name, FAIL, details, {"check": c.name, "details": c.details, "counterexample": c.counterexample})
    status = PASS if counts[PASS] else (checks[0].status if checks else NOT_APPLICABLE)
    return Check(name, status, details)


def _scalar_poly(A, rng, n: int, d: int, coeffs=range(-2, 3)) -> OperatorPolynomial:
    terms = {}
    for alpha in _exps(n, d):
        c = rng.choice(coeffs)
        if c:
            terms[alpha] = A.scalar(c)
    top = tuple([d] + [0] * (n - 1))
    terms.setdefault(top, A.one())
    return OperatorPolynomial(A, n, terms)


def _exps(n, d):
    if n == 0:
        yield ()
        return
    for k in range(d + 1):
        for rest in _exps(n - 1, d - k):
            yield (k,) + rest


# ---- weyl ------------------------------------------------------------------------------------

def _commutative_instance(rng):
    A = random_commutative_algebra(rng, max_dim=8)
    if rng.random() < 0.5:
        ds = [random_derivation(A, rng)]
    else:
        ds = [Derivation.euler(A, random_weights(A, rng), name="E1"),
              Derivation.euler(A, random_weights(A, rng), name="E2")]
    return A, ds


def _random_operator(A, derivs, rng, d=2):
    coeffs = {}
    for alpha in _exps(len(derivs), d):
        coeffs[alpha] = A.random_element(rng, max_degree=2, terms=2)
    return op_from_polynomial(OperatorPolynomial(A, len(derivs), coeffs), derivs)


def suite_weyl(opts: Options) -> Report:
    rep = Report()
    if opts.bundle is not None:
        return _bundle_weyl(opts, rep)
    rng = rng_for(opts.seed, "weyl/power_kernel")
    t21, l23 = [], []
    while len(t21) < opts.trials:
        A, ds = _commutative_instance(rng)
        inst = random_hypothesis_instance(A, ds, rng, rng.randint(1, 3))
        if inst is None:
            continue
        P, u = inst
        t21.append(power_kernel_check(P, ds, u))
        l23.append(commutator_check(u, P, ds))
    rep.checks.append(tally("power-kernel identities, random instances", t21))
    rep.checks.append(tally("commutator expansion, random instances", l23))

    samples = 2 * opts.trials
    for k in range(1, 5):
        rng = rng_for(opts.seed, f"weyl/ad_expansion/{k}/commutative")
        reps = []
        for _ in range(samples):
            A, ds = _commutative_instance(rng)
            reps.append(ad_expansion_check(A.random_element(rng), _random_operator(A, ds, rng), k))
        rep.checks.append(tally(f"ad-power expansion k={k}, commutative", reps, "samples"))
        rng = rng_for(opts.seed, f"weyl/ad_expansion/{k}/noncommutative")
        reps = []
        B, D, _ = word_example()
        M2 = matrix_algebra(QQ, 2)
        for i in range(samples):
            if i % 2:
                u = B.random_element(rng, max_degree=2, terms=3)
                phi = _random_operator(B, [D], rng, d=1)
                reps.append(ad_expansion_check(u, phi, k, rng, samples=1, degree_budget=3))
            else:
                delta = Derivation.inner(M2, M2.random_element(rng), name="ad")
                reps.append(ad_expansion_check(M2.random_element(rng), _random_operator(M2, [delta], rng), k))
        rep.checks.append(tally(f"ad-power expansion k={k}, noncommutative", reps, "samples"))
    return rep


def _bundle_weyl(opts, rep):
    b = opts.bundle
    A = b.algebra
    rng = rng_for(opts.seed, f"weyl/{b.name}")
    for op in b.operators:
        phi = op_from_polynomial(op.poly, op.derivs)
        for k in range(1, 5):
            reps = [ad_expansion_check(A.random_element(rng, max_degree=2, terms=3), phi, k, rng, samples=2, degree_budget=4)
                    for _ in range(max(1, opts.trials // 10))]
            rep.checks.append(tally(f"{b.name}: ad-power expansion k={k} for {op.name}", reps, "samples"))
    if not b.operators:
        rep.add(f"{b.name}: operators", NOT_APPLICABLE, "the file declares no operators")
    return rep


# ---- grading -----------------------------------------------------------------------------------

def _bidegree():
    A = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
    d1 = Derivation.euler(A, [1, 0], name="x1 d1")
    d2 = Derivation.euler(A, [0, 1], name="x2 d2")
    return A, [d1, d2]


def _random_vanishing_poly(A, g, rng):
    """Random scalar polynomial of degree <= 2 that vanishes on a few chosen weights."""
    weights = g.weights
    chosen = rng.sample(weights, rng.randint(1, 2))
    lam = chosen[0]
    one = A.one()
    # linear forms through lam, optionally multiplied by one through a second weight
    l1 = OperatorPolynomial(A, 2, {(1, 0): one.scale(rng.randint(-2, 2) or 1), (0, 1): one.scale(rng.randint(-2, 2)),
                                   (0, 0): A.zero()})
    c = -spectral.eval_scalar(l1, lam)
    l1 = l1 + OperatorPolynomial(A, 2, {(0, 0): A.scalar(c)})
    if len(chosen) == 1:
        return l1
    mu = chosen[1]
    l2 = OperatorPolynomial(A, 2, {(0, 1): one, (0, 0): A.scalar(-mu[1])})
    return _mul(l1, l2)


def _mul(P, Q):
    A = P.algebra
    out = {}
    for a, c in P.coeffs.items():
        for b, e in Q.coeffs.items():
            k = tuple(x + y for x, y in zip(a, b))
            out[k] = out.get(k, A.zero()) + c * e
    return OperatorPolynomial(A, P.arity, out)


def suite_grading(opts: Options) -> Report:
    rep = Report()
    if opts.bundle is not None:
        return _bundle_grading(opts, rep)
    A, ds = _bidegree()
    g = spectral.joint_grading(ds)
    rep.extend(g.check())
    rep.expect("bidegree grading has six one-dimensional pieces",
               len(g.pieces) == 6 and all(S.dim == 1 for S in g.pieces.values()),
               f"weights {sorted(tuple(str(x) for x in w) for w in g.weights)}")
    E = Derivation.euler(A)
    dims = {int(k): S.dim for k, S in spectral.generalized_eigenspaces(E).items()}
    rep.expect("total-degree eigenspaces", dims == {0: 1, 1: 2, 2: 2, 3: 1}, str(dims))

    samples = 2 * opts.trials
    M2 = matrix_algebra(QQ, 2)
    ad11 = Derivation.inner(M2, M2.gen("E12") * M2.gen("E21"), name="ad(E11)")
    for m in range(1, 5):
        rng = rng_for(opts.seed, f"grading/shifted_leibniz/{m}")
        com = [spectral.shifted_leibniz_check(E, rng.randint(-2, 3), rng.randint(-2, 3), m, rng, samples=1)
               for _ in range(samples)]
        rep.checks.append(tally(f"shifted Leibniz m={m}, commutative", com, "samples"))
        B, D, _ = word_example()
        non = []
        for i in range(samples):
            if i % 2:
                non.append(spectral.shifted_leibniz_check(ad11, rng.randint(-1, 1), rng.randint(-1, 1), m, rng, samples=1))
            else:
                non.append(spectral.shifted_leibniz_check(D, rng.randint(-2, 2), rng.randint(-2, 2), m, rng, samples=1))
        rep.checks.append(tally(f"shifted Leibniz m={m}, noncommutative", non, "samples"))

    rng = rng_for(opts.seed, "grading/kernel_grading")
    example = OperatorPolynomial(A, 2, {(1, 0): A.one(), (0, 1): A.one(), (0, 0): A.scalar(-2)})
    reps = [spectral.kernel_grading_check(example, ds, g)]
    reps += [spectral.kernel_grading_check(_random_vanishing_poly(A, g, rng), ds, g) for _ in range(max(20, opts.trials // 5))]
    rep.checks.append(tally("kernel grading and zero-weight inclusion", reps, "polynomials"))

    rng = rng_for(opts.seed, "grading/extremal_component")
    reps = []
    for _ in range(max(20, opts.trials // 5)):
        P = _random_vanishing_poly(A, g, rng)
        K = kerrad.ker_op(op_from_polynomial(P, ds))
        basis = A.elements_of(K)
        u = sum((b.scale(rng.randint(-2, 2)) for b in basis), A.zero()) + A.random_element(rng).scale(rng.randint(0, 1))
        reps.append(spectral.extremal_component_check(P, ds, u, g))
    rep.checks.append(tally("extremal components of radical members", reps, "elements"))

    rng = rng_for(opts.seed, "grading/extremal")
    agree, found = [], []
    for _ in range(opts.trials):
        S = _random_weight_set(rng)
        r = Report()
        bad = next((p for p in S if spectral.is_extremal(p, S) != spectral.extremal_bruteforce_oracle(p, S, 12)), None)
        r.expect("agree", bad is None, "", None if bad is None else {"set": _wset(S), "point": _wset([bad])[0]})
        agree.append(r)
        r = Report()
        try:
            spectral.find_extremal(S)
            r.add("found", PASS)
        except spectral.NoExtremalFound:
            r.add("found", FAIL, "", {"set": _wset(S)})
        found.append(r)
    rep.checks.append(tally("LP extremality agrees with the bounded search", agree, "weight sets"))
    rep.checks.append(tally("every finite weight set has an extremal point", found, "weight sets"))

    rng = rng_for(opts.seed, "grading/extremal-rational")
    cert, long_witness = [], 0
    for _ in range(opts.trials):
        S = _random_weight_set(rng, rational=True)
        r = Report()
        for p in S:
            if spectral.is_extremal(p, S):
                r.expect("extremal point has no short witness", spectral.extremal_bruteforce_oracle(p, S, 12), "",
                         {"set": _wset(S), "point": _wset([p])[0]})
                continue
            m, c = spectral.extremal_witness(p, S)
            others = [q for q in S if q != p]
            ok = 1 <= sum(c) <= m and all(sum(ci * q[k] for ci, q in zip(c, others)) == m * p[k]
                                          for k in range(len(p)))
            long_witness += m > 12
            r.expect("witness verifies", ok, "", {"set": _wset(S), "point": _wset([p])[0], "m": m})
        cert.append(r)
    chk = tally("LP verdicts on rational weight sets are certified", cert, "weight sets")
    chk.details += f"; {long_witness} witnesses need m > 12"
    rep.checks.append(chk)

    rep.extend(_reduced_radical_suite(opts))
    return rep


def _random_weight_set(rng, rational=False):
    """Integer points in the box [-2, 2]^dim, or points with halves in [-2, 3]^dim."""
    dim = rng.randint(1, 3)
    size = rng.randint(1, 4)
    pts = set()
    while len(pts) < size:
        if rational:
            pts.add(tuple(Fraction(rng.randint(-2, 3), rng.choice((1, 1, 2))) for _ in range(dim)))
        else:
            pts.add(tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim)))
    return sorted(pts)


def _wset(S):
    return [[str(x) for x in p] for p in S]


def _reduced_algebras():
    Q1 = structure_constants_from(MonomialQuotient(QQ, ["x"], [(1,)]))
    q3 = direct_product(direct_product(Q1, Q1), Q1)
    # Q[x]/(x^2 - x) with basis 1, e
    idem = StructureConstantAlgebra(QQ, [[[1, 0], [0, 1]], [[0, 1], [0, 1]]], 0, ["1", "e"])
    return [("Q x Q x Q", q3), ("Q[x]/(x^2 - x)", idem)]


def _reduced_radical_suite(opts):
    rep = Report()
    rng = rng_for(opts.seed, "grading/reduced_radical")
    reps = []
    for label, A in _reduced_algebras():
        for _ in range(5):
            P = _scalar_poly(A, rng, 1, rng.randint(1, 3))
            reps.append(spectral.reduced_radical_check(P, [Derivation.zero(A)], A, rng, 10, opts.assert_no_common_zero))
    X = ExpPolyAlgebra()
    for _ in range(10):
        D = Derivation.d_dx(X, rng.choice((1, 2, -1, Fraction(1, 2))))
        P = _scalar_poly(X, rng, 1, rng.randint(1, 3))
        reps.append(spectral.reduced_radical_check(P, [D], X, rng, 10, opts.assert_no_common_zero))
    rep.checks.append(tally("radical members on reduced algebras", reps, "instances"))
    A, ds = _bidegree()
    try:
        spectral.reduced_radical_check(OperatorPolynomial.univariate(A, [0, 1]), [Derivation.euler(A)], A)
        rep.add("reducedness is enforced", FAIL, "a non-reduced algebra was accepted")
    except NotReduced as e:
        rep.add("reducedness is enforced", PASS, f"NotReduced: {e}")
    return rep


def _bundle_grading(opts, rep):
    b = opts.bundle
    A = b.algebra
    if not (A.is_finite and b.derivations):
        rep.add(f"{b.name}: grading", NOT_APPLICABLE, "needs a finite algebra with derivations")
        return rep
    ds = list(b.derivations.values())
    try:
        g = spectral.joint_grading(ds)
    except RadkernelError as e:
        rep.add(f"{b.name}: grading", NOT_APPLICABLE, f"{type(e).__name__}: {e}")
        return rep
    rep.extend(g.check())
    dims = {",".join(str(x) for x in w): S.dim for w, S in g.pieces.items()}
    rep.add(f"{b.name}: weights", PASS, str(dims))
    for op in b.operators:
        if op.poly.scalar_coefficients() is not None:
            rep.extend(spectral.kernel_grading_check(op.poly, list(op.derivs), g if len(op.derivs) == len(ds) else None))
    return rep


# ---- radical ---------------------------------------------------------------------------------

def suite_radical(opts: Options) -> Report:
    rep = Report()
    if opts.bundle is not None:
        return _bundle_radical(opts, rep)
    rng = rng_for(opts.seed, "radical/oracle")
    agree, nil_ok = [], []
    for _ in range(2 * opts.trials):
        A = random_commutative_algebra(rng, max_dim=6)
        a = A.random_element(rng)
        if rng.random() < 0.5:
            a = a - A.scalar(A.coords(a)[A.index_of(A.unit_key)])
        k = rng.randint(0, A.dim)
        extra = [a ** rng.randint(1, 3)] if rng.random() < 0.5 else []
        V = A.subspace([A.random_element(rng) for _ in range(k)] + extra)
        r = Report()
        got = kerrad.radical_member(a, V).in_radical
        want = kerrad.radical_bruteforce(a, V)
        r.expect("agree", got == want, "", {"a": str(a), "algebra": repr(A)})
        agree.append(r)
        r = Report()
        if is_nilpotent(a):
            r.expect("nilpotent", got and kerrad.radical_member(a, Subspace.zero(A.field, A.dim)).in_radical, "",
                     {"a": str(a)})
        nil_ok.append(r)
    rep.checks.append(tally("radical decision agrees with the window oracle", agree, "triples"))
    rep.checks.append(tally("nilpotent elements are always radical members", nil_ok, "triples"))

    QQ2 = direct_product(*[structure_constants_from(MonomialQuotient(QQ, ["x"], [(1,)]))] * 2)
    e1 = QQ2.from_coords([1, 1]) - QQ2.from_coords([0, 1])
    e2 = QQ2.one() - e1
    d1 = kerrad.radical_member(e1, QQ2.subspace([e2]))
    d2 = kerrad.radical_member(e1, QQ2.subspace([e1]))
    rep.expect("idempotent outside the complementary line", not d1.in_radical and d1.s_inf == QQ2.subspace([e1]),
               f"S_inf = {[str(e) for e in QQ2.elements_of(d1.s_inf)]}")
    rep.expect("idempotent inside its own line", d2.in_radical)

    rng = rng_for(opts.seed, "radical/radical_inclusions")
    reps = []
    while len(reps) < max(20, opts.trials // 5):
        A, ds = _commutative_instance(rng)
        P = OperatorPolynomial(A, len(ds), {a: A.random_element(rng) for a in _exps(len(ds), rng.randint(1, 2))})
        if P.degree < 1:
            continue
        reps.append(kerrad.radical_inclusions_check(P, ds, A, rng, 10))
    rep.checks.append(tally("radical inclusions from the power-kernel identities", reps, "instances"))

    rep.extend(kerrad.word_algebra_check(opts.m_max))
    rep.extend(_exppoly_model(opts))
    return rep


def _exppoly_model(opts, polys=None):
    from .exactmath import Poly

    rep = Report()
    X = ExpPolyAlgebra()
    rng = rng_for(opts.seed, "radical/exppoly")
    if polys is None:
        polys = [Poly(QQ, c) for c in ([2, -3, 1], [0, 0, 1], [1, -2, 1], [0, 1, 1], [-1, 0, 1], [3, 1], [0, 1])]
    kern, members = [], []
    for p in polys:
        r = Report()
        try:
            basis = kerrad.ker_op_exppoly(p)
        except RadkernelError as e:
            r.add("kernel basis", NOT_APPLICABLE, str(e))
            kern.append(r)
            continue
        op = kerrad.exppoly_operator(p)
        r.expect("kernel basis", len(basis) == p.degree and all(op(b).is_zero() for b in basis),
                 "", {"P": str(p)})
        kern.append(r)
        r = Report()
        pts = [X.zero(), X.one(), X.scalar(3), X.gen("x")] + basis + [X.random_element(rng) for _ in range(20)]
        for u in pts:
            got, why = kerrad.exppoly_radical_member(u, p)
            want = u.is_zero() or (not p(0) and u.is_scalar())
            # spot-check the decision against the powers themselves
            window = kerrad.exppoly_window_oracle(u, p, opts.m_max, 3)
            r.expect("membership", got == want and (not got or window), why, {"P": str(p), "u": str(u)})
        members.append(r)
    rep.checks.append(tally("exponential-polynomial kernel bases are annihilated", kern, "polynomials"))
    rep.checks.append(tally("radical is {0} or the constants according to P(0)", members, "polynomials"))
    return rep


def _bundle_radical(opts, rep):
    b = opts.bundle
    A = b.algebra
    rng = rng_for(opts.seed, f"radical/{b.name}")
    B, _, _ = word_example()
    if A.kind == "noncommutative" and A._key() == B._key():
        return rep.extend(kerrad.word_algebra_check(opts.m_max))
    if A.kind == "exp_poly":
        from .kerrad import _scalar_poly
        return rep.extend(_exppoly_model(opts, [_scalar_poly(op.poly) for op in b.operators] or None))
    if A.is_finite and A.commutative:
        for op in b.operators:
            rep.extend(kerrad.radical_inclusions_check(op.poly, list(op.derivs), A, rng, max(10, opts.trials // 5)))
        if b.operators:
            return rep
    rep.add(f"{b.name}: radical checks", NOT_APPLICABLE, "no applicable operator")
    return rep


# ---- derivations ----------------------------------------------------------------------------

def suite_derivations(opts: Options) -> Report:
    rep = Report()
    if opts.bundle is not None:
        return _bundle_derivations(opts, rep)
    rng = rng_for(opts.seed, "derivations/an")
    for n in range(1, min(4, opts.n_max) + 1):
        A = a_n(n)
        E = Derivation.euler(A)
        for c in spectral.nilpotent_image_checks(A, E, rng, samples=3):
            c.name = f"A_{n}: {c.name}"
            rep.checks.append(c)
        cls = classify(E, opts.budget)
        rep.expect(f"A_{n}: Euler derivation is algebraic and not nilpotent",
                   cls.algebraic and cls.nilpotent is False, f"minimal polynomial {cls.minimal_polynomial}")
    for label, A in _reduced_algebras():
        space = derivation_space(A)
        rep.expect(f"{label}: only the zero derivation", not space, f"dim Der = {len(space)}")
    for p in (3, 5):
        rep.extend(spectral.char_p_contrast(p))
    rep.extend(spectral.noncommutative_rigidity_contrast())

    X = ExpPolyAlgebra()
    D = Derivation.d_dx(X)
    reps = []
    for a, r in [(X.scalar(3), 2), (X.one(), 3), (X.gen("x"), 2), (X.gen("x"), 1), (X.exp(1), 2),
                 (X.zero(), 1), (X.scalar(-2), 4)]:
        reps.append(kerrad.iterated_kernel_check(D, a, r))
    rep.checks.append(tally("exponential polynomials: D^r a^m = 0 forces Da = 0", reps, "instances"))
    reps = [kerrad.iterated_kernel_radical_check(D, r, rng_for(opts.seed, f"derivations/iterated_kernel/{r}"), 10) for r in (1, 2, 3)]
    rep.checks.append(tally("exponential polynomials: r(Ker D^r) = r(Ker D)", reps, "exponents"))
    return rep


def _bundle_derivations(opts, rep):
    b = opts.bundle
    A = b.algebra
    rng = rng_for(opts.seed, f"derivations/{b.name}")
    for D in b.derivations.values():
        cls = classify(D, opts.budget)
        flags = ", ".join(f"{k}={getattr(cls, k)}" for k in ("nilpotent", "nilpotency_index", "locally_nilpotent",
                                                           "locally_finite", "algebraic"))
        rep.add(f"{b.name}: classify {D.name}", PASS, flags)
        if A.is_finite and A.commutative:
            rep.extend(spectral.nilpotent_image_checks(A, D, rng, samples=3))
        if A.field.characteristic and A.kind == "commutative" and len(A.names) == 1 and not A.is_finite:
            rep.extend(spectral.char_p_contrast(A.field.characteristic))
    if not b.derivations:
        rep.add(f"{b.name}: derivations", NOT_APPLICABLE, "the file declares no derivations")
    return rep


# ---- vandermonde -----------------------------------------------------------------------------

def suite_vandermonde(opts: Options) -> Report:
    rep = Report()
    rep.extend(vandermonde.factorial_det_check(opts.n_max))
    if opts.bundle is not None:
        return _bundle_vandermonde(opts, rep)
    n_top = min(5, opts.n_max)
    rng = rng_for(opts.seed, "vandermonde/vandermonde_det")
    reps = []
    for _ in range(max(50, opts.trials // 2)):
        A = random_commutative_algebra(rng, max_dim=12)
        D = random_derivation(A, rng)
        f = A.random_element(rng)
        reps.append(Report([c for n in range(1, n_top + 1) for c in vandermonde.vandermonde_det_check(f, D, n)]))
    rep.checks.append(tally(f"differential Vandermonde, n <= {n_top}, random algebras", reps, "algebras"))
    reps = []
    for n in range(1, min(4, opts.n_max) + 1):
        A = a_n(n)
        E = Derivation.euler(A)
        for _ in range(3):
            f = A.random_element(rng)
            reps.append(Report([c for k in range(1, n_top + 1) for c in vandermonde.vandermonde_det_check(f, E, k)]))
    rep.checks.append(tally(f"differential Vandermonde, n <= {n_top}, Euler family", reps, "elements"))

    rng = rng_for(opts.seed, "vandermonde/column_reduction")
    reps = []
    for _ in range(20):
        A = random_commutative_algebra(rng, max_dim=9)
        D = random_derivation(A, rng)
        f = A.random_element(rng)
        reps.append(Report([c for k in range(2, 6) for c in vandermonde.column_reduction_check(f, D, k)]))
    rep.checks.append(tally("column reduction coefficients", reps, "instances"))
    tables = vandermonde.alpha_recursion(12)
    rep.expect("reduction coefficients are integers up to level 12",
               all(isinstance(v, int) for t in tables for v in t.coeffs.values()))

    rng = rng_for(opts.seed, "vandermonde/vandermonde_kill")
    p54, c55 = [], []
    while len(p54) < max(20, opts.trials // 5):
        A = random_commutative_algebra(rng, max_dim=8)
        D = random_derivation(A, rng)
        inst = random_hypothesis_instance(A, [D], rng, rng.randint(1, 3))
        if inst is None:
            continue
        P, f = inst
        P = _extend_hypothesis(P, D, f)
        if P is None:
            continue
        p54.append(vandermonde.vandermonde_kill_check(P, D, f))
        c55.append(vandermonde.vandermonde_nilpotency_check(P, D, f))
    rep.checks.append(tally("coefficients kill the Vandermonde product", p54, "instances"))
    rep.checks.append(tally("f Df is nilpotent with a regular coefficient", c55, "instances"))
    X = ExpPolyAlgebra()
    P = OperatorPolynomial.univariate(X, [2, -3, 1])
    try:
        vandermonde.vandermonde_kill_check(P, Derivation.d_dx(X), X.exp(1), strict=True)
        rep.add("exponential: hypothesis failure is detected", FAIL, "no failure raised")
    except HypothesisFails as e:
        rep.expect("exponential: hypothesis failure is detected", e.m == 3, f"HypothesisFails({e.m})")
    return rep


def _extend_hypothesis(P, D, f):
    """The generated ``P`` kills ``f..f^d``; keep it only if it also kills ``f^(d+1)``."""
    phi = op_from_polynomial(P, [D])
    return P if not phi(f ** (P.degree + 1)) else None


def _bundle_vandermonde(opts, rep):
    b = opts.bundle
    A = b.algebra
    if not (A.commutative and b.derivations):
        rep.add(f"{b.name}: differential Vandermonde", NOT_APPLICABLE, "needs a commutative algebra with derivations")
        return rep
    rng = rng_for(opts.seed, f"vandermonde/{b.name}")
    for D in b.derivations.values():
        reps = []
        for _ in range(5):
            f = A.random_element(rng, max_degree=2, terms=3)
            reps.append(Report([c for n in range(1, min(5, opts.n_max) + 1) for c in vandermonde.vandermonde_det_check(f, D, n)]))
        rep.checks.append(tally(f"{b.name}: differential Vandermonde for {D.name}", reps, "elements"))
    return rep


RUNNERS = {
    "weyl": suite_weyl,
    "grading": suite_grading,
    "radical": suite_radical,
    "derivations": suite_derivations,
    "vandermonde": suite_vandermonde,
}


def run_suite(name: str, opts: Options) -> Report:
    if name == "all":
        rep = Report()
        for s in SUITES:
            for c in RUNNERS[s](opts):
                c.name = f"{s}: {c.name}"
                rep.checks.append(c)
        return rep
    return RUNNERS[name](opts)
