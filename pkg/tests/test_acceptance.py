"""One test per acceptance criterion.

Each test records a single ``[PASS]``/``[FAIL]`` line (shown in the pytest
terminal summary) before asserting, so a red criterion is still reported.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial, prod

from radkernel.algebra import (
    ExpPolyAlgebra,
    MonomialQuotient,
    StructureConstantAlgebra,
    WordQuotient,
    direct_product,
    is_nilpotent,
    matrix_algebra,
    structure_constants_from,
)
from radkernel.derivation import Derivation, derivation_space
from radkernel.errors import NoExtremalFound
from radkernel.exactmath import QQ, Matrix, Poly, Subspace, det_bareiss
from radkernel.instances import (
    a_n,
    random_commutative_algebra,
    random_derivation,
    random_hypothesis_instance,
    word_truncation,
)
from radkernel import kerrad, spectral, vandermonde
from radkernel.weylop import DiffOperator, OperatorPolynomial, ad_expansion_check, op_from_polynomial, power_kernel_check


def _ok(rep) -> bool:
    return all(c.status != "fail" for c in rep)


# 1 ------------------------------------------------------------------------------------------------

def test_factorial_hankel_determinants(criterion):
    start = time.perf_counter()
    values = []
    for n in range(1, 9):
        d = det_bareiss(Matrix(QQ, [[factorial(i + j) for j in range(n)] for i in range(n)]))
        values.append(d == prod(factorial(k) for k in range(1, n)) ** 2)
    small = (det_bareiss(Matrix(QQ, [[1, 1], [1, 2]])), det_bareiss(Matrix(QQ, [[1, 1, 2], [1, 2, 6], [2, 6, 24]])))
    elapsed = time.perf_counter() - start
    ok = all(values) and small == (1, 4) and elapsed < 1
    criterion(1, ok, f"factorial Hankel determinants n=1..8 exact, n=2 -> {small[0]}, n=3 -> {small[1]}, {elapsed:.3f}s (< 1s)")
    assert ok


# 2 ------------------------------------------------------------------------------------------------

def test_differential_vandermonde(criterion):
    start = time.perf_counter()
    rng = random.Random(2)
    fails, algebras = 0, 0
    for _ in range(50):
        A = random_commutative_algebra(rng, max_dim=12)
        D = random_derivation(A, rng)
        f = A.random_element(rng)
        algebras += 1
        fails += sum(not vandermonde.vandermonde_det_check(f, D, n).ok for n in range(1, 6))
    family = 0
    for n in range(1, 5):
        A = a_n(n)
        E = Derivation.euler(A)
        for _ in range(3):
            f = A.random_element(rng)
            family += 1
            fails += sum(not vandermonde.vandermonde_det_check(f, E, k).ok for k in range(1, 6))
    elapsed = time.perf_counter() - start
    ok = fails == 0 and elapsed < 30
    criterion(2, ok, f"determinant identity n<=5 on {algebras} random algebras + {family} Euler-family elements, "
                     f"{fails} failures, {elapsed:.1f}s (< 30s)")
    assert ok


# 3 ------------------------------------------------------------------------------------------------

def test_word_algebra_example(criterion):
    start = time.perf_counter()
    B, D, phi = kerrad.word_example()
    X, Y = B.gen("X"), B.gen("Y")
    f = X * Y
    ident = all(phi(f ** m).is_zero() and phi(X * f ** m) == -(X * f ** m) for m in range(1, 9))
    rep = kerrad.word_algebra_check(8)
    witness = next(c for c in rep if c.name == "truncated model, witness (XY, X, 1)")
    elapsed = time.perf_counter() - start
    ok = ident and _ok(rep) and witness.status == "pass" and elapsed < 5
    criterion(3, ok, f"P(D)f^m = 0, P(D)Xf^m = -Xf^m for m<=8; truncated witness {witness.details.split(' ')[0]}; "
                     f"{elapsed:.2f}s (< 5s)")
    assert ok


# 4 ------------------------------------------------------------------------------------------------

def test_power_kernel_identities(criterion):
    rng = random.Random(4)
    done = fails = top = 0
    while done < 120:
        A = random_commutative_algebra(rng, max_dim=8)
        if rng.random() < 0.5:
            ds = [random_derivation(A, rng)]
        else:
            ds = [Derivation.euler(A, [rng.randint(0, 3) for _ in A.names], name=f"E{i}") for i in range(2)]
        inst = random_hypothesis_instance(A, ds, rng, rng.randint(1, 3))
        if inst is None:
            continue
        P, u = inst
        rep = power_kernel_check(P, ds, u)
        done += 1
        fails += not rep.ok
        top += any(c.name == "a0 u^(d+1) = 0" and c.status == "pass" for c in rep)
    ok = fails == 0 and done >= 100
    criterion(4, ok, f"{done} hypothesis instances, operator expansion vs gradient form, "
                     f"{top} with the (d+1)-power identity applicable, {fails} failures")
    assert ok


# 5 ------------------------------------------------------------------------------------------------

def test_commutator_and_shifted_leibniz(criterion):
    rng = random.Random(5)
    A2 = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
    E = ExpPolyAlgebra()
    W = WordQuotient(QQ, ["X", "Y"], [(1, 1)])
    M2 = matrix_algebra(QQ, 2)
    m2 = M2.basis_elements()
    dW = Derivation.partial(W, "X")
    cases23 = [
        ("Q[x1,x2]/(x1^2,x2^3)", A2.parse("x1 + x2^2"),
         op_from_polynomial(OperatorPolynomial.univariate(A2, [0, "x2", 1]), [Derivation.euler(A2)])),
        ("exp-poly", E.exp(1) + E.gen("x"),
         op_from_polynomial(OperatorPolynomial.univariate(E, [1, "x", 1]), [Derivation.d_dx(E)])),
        ("Q<X,Y>/(Y^2)", W.parse("X*Y + X"), DiffOperator(W, [dW], {(0,): W.gen("X"), (0, 0): W.one()})),
        ("M2(Q)", m2[1] + m2[3], DiffOperator(M2, [Derivation.inner(M2, m2[1])], {(0,): m2[2], (0, 0): m2[0]})),
    ]
    results = []
    for label, u, phi in cases23:
        for k in range(1, 5):
            results.append(ad_expansion_check(u, phi, k, rng, samples=200, degree_budget=6).ok)
    cases36 = [
        Derivation.euler(A2), Derivation.euler(a_n(3)), Derivation.d_dx(E),
        dW, Derivation.inner(M2, m2[0]), Derivation(word_truncation(4), images={"X": "X*X", "Y": "Y"}),
    ]
    for D in cases36:
        for m in range(1, 5):
            lam, mu = Fraction(rng.randint(-4, 4), 2), rng.randint(-2, 2)
            results.append(spectral.shifted_leibniz_check(D, lam, mu, m, rng, samples=200).ok)
    ok = all(results)
    criterion(5, ok, f"ad-power expansion k<=4 on {len(cases23)} algebras and shifted Leibniz m<=4 on "
                     f"{len(cases36)} derivations, 200 samples each (commutative + noncommutative), "
                     f"{results.count(False)} failures")
    assert ok


# 6 ------------------------------------------------------------------------------------------------

def test_kernel_homogeneity(criterion):
    rng = random.Random(6)
    A = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
    ds = [Derivation.euler(A, [1, 0], name="D1"), Derivation.euler(A, [0, 1], name="D2")]
    g = spectral.joint_grading(ds)
    polys, nontrivial, fails = 0, 0, 0
    while polys < 30:
        coeffs = {(i, j): rng.randint(-2, 2) for i in range(3) for j in range(3 - i) if rng.random() < 0.5}
        P = OperatorPolynomial(A, 2, coeffs)
        if rng.random() < 0.7:
            # shift so that P vanishes at a random weight
            lam = rng.choice(g.weights)
            P = P - OperatorPolynomial(A, 2, {(0, 0): spectral.eval_scalar(P, lam)})
        polys += 1
        K = kerrad.ker_op(op_from_polynomial(P, ds))
        nontrivial += K.dim > 0
        fails += not spectral.kernel_grading_check(P, ds, g).ok
    ok = fails == 0 and polys >= 20
    criterion(6, ok, f"kernel homogeneity and zero-weight inclusion for {polys} scalar polynomials "
                     f"({nontrivial} with nonzero kernel) on the bidegree grading, {fails} failures")
    assert ok


# 7 ------------------------------------------------------------------------------------------------

def test_radical_decision(criterion):
    rng = random.Random(7)
    disagree = nil_fail = nils = 0
    for _ in range(200):
        A = random_commutative_algebra(rng, max_dim=6)
        a = A.random_element(rng)
        if rng.random() < 0.5:
            a = a - A.scalar(A.coords(a)[A.index_of(A.unit_key)])
        extra = [a ** rng.randint(1, 3)] if rng.random() < 0.5 else []
        V = A.subspace([A.random_element(rng) for _ in range(rng.randint(0, A.dim))] + extra)
        got = kerrad.radical_member(a, V).in_radical
        disagree += got != kerrad.radical_bruteforce(a, V)
        if is_nilpotent(a):
            nils += 1
            nil_fail += not (got and kerrad.radical_member(a, Subspace.zero(QQ, A.dim)).in_radical)
    Q1 = structure_constants_from(MonomialQuotient(QQ, ["x"], [(1,)]))
    P2 = direct_product(Q1, Q1)
    e1 = P2.basis_elements()[1]
    e2 = P2.one() - e1
    dec = kerrad.radical_member(e1, P2.subspace([e2]))
    idem = not dec.in_radical and dec.s_inf == P2.subspace([e1])
    ok = disagree == 0 and nil_fail == 0 and idem
    criterion(7, ok, f"200 random triples: {disagree} oracle disagreements, {nils} nilpotents all radical "
                     f"({nil_fail} misses), idempotent (1,0) outside r(span(0,1)): {idem}")
    assert ok


# 8 ------------------------------------------------------------------------------------------------

def test_extremal_elements(criterion):
    rng = random.Random(8)
    disagree = checked = raised = 0
    for _ in range(100):
        dim = rng.randint(1, 3)
        S = sorted({tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(1, 4))})
        for lam in S:
            checked += 1
            disagree += spectral.is_extremal(lam, S) != spectral.extremal_bruteforce_oracle(lam, S, 12)
        try:
            spectral.find_extremal(S)
        except NoExtremalFound:
            raised += 1
    ok = disagree == 0 and raised == 0
    criterion(8, ok, f"100 weight sets (|S|<=4, coords in -2..2), {checked} points: {disagree} LP/enumeration "
                     f"disagreements at m_max=12; find_extremal raised {raised} times")
    assert ok


# 9 ------------------------------------------------------------------------------------------------

def test_derivations_and_nilpotents(criterion):
    rng = random.Random(9)
    image_ok = all(_ok(spectral.nilpotent_image_checks(a_n(n), Derivation.euler(a_n(n)), rng, 3)) for n in range(1, 5))
    Q1 = structure_constants_from(MonomialQuotient(QQ, ["x"], [(1,)]))
    Q3 = direct_product(direct_product(Q1, Q1), Q1)
    idem = StructureConstantAlgebra(QQ, [[[1, 0], [0, 1]], [[0, 1], [0, 1]]], 0)
    rigid = [len(derivation_space(A)) for A in (Q3, idem)]
    charp = all(spectral.char_p_contrast(p).ok for p in (3, 5))
    X = ExpPolyAlgebra()
    D = Derivation.d_dx(X)
    p49 = []
    for a in (X.scalar(3), X.one(), X.zero()):
        for r in (1, 2, 3):
            p49.append(_ok(kerrad.iterated_kernel_check(D, a, r)))
    p49_hyp = kerrad.iterated_kernel_check(D, X.gen("x"), 2).status == "hypothesis-not-met"
    ok = image_ok and rigid == [0, 0] and charp and all(p49) and p49_hyp
    criterion(9, ok, f"Im D inside nil(A_n) n<=4: {image_ok}; dim Der of Q^3 and Q[x]/(x^2-x): {rigid}; "
                     f"D^p = 0, D != 0 on F_p[x], p=3,5: {charp}; exp-poly instances: {sum(p49)}/{len(p49)}")
    assert ok


# 10 -----------------------------------------------------------------------------------------------

def test_exponential_polynomial_model(criterion):
    rng = random.Random(10)
    X = ExpPolyAlgebra()
    t = Poly.t(QQ)
    polys = [t * t - 3 * t + 2, t * t, (t - 1) ** 2, t * (t + 1), t * t - 1, t + 3, t,
             (t - Fraction(1, 2)) * (t + 2) ** 2]
    basis_ok = wrong = members = 0
    for p in polys:
        basis = kerrad.ker_op_exppoly(p)
        op = kerrad.exppoly_operator(p)
        basis_ok += len(basis) == p.degree and all(op(b).is_zero() for b in basis)
        pts = [X.zero(), X.one(), X.scalar(-2), X.gen("x")] + basis + [X.random_element(rng) for _ in range(25)]
        for u in pts:
            got, _ = kerrad.exppoly_radical_member(u, p)
            want = u.is_zero() or (p(0) == 0 and u.is_scalar())
            members += got
            wrong += got != want
            # members really have P(D) u^m = 0 on a window of powers
            if got and not kerrad.exppoly_window_oracle(u, p, 1, 8):
                wrong += 1
    ok = basis_ok == len(polys) and wrong == 0
    criterion(10, ok, f"{basis_ok}/{len(polys)} kernel bases annihilated; sampled radical = {{0}} when P(0) != 0 "
                      f"and constants when P(0) = 0 ({members} members, {wrong} mismatches)")
    assert ok


# 11 -----------------------------------------------------------------------------------------------

def test_determinism(criterion, tmp_path):
    cmd = [sys.executable, "-m", "radkernel", "verify", "--suite", "all", "--seed", "42", "--quiet"]
    procs = [subprocess.Popen(cmd + ["--out", str(tmp_path / f"run{i}.json")]) for i in range(2)]
    codes = [p.wait(timeout=1200) for p in procs]
    raw = [(tmp_path / f"run{i}.json").read_text() for i in range(2)]
    strip = [{k: v for k, v in json.loads(r).items() if k != "elapsed_ms"} for r in raw]
    # identical bytes once the wall-time field is excluded
    same = json.dumps(strip[0], indent=2) == json.dumps(strip[1], indent=2)
    nchecks = len(strip[0]["checks"])
    failed = sum(c["status"] == "fail" for c in strip[0]["checks"])
    ok = same and codes == [0, 0]
    criterion(11, ok, f"verify --suite all --seed 42 twice: identical reports (elapsed_ms excluded): {same}; "
                      f"{nchecks} checks, {failed} failed, exit codes {codes}")
    assert ok
