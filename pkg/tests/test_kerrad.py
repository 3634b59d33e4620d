import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radkernel.algebra import (
    ExpPolyAlgebra,
    MonomialQuotient,
    StructureConstantAlgebra,
    direct_product,
    is_nilpotent,
    nilradical,
    structure_constants_from,
)
from radkernel.derivation import Derivation
from radkernel.errors import InfiniteDimensional, NotReduced, RootFactorizationMismatch
from radkernel.exactmath import QQ, Poly, Subspace
from radkernel.instances import random_commutative_algebra, random_derivation
from radkernel.kerrad import (
    ann,
    ann_left,
    radical_inclusions_check,
    word_algebra_check,
    exppoly_operator,
    exppoly_radical_member,
    exppoly_window_oracle,
    ker_op,
    ker_op_exppoly,
    ms_witness_verify,
    power_span_chain,
    iterated_kernel_check,
    iterated_kernel_radical_check,
    radical_bruteforce,
    radical_member,
    word_example,
)
from radkernel.weylop import DiffOperator, OperatorPolynomial, op_from_polynomial

A2 = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
E = ExpPolyAlgebra()
Q1 = structure_constants_from(MonomialQuotient(QQ, ["x"], [(1,)]))
QQ2 = direct_product(Q1, Q1)
QQ3 = direct_product(QQ2, Q1)
t = Poly.t(QQ)


def uni(A, *c):
    return OperatorPolynomial.univariate(A, list(c))


# ---- kernels ------------------------------------------------------------------------------------

def test_ker_op_examples():
    D = Derivation.euler(A2)
    full = Subspace.full(QQ, 6)
    assert ker_op(op_from_polynomial(OperatorPolynomial(A2, 1), [D])) == full
    assert ker_op(DiffOperator.identity(A2, [D])).dim == 0
    assert ker_op(op_from_polynomial(uni(A2, 0, 1), [D])) == A2.subspace([A2.one()])


def test_ker_op_infinite():
    with pytest.raises(InfiniteDimensional):
        ker_op(exppoly_operator(t))


def test_ker_op_exppoly_examples():
    assert set(ker_op_exppoly(t * t - 3 * t + 2)) == {E.exp(1), E.exp(2)}
    assert set(ker_op_exppoly(t * t)) == {E.one(), E.gen("x")}
    basis = ker_op_exppoly((t - 1) ** 2, [(1, 2)])
    assert set(basis) == {E.exp(1), E.exp(1, 1)}
    assert exppoly_operator((t - 1) ** 2)(E.exp(1, 1)) == 0


def test_ker_op_exppoly_bad_roots():
    with pytest.raises(RootFactorizationMismatch):
        ker_op_exppoly((t - 1) ** 2, [(1, 1)])


# ---- radical membership ------------------------------------------------------------------------

def test_nilpotent_always_in_radical():
    x = A2.gen("x1") + A2.gen("x2")
    dec = radical_member(x, Subspace.zero(QQ, 6))
    assert dec.in_radical and dec.s_inf.dim == 0


def test_idempotent_example():
    e1 = QQ2.basis_elements()[1]
    e2 = QQ2.one() - e1
    dec = radical_member(e1, QQ2.subspace([e2]))
    assert not dec.in_radical and dec.s_inf == QQ2.subspace([e1])
    assert radical_member(e1, QQ2.subspace([e1])).in_radical


def test_stabilization_index_bound():
    rng = random.Random(4)
    for _ in range(50):
        A = random_commutative_algebra(rng, max_dim=8)
        a = A.random_element(rng)
        S, n, chain = power_span_chain(a)
        assert n <= A.dim + 1
        assert all(chain[i + 1] <= chain[i] for i in range(len(chain) - 1))


def _instance(rng, max_dim=6):
    A = random_commutative_algebra(rng, max_dim=max_dim)
    a = A.random_element(rng)
    if rng.random() < 0.5:
        a = a - A.scalar(A.coords(a)[A.index_of(A.unit_key)])
    extra = [a ** rng.randint(1, 3)] if rng.random() < 0.5 else []
    V = A.subspace([A.random_element(rng) for _ in range(rng.randint(0, A.dim))] + extra)
    return A, a, V


def test_oracle_agreement_200():
    rng = random.Random(200)
    for _ in range(200):
        A, a, V = _instance(rng)
        assert radical_member(a, V).in_radical == radical_bruteforce(a, V)


def _naive_far_powers(a, V):
    # independent oracle: look at the powers d+1 .. 3d+2 directly
    A = a.algebra
    d = A.dim
    return all(A.coords(a ** m) in V for m in range(d + 1, 3 * d + 3))


@given(st.integers(0, 10 ** 6))
def test_radical_member_matches_far_powers(seed):
    rng = random.Random(seed)
    A, a, V = _instance(rng)
    assert radical_member(a, V).in_radical == _naive_far_powers(a, V)


@given(st.integers(0, 10 ** 6))
def test_s_inf_fixed_point(seed):
    rng = random.Random(seed)
    A, a, V = _instance(rng)
    S = radical_member(a, V).s_inf
    assert A.subspace([a * A.from_coords(v) for v in S.basis]) == S


@given(st.integers(0, 10 ** 6))
def test_monotone_in_subspace(seed):
    rng = random.Random(seed)
    A, a, V = _instance(rng)
    W = V + A.subspace([A.random_element(rng)])
    if radical_member(a, V).in_radical:
        assert radical_member(a, W).in_radical


@given(st.integers(0, 10 ** 6))
def test_nilradical_inside_every_radical(seed):
    rng = random.Random(seed)
    A, _, V = _instance(rng)
    for n in A.elements_of(nilradical(A)):
        assert radical_member(n, V).in_radical


# ---- annihilators -------------------------------------------------------------------------------

def test_ann_examples():
    A = MonomialQuotient(QQ, ["x"], [(2,)])
    assert ann(A.zero()) == Subspace.full(QQ, 2)
    assert ann(A.one()).dim == 0
    assert ann(A.gen("x")) == A.subspace([A.gen("x")])
    assert ann_left(A.gen("x")) == ann(A.gen("x"))


# ---- the power-kernel consequences --------------------------------------------------------------

def test_radical_inclusions_unit_constant_term():
    D = Derivation.euler(A2)
    rep = radical_inclusions_check(uni(A2, 1, -1, 1), [D], A2, random.Random(0), 20)
    assert rep.ok, rep


def test_radical_inclusions_pure_power():
    D = Derivation.euler(A2)
    rep = radical_inclusions_check(uni(A2, 0, 0, 1), [D], A2, random.Random(1), 20)
    assert rep.ok, rep


def test_radical_inclusions_random():
    rng = random.Random(24)
    for _ in range(15):
        A = random_commutative_algebra(rng, max_dim=8)
        D = random_derivation(A, rng)
        P = uni(A, *[A.random_element(rng) for _ in range(rng.randint(2, 3))])
        if P.degree < 1:
            continue
        assert radical_inclusions_check(P, [D], A, rng, 10).ok


# ---- Mathieu-subspace witnesses ----------------------------------------------------------------

def test_witness_whole_algebra():
    rng = random.Random(9)
    a, b, c = (A2.random_element(rng) for _ in range(3))
    assert not ms_witness_verify(Subspace.full(QQ, 6), a, b, c).violation


@given(st.integers(0, 10 ** 6))
def test_ideals_never_violated(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=8)
    g = A.random_element(rng)
    I = A.subspace([g * b for b in A.basis_elements()])
    a, b, c = (A.random_element(rng) for _ in range(3))
    assert not ms_witness_verify(I, a, b, c).violation


def test_word_example_truncated_witness():
    B, D, phi = word_example()
    T = B.truncation(11)
    V = ker_op(phi, T)
    X, Y = T.gen("X"), T.gen("Y")
    res = ms_witness_verify(V, X * Y, X, T.one(), horizon=4)
    assert res.premise and res.violation


def test_word_algebra_report():
    rep = word_algebra_check(8)
    assert rep.ok, rep
    names = " ".join(c.name for c in rep)
    assert "X" in names or len(rep) >= 3


def test_word_algebra_small_powers():
    B, D, phi = word_example()
    X, Y = B.gen("X"), B.gen("Y")
    f = X * Y
    assert phi(f) == 0
    assert D(f * f) == Y * X * Y and X * D(f * f) == f * f
    assert phi(X * f ** 3) == -(X * f ** 3)


# ---- exponential polynomials ---------------------------------------------------------------------

@pytest.mark.parametrize("coeffs", [[2, -3, 1], [0, 0, 1], [1, -2, 1], [0, 1]])
def test_exppoly_radical_membership(coeffs):
    p = Poly(QQ, coeffs)
    rng = random.Random(str(coeffs))
    for u in [E.zero(), E.one(), E.gen("x"), E.exp(1)] + [E.random_element(rng) for _ in range(10)]:
        got, _ = exppoly_radical_member(u, p)
        want = u.is_zero() or (p(0) == 0 and u.is_scalar())
        assert got == want
        if got:
            assert exppoly_window_oracle(u, p, 1, 6)
        elif not u.is_scalar():
            assert not exppoly_window_oracle(u, p, 6, 3)


# ---- reduced algebras ------------------------------------------------------------------------------

def test_iterated_kernel_reduced_examples():
    D0 = Derivation.zero(QQ3)
    rng = random.Random(49)
    for r in (1, 2, 3):
        assert iterated_kernel_check(D0, QQ3.random_element(rng), r).ok
        assert iterated_kernel_radical_check(D0, r, rng, 10).ok


def test_iterated_kernel_exppoly():
    D = Derivation.d_dx(E)
    assert iterated_kernel_check(D, E.scalar(5), 2).ok
    rep = iterated_kernel_check(D, E.gen("x"), 2)
    assert rep.status == "hypothesis-not-met"
    assert iterated_kernel_radical_check(D, 2, random.Random(0), 10).ok


def test_iterated_kernel_rejects_nilpotents():
    with pytest.raises(NotReduced):
        iterated_kernel_check(Derivation.euler(A2), A2.gen("x1"), 1)
