import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radkernel.algebra import ExpPolyAlgebra, MonomialQuotient, WordQuotient, matrix_algebra
from radkernel.derivation import Derivation
from radkernel.errors import NonCommutingTuple
from radkernel.exactmath import QQ
from radkernel.instances import random_commutative_algebra, random_derivation, random_hypothesis_instance, word_truncation
from radkernel.weylop import (
    DiffOperator,
    OperatorPolynomial,
    ad,
    ad_power,
    ad_expansion_check,
    gradient,
    commutator_check,
    op_from_polynomial,
    power_kernel_check,
)

A2 = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
W = WordQuotient(QQ, ["X", "Y"], [(1, 1)])
E = ExpPolyAlgebra()


def uni(A, *coeffs):
    return OperatorPolynomial.univariate(A, list(coeffs))


def test_example_operator_on_word_algebra():
    D = Derivation.partial(W, "X")
    phi = op_from_polynomial(uni(W, 1, "-X"), [D])
    X, Y = W.gen("X"), W.gen("Y")
    f = X * Y
    for m in range(1, 9):
        assert phi(f ** m) == 0
        assert phi(X * f ** m) == -(X * f ** m)


def test_exppoly_operator():
    phi = op_from_polynomial(uni(E, 2, -3, 1), [Derivation.d_dx(E)])
    assert phi(E.exp(1)) == 0 and phi(E.exp(2)) == 0
    assert phi(E.exp(3)) == E.exp(3).scale(2)


def test_zero_operator_kills_everything():
    phi = op_from_polynomial(OperatorPolynomial(A2, 1), [Derivation.euler(A2)])
    assert all(phi(b) == 0 for b in A2.basis_elements())


def test_non_commuting_tuple_rejected():
    B = MonomialQuotient(QQ, ["x1", "x2"], [(1, 1)])
    e = Derivation(B, images={"x1": "x1"})
    f = Derivation(B, images={"x1": "x1^2"})
    with pytest.raises(NonCommutingTuple):
        DiffOperator.identity(B, [e, f], canonical=True)


def test_polynomial_parts():
    P = OperatorPolynomial(A2, 2, {(0, 0): "x1", (1, 0): 2, (1, 1): "x2", (0, 2): 1})
    assert P.degree == 2 and P.a0 == A2.gen("x1")
    assert P.homogeneous(1).coeffs == {(1, 0): A2.scalar(2)}
    assert sum((P.homogeneous(k) for k in range(1, 3)), P.homogeneous(0)).coeffs == P.coeffs


# ---- the ad calculus ---------------------------------------------------------------------------

def test_ad_of_derivation_is_multiplication():
    D = Derivation(A2, images={"x1": "x1"})
    u = A2.gen("x1")
    lhs = ad(-u, DiffOperator(A2, [D], {(0,): A2.one()}))
    for b in A2.basis_elements():
        assert lhs(b) == D(u) * b


def test_ad_of_unit_is_zero():
    rng = random.Random(1)
    D = Derivation.euler(A2)
    phi = op_from_polynomial(uni(A2, "x2", 1, "x1"), [D])
    assert ad(A2.one(), phi).is_zero()
    for _ in range(10):
        a = A2.random_element(rng)
        assert ad(A2.one(), phi)(a) == 0


def test_ad_square_expansion():
    rng = random.Random(2)
    D = Derivation.euler(A2)
    phi = op_from_polynomial(uni(A2, 0, "x2", 1), [D])
    u = A2.parse("x1 + x2")
    sq = ad_power(u, phi, 2)
    for _ in range(50):
        a = A2.random_element(rng)
        assert sq(a) == u * u * phi(a) - 2 * u * phi(u * a) + phi(u * u * a)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_ad_expansion_examples(k):
    E2 = Derivation.euler(A2)
    phi = op_from_polynomial(uni(A2, 0, 0, 1), [E2])
    assert ad_expansion_check(A2.parse("x1 + x2^2"), phi, k).ok
    D = Derivation.partial(W, "X")
    psi = DiffOperator(W, [D], {(0,): W.gen("X")})
    assert ad_expansion_check(W.parse("X*Y"), psi, k, random.Random(k), samples=20, degree_budget=6).ok


def test_ad_expansion_on_matrices():
    M = matrix_algebra(QQ, 2)
    b = M.basis_elements()
    D = Derivation.inner(M, b[1])
    phi = DiffOperator(M, [D], {(0, 0): b[2], (0,): b[0]})
    for k in range(1, 5):
        assert ad_expansion_check(b[1] + b[3], phi, k).ok


@given(st.integers(0, 10 ** 6))
def test_ad_is_operator_derivation(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=8)
    D = random_derivation(A, rng)
    P = OperatorPolynomial.univariate(A, [A.random_element(rng) for _ in range(3)])
    Q = OperatorPolynomial.univariate(A, [A.random_element(rng) for _ in range(2)])
    phi, psi = op_from_polynomial(P, [D]), op_from_polynomial(Q, [D])
    u = A.random_element(rng)
    lhs = ad(u, phi.compose(psi))
    rhs = ad(u, phi).compose(psi) + phi.compose(ad(u, psi))
    for b in A.basis_elements():
        assert lhs(b) == rhs(b)


@given(st.integers(0, 10 ** 6))
def test_operator_linearity(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=8)
    D = random_derivation(A, rng)
    phi = op_from_polynomial(OperatorPolynomial.univariate(A, [A.random_element(rng) for _ in range(3)]), [D])
    a, b = A.random_element(rng), A.random_element(rng)
    c = rng.randint(-3, 3)
    assert phi(a.scale(c) + b) == phi(a).scale(c) + phi(b)


# ---- gradient and commutators -------------------------------------------------------------------

def test_gradient_evaluation():
    d1 = Derivation(A2, images={"x1": "x1"})
    d2 = Derivation(A2, images={"x2": "x2"})
    u = A2.parse("x1*x2")
    assert gradient(u, [d1, d2]) == (u, u)
    P = OperatorPolynomial(A2, 2, {(1, 1): 1})
    assert P.evaluate([A2.gen("x1"), A2.gen("x2")]) == u


def test_commutator_first_order():
    D = Derivation.euler(A2)
    assert commutator_check(A2.parse("x1 + 2*x2"), uni(A2, 0, 1), [D]).ok


def test_commutator_bivariate():
    A = MonomialQuotient(QQ, ["x1", "x2"], [(3, 0), (0, 3)])
    derivs = [Derivation(A, images={"x1": "x1"}), Derivation(A, images={"x2": "x2"})]
    rng = random.Random(5)
    P = OperatorPolynomial(A, 2, {(1, 1): 1})
    for _ in range(10):
        assert commutator_check(A.random_element(rng), P, derivs).ok


def test_commutator_constant():
    D = Derivation.euler(A2)
    P = uni(A2, "x1 + 3")
    phi = op_from_polynomial(P, [D])
    assert ad(-A2.gen("x2"), phi).is_zero()
    assert commutator_check(A2.gen("x2"), P, [D]).ok


# ---- powers in the kernel -------------------------------------------------------------------------

def test_power_kernel_first_degree():
    # u in Ker(a0 + a1 D) on Q[x]/(x^3) with D = x d/dx: u = x, P = xi - 1
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    D = Derivation.euler(A)
    rep = power_kernel_check(uni(A, -1, 1), [D], A.gen("x"))
    assert rep.ok
    assert any(c.name == "a0 u^(d+1) = 0" and c.status == "not-applicable" for c in rep)


def test_power_kernel_second_power():
    # u, u^2 both killed: the last identity forces a0 u^2 = 0
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    D = Derivation.euler(A)
    P = uni(A, "x", -1)   # x - D kills x^2 only; scale to find an instance
    u = A.gen("x") ** 2
    rep = power_kernel_check(P, [D], u)
    assert rep.ok
    assert P.a0 * u * u == 0


def test_power_kernel_hypothesis_failure_reported():
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    rep = power_kernel_check(uni(A, 0, 1), [Derivation.euler(A)], A.gen("x"))
    assert rep.status == "hypothesis-not-met"
    assert rep.checks[0].counterexample == {"m": 1}


def _oracle_sides(P, derivs, u):
    """Both sides of the identity by plain coordinate arithmetic."""
    A = u.algebra
    d = P.degree
    grads = [D(u) for D in derivs]
    rhs = A.zero()
    for alpha, c in P.coeffs.items():
        if sum(alpha) == d:
            term = c
            for g, e in zip(grads, alpha):
                for _ in range(e):
                    term = term * g
            rhs = rhs + term
    lhs = P.coeffs.get((0,) * P.arity, A.zero()) * u ** d
    return lhs, rhs.scale((-1) ** d * factorial(d))


def test_power_kernel_random_instances():
    rng = random.Random(2021)
    done = 0
    while done < 100:
        A = random_commutative_algebra(rng, max_dim=8)
        n = rng.randint(1, 2)
        derivs = [Derivation.euler(A, [rng.randint(0, 2) for _ in A.names], name=f"D{i}") for i in range(n)]
        inst = random_hypothesis_instance(A, derivs, rng, d=rng.randint(1, 3))
        if inst is None:
            continue
        P, u = inst
        rep = power_kernel_check(P, derivs, u)
        assert rep.ok, rep
        lhs, rhs = _oracle_sides(P, derivs, u)
        assert lhs == rhs
        done += 1
