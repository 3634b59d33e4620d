import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radkernel.algebra import ExpPolyAlgebra, MonomialQuotient, WordQuotient, matrix_algebra
from radkernel.derivation import Derivation, classify, commute_check, derivation_space
from radkernel.errors import IdealNotPreserved, InfiniteDimensional, LeibnizViolation, UnitNotKilled
from radkernel.exactmath import GF, QQ, Matrix, Poly
from radkernel.instances import a_n, random_commutative_algebra, random_derivation, word_truncation

A2 = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
W = WordQuotient(QQ, ["X", "Y"], [(1, 1)])
E = ExpPolyAlgebra()
t = Poly.t(QQ)


def test_ideal_not_preserved():
    A = MonomialQuotient(QQ, ["x"], [(4,)])
    with pytest.raises(IdealNotPreserved):
        Derivation.d_dx(A)


def test_char_p_derivative_descends():
    F5 = GF(5)
    A = MonomialQuotient(F5, ["x"], [(5,)])
    D = Derivation.d_dx(A)
    assert D(A.gen("x") ** 4) == A.gen("x") ** 3 * 4


def test_euler_on_a2_is_valid():
    D = Derivation.euler(A2)
    assert D(A2.parse("x1*x2^2")) == A2.parse("3*x1*x2^2")


def test_matrix_form_errors():
    A = MonomialQuotient(QQ, ["x"], [(2,)])
    with pytest.raises(UnitNotKilled):
        Derivation(A, matrix=Matrix(QQ, [[1, 0], [0, 0]]))
    B = MonomialQuotient(QQ, ["x"], [(3,)])
    # x -> x, x^2 -> 0 is linear but not Leibniz
    with pytest.raises(LeibnizViolation):
        Derivation(B, matrix=Matrix(QQ, [[0, 0, 0], [0, 1, 0], [0, 0, 0]]))
    with pytest.raises(InfiniteDimensional):
        Derivation(W, matrix=Matrix(QQ, [[0]]))


# ---- application ------------------------------------------------------------------------------

def test_noncommutative_partial():
    D = Derivation.partial(W, "X")
    X, Y = W.gen("X"), W.gen("Y")
    assert D(X * Y) == Y
    for m in range(1, 7):
        assert D((X * Y) ** m) == Y * (X * Y) ** (m - 1)


def test_exppoly_derivative():
    D = Derivation.d_dx(E)
    assert D(E.exp(2, 1)) == E.exp(2) + E.exp(2, 1).scale(2)


def test_apply_power():
    A = MonomialQuotient(QQ, ["x"], [(5,)])
    D = Derivation.euler(A)
    x3 = A.gen("x") ** 3
    assert D.apply_power(x3, 4) == x3.scale(81)


# ---- matrices and minimal polynomials ----------------------------------------------------------

def test_matrix_examples():
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    assert Derivation.euler(A).matrix_of() == Matrix(QQ, [[0, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert Derivation.zero(A).matrix_of().is_zero()
    F3 = GF(3)
    B = MonomialQuotient(F3, ["x"], [(3,)])
    assert Derivation.d_dx(B).matrix_of() == Matrix(F3, [[0, 1, 0], [0, 0, 2], [0, 0, 0]])


def test_minimal_polynomial_examples():
    assert Derivation.euler(A2).minimal_polynomial() == t * (t - 1) * (t - 2) * (t - 3)
    assert Derivation.zero(A2).minimal_polynomial() == t
    F5 = GF(5)
    B = MonomialQuotient(F5, ["x"], [(5,)])
    assert Derivation.d_dx(B).minimal_polynomial() == Poly.t(F5) ** 5


def test_euler_minimal_degree_grows():
    degrees = [Derivation.euler(a_n(n)).minimal_polynomial().degree for n in range(1, 5)]
    assert degrees == [2, 4, 7, 11]


# ---- commutation -----------------------------------------------------------------------------------

def test_commute_examples():
    d1 = Derivation(A2, images={"x1": "x1"})
    d2 = Derivation(A2, images={"x2": "x2"})
    assert commute_check(d1, d2) and commute_check(d1, d1)
    # x2 d/dx1 is not defined on Q[x1,x2]/(x1 x2); x1 d/dx1 and x1^2 d/dx1 are
    B = MonomialQuotient(QQ, ["x1", "x2"], [(1, 1)])
    with pytest.raises(IdealNotPreserved):
        Derivation(B, images={"x1": "x2"})
    e = Derivation(B, images={"x1": "x1"})
    f = Derivation(B, images={"x1": "x1^2"})
    assert not commute_check(e, f)


# ---- classification ------------------------------------------------------------------------------

def test_classify_examples():
    c = classify(Derivation.d_dx(E))
    assert c.nilpotent is False and c.locally_nilpotent is False and c.locally_finite is True
    c = classify(Derivation.euler(A2))
    assert c.locally_finite and c.algebraic and c.minimal_polynomial.degree == 4
    F5 = GF(5)
    c = classify(Derivation.d_dx(MonomialQuotient(F5, ["x"], [(5,)])))
    assert c.nilpotent and c.nilpotency_index == 5


def test_classify_word_partial_locally_nilpotent():
    c = classify(Derivation.partial(W, "X"), budget=16)
    assert c.locally_nilpotent is True and c.locally_finite is True


# ---- properties ------------------------------------------------------------------------------------

DERIVS = {
    "euler A2": lambda: Derivation.euler(A2),
    "partial X": lambda: Derivation.partial(W, "X"),
    "d/dx exp": lambda: Derivation.d_dx(E, E.exp(0, 1)),
    "ad M2": lambda: Derivation.inner(matrix_algebra(QQ, 2), matrix_algebra(QQ, 2).basis_elements()[1]),
    "word truncation": lambda: Derivation(word_truncation(4), images={"X": "X*X", "Y": "Y"}),
}


@pytest.mark.parametrize("name", sorted(DERIVS))
def test_leibniz_and_unit(name):
    D = DERIVS[name]()
    A = D.algebra
    rng = random.Random(name)
    assert D(A.one()) == 0
    for _ in range(200):
        a, b = A.random_element(rng), A.random_element(rng)
        assert D(a * b) == D(a) * b + a * D(b)


@given(st.integers(0, 10 ** 6))
def test_matrix_agrees_with_apply(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=8)
    D = random_derivation(A, rng)
    M = Derivation(A, images={v: D(A.gen(v)) for v in A.names}, validate=False)
    for _ in range(10):
        u = A.random_element(rng)
        assert M(u) == D(u)
        assert A.coords(D(u)) == tuple(D.matrix_of().apply(A.coords(u)))


@given(st.integers(0, 10 ** 6))
def test_derivation_space_members_are_derivations(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=8)
    for D in derivation_space(A):
        Derivation(A, matrix=D.matrix_of())  # validates
