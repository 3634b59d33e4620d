import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from radkernel.algebra import (
    ExpPolyAlgebra,
    MonomialQuotient,
    NonReducedIdeal,
    StructureConstantAlgebra,
    WordQuotient,
    direct_product,
    is_nilpotent,
    make_algebra,
    matrix_algebra,
    nilradical,
    structure_constants_from,
)
from radkernel.errors import (
    AlgebraMismatch,
    BadUnit,
    CharPUnsupported,
    InfiniteDimensional,
    NonAssociativeTable,
    Noncommutative,
    ParseError,
    UnknownVariable,
)
from radkernel.exactmath import GF, QQ, Subspace
from radkernel.instances import a_n, random_commutative_algebra, word_truncation

A2 = MonomialQuotient(QQ, ["x1", "x2"], [(2, 0), (0, 3)])
W = WordQuotient(QQ, ["X", "Y"], [(1, 1)])
E = ExpPolyAlgebra()


def qq_pair():
    one = MonomialQuotient(QQ, ["t"], [(1,)])
    s = structure_constants_from(one)
    return direct_product(s, s)


# ---- construction -----------------------------------------------------------------------------

def test_make_algebra_descriptors():
    w = make_algebra({"kind": "noncommutative", "variables": ["X", "Y"], "ideal": ["YY"]})
    assert not w.commutative and not w.is_finite
    a = make_algebra({"field": {"kind": "rational"}, "kind": "commutative",
                      "variables": ["x1", "x2"], "ideal": [[2, 0], [0, 3]]})
    assert a.dim == 6 and a == A2


def test_non_associative_table():
    # e1 e1 = e2 and e2 e1 = 0 breaks (e1 e1) e1 = e1 (e1 e1) once e1 e2 = e1
    z = [0, 0, 0]
    table = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 1, 0]],
        [[0, 0, 1], [0, 0, 0], z],
    ]
    with pytest.raises(NonAssociativeTable):
        StructureConstantAlgebra(QQ, table, 0)


def test_bad_unit():
    table = [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]
    with pytest.raises((BadUnit, NonAssociativeTable)):
        StructureConstantAlgebra(QQ, table, 0)
    with pytest.raises(BadUnit):
        StructureConstantAlgebra(QQ, [[[1]]], 3)


def test_non_reduced_ideal_warns_and_normalizes():
    with pytest.warns(NonReducedIdeal):
        A = MonomialQuotient(QQ, ["x"], [(2,), (3,)])
    assert A.dim == 2


# ---- arithmetic ----------------------------------------------------------------------------------

def test_word_arithmetic():
    X, Y = W.gen("X"), W.gen("Y")
    assert (X * Y) * Y == 0
    assert X * Y != Y * X


def test_truncated_arithmetic():
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    x = A.gen("x")
    assert x * x ** 2 == 0
    assert (1 + x) ** 2 == A.parse("1 + 2*x + x^2")


def test_exppoly_product():
    assert E.exp(1, 1) * E.exp(2) == E.exp(3, 1)
    assert E.parse("x^1*E(3/2)") == E.exp(Fraction(3, 2), 1)


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        A2.gen("x1") + W.gen("X")


def test_word_powers_survive_then_die():
    X, Y = W.gen("X"), W.gen("Y")
    XY = X * Y
    for m in range(1, 11):
        assert XY ** m != 0
        assert XY ** m * Y == 0


# ---- dimension and coordinates ------------------------------------------------------------------

def test_dim_and_basis():
    assert A2.dim == 6
    assert {str(b) for b in A2.basis_elements()} == {"1", "x1", "x2", "x1*x2", "x2^2", "x1*x2^2"}
    assert W.dim is None and E.dim is None


def test_coords_examples():
    A = MonomialQuotient(QQ, ["x"], [(2,)])
    assert A.coords(A.one()) == (1, 0)
    assert A.coords(A.parse("x + 3")) == (3, 1)
    with pytest.raises(InfiniteDimensional):
        W.coords(W.gen("X"))


@given(st.integers(0, 10 ** 6))
def test_coords_roundtrip(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng)
    u = A.random_element(rng)
    assert A.from_coords(A.coords(u)) == u


# ---- ring axioms ------------------------------------------------------------------------------------

KINDS = {
    "commutative": lambda rng: random_commutative_algebra(rng),
    "word": lambda rng: word_truncation(4),
    "matrix": lambda rng: matrix_algebra(QQ, 2),
    "exp_poly": lambda rng: E,
    "prime": lambda rng: MonomialQuotient(GF(5), ["x", "y"], [(3, 0), (0, 2)]),
}


@pytest.mark.parametrize("kind", sorted(KINDS))
def test_ring_axioms(kind):
    rng = random.Random(kind)
    for _ in range(200):
        A = KINDS[kind](rng)
        a, b, c = (A.random_element(rng) for _ in range(3))
        one = A.one()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert one * a == a == a * one


def test_word_ring_axioms_untruncated():
    rng = random.Random(3)
    for _ in range(200):
        a, b, c = (W.random_element(rng, max_degree=3) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


# ---- parsing --------------------------------------------------------------------------------------

def test_parse_examples():
    assert A2.parse("3/2*x1^2*x2 - 1") == A2.scalar(-1)
    xyxy = W.parse("X*Y*X*Y")
    assert len(xyxy.terms) == 1 and str(xyxy) == "X*Y*X*Y"


def test_parse_errors():
    with pytest.raises(UnknownVariable):
        A2.parse("x3")
    with pytest.raises(ParseError) as info:
        A2.parse("x1 + * x2")
    assert info.value.position >= 0


@given(st.integers(0, 10 ** 6))
def test_parse_print_fixed_point(seed):
    rng = random.Random(seed)
    for A in (random_commutative_algebra(rng), word_truncation(4), E):
        u = A.random_element(rng)
        assert A.parse(str(u)) == u


def test_normal_form_uniqueness():
    # equal polynomials mod the ideal, written differently
    pairs = [
        ("x2*x1 + x1*x2 + x2^2", "2*x1*x2 + x2*x2"),
        ("x1*x1*x2 + x2^3", "0"),
        ("x2*x1*x2 - 1/2*x1*x2^2", "1/2*x1*x2^2"),
    ]
    for left, right in pairs:
        assert A2.parse(left) == A2.parse(right)


# ---- nilpotency and the nilradical -----------------------------------------------------------------

def test_is_nilpotent_examples():
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    n = is_nilpotent(A.gen("x"))
    assert n.status == "yes" and n.index == 3
    assert is_nilpotent(E.exp(1)).status == "no"
    assert is_nilpotent(W.gen("X"), budget=10).status == "no"
    assert is_nilpotent(W.gen("Y"), budget=10).index == 2


def test_nilradical_examples():
    A = MonomialQuotient(QQ, ["x"], [(3,)])
    assert nilradical(A) == A.subspace([A.gen("x"), A.gen("x") ** 2])
    assert nilradical(qq_pair()).dim == 0
    nil = nilradical(A2)
    assert nil.dim == 5 and A2.coords(A2.one()) not in nil


def test_nilradical_errors():
    with pytest.raises(CharPUnsupported):
        nilradical(MonomialQuotient(GF(3), ["x"], [(2,)]))
    with pytest.raises(Noncommutative):
        nilradical(matrix_algebra(QQ, 2))
    with pytest.raises(InfiniteDimensional):
        nilradical(MonomialQuotient(QQ, ["x"]))


def test_nilradical_of_reduced_idempotent_algebra():
    # Q[x]/(x^2 - x) written in the idempotent basis 1, x
    A = StructureConstantAlgebra(QQ, [[[1, 0], [0, 1]], [[0, 1], [0, 1]]], 0)
    assert nilradical(A).dim == 0


@given(st.integers(0, 10 ** 6))
def test_nilradical_is_ideal(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=10)
    nil = nilradical(A)
    for n in A.elements_of(nil):
        for b in A.basis_elements():
            assert A.coords(n * b) in nil


@given(st.integers(0, 10 ** 6))
def test_nilpotent_iff_in_nilradical(seed):
    rng = random.Random(seed)
    A = random_commutative_algebra(rng, max_dim=10)
    nil = nilradical(A)
    for _ in range(5):
        u = A.random_element(rng)
        if rng.random() < 0.5:
            u = u - A.scalar(A.coords(u)[A.index_of(A.unit_key)])
        assert bool(is_nilpotent(u)) == (A.coords(u) in nil)


def test_a_n_family():
    assert [a_n(n).dim for n in range(1, 5)] == [2, 6, 24, 120]
    assert nilradical(a_n(3)).dim == 23
