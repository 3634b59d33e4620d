"""Random and named test instances shared by the suites and the tests."""

from __future__ import annotations

from .algebra import MonomialQuotient, WordQuotient
from .derivation import Derivation, derivation_space
from .exactmath import QQ, Matrix, kernel_basis
from .weylop import OperatorPolynomial, op_from_polynomial


def a_n(n: int, field=QQ) -> MonomialQuotient:
    """``Q[x_1..x_n]/(x_1^2, x_2^3, ..., x_n^(n+1))``."""
    names = [f"x{i}" for i in range(1, n + 1)]
    ideal = [tuple(i + 2 if k == i else 0 for k in range(n)) for i in range(n)]
    return MonomialQuotient(field, names, ideal)


def random_commutative_algebra(rng, max_dim: int = 12, max_vars: int = 3, field=QQ) -> MonomialQuotient:
    """Finite monomial quotient with dimension at most ``max_dim``."""
    while True:
        n = rng.randint(1, max_vars)
        bounds = [rng.randint(1, 4) for _ in range(n)]
        ideal = [tuple(b if k == i else 0 for k in range(n)) for i, b in enumerate(bounds)]
        if n > 1 and rng.random() < 0.5:
            # one mixed monomial to cut the box down
            mixed = tuple(rng.randint(1, max(1, b - 1)) for b in bounds)
            if all(e < b for e, b in zip(mixed, bounds)):
                ideal.append(mixed)
        A = MonomialQuotient(field, [f"x{i}" for i in range(1, n + 1)], ideal)
        if A.dim <= max_dim:
            return A


_SPACES: dict = {}


def random_derivation(A, rng, name: str = "D", coeffs=range(-2, 3)) -> Derivation:
    """Random integer combination of a basis of ``Der(A)`` (finite ``A``)."""
    key = A._key() if hasattr(A, "_key") else id(A)
    space = _SPACES.get(key)
    if space is None:
        space = _SPACES[key] = derivation_space(A)
    if not space:
        return Derivation.zero(A, name=name)
    M = Matrix.zeros(A.field, A.dim, A.dim)
    for D in space:
        M = M + D.matrix_of().scale(A.field(rng.choice(coeffs)))
    return Derivation(A, matrix=M, name=name, validate=False)


def random_weights(A, rng, low: int = 0, high: int = 3) -> list[int]:
    return [rng.randint(low, high) for _ in A.names]


def word_truncation(length: int = 4) -> WordQuotient:
    """``Q<X,Y>`` modulo ``Y^2`` and all words of the given length."""
    B = WordQuotient(QQ, ("X", "Y"), [(1, 1)])
    return B.truncation(length)


def random_hypothesis_instance(A, derivs, rng, d: int, tries: int = 10):
    """Random ``(P, u)`` with ``u, ..., u^d`` in ``Ker P(D)`` and ``deg P = d``.

    ``u`` is drawn first; the coefficients of ``P`` are then a random point of
    the solution space of the linear conditions ``P(D) u^m = 0``.
    """
    n = len(derivs)
    alphas = [a for a in _exponents(n, d)]
    top = [i for i, a in enumerate(alphas) if sum(a) == d]
    dim = A.dim
    for _ in range(tries):
        u = A.random_element(rng)
        if rng.random() < 0.6:
            u = u - u.algebra.scalar(_unit_coord(u))
        # D^alpha(u^m) for every alpha, m
        cols = []
        for alpha in alphas:
            mono = OperatorPolynomial(A, n, {alpha: A.one()})
            phi = op_from_polynomial(mono, derivs)
            cols.append([phi(u ** m) for m in range(1, d + 1)])
        # unknown coefficient a_alpha enters through a_alpha * v
        rows = []
        for m in range(d):
            blocks = [A.right_mult_matrix(cols[k][m]) for k in range(len(alphas))]
            for r in range(dim):
                rows.append([x for B in blocks for x in B.rows[r]])
        K = kernel_basis(Matrix(A.field, rows, dim * len(alphas)))
        if not K.dim:
            continue
        vec = [A.field.zero] * (dim * len(alphas))
        for b in K.basis:
            c = A.field(rng.randint(-2, 2))
            vec = [x + c * y for x, y in zip(vec, b)]
        coeffs = {alphas[k]: A.from_coords(vec[k * dim:(k + 1) * dim]) for k in range(len(alphas))}
        coeffs = {a: c for a, c in coeffs.items() if c}
        if any(alphas[i] in coeffs for i in top):
            return OperatorPolynomial(A, n, coeffs), u
    return None


def _unit_coord(u):
    A = u.algebra
    return A.coords(u)[A.index_of(A.unit_key)]


def _exponents(n: int, d: int):
    if n == 0:
        yield ()
        return
    for k in range(d + 1):
        for rest in _exponents(n - 1, d - k):
            yield (k,) + rest
