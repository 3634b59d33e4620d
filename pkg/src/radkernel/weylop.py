"""Differential operators ``sum a_w D_w`` with coefficients on the left, and the
commutator calculus ``ad_u`` built on them."""

from __future__ import annotations

import itertools
from math import comb, factorial
from typing import Sequence

from .algebra import Algebra, Element
from .derivation import Derivation, commute_check
from .errors import AlgebraMismatch, NoncommutativeAlgebra, NoncommutativeEvaluation, NonCommutingTuple
from .exactmath import Matrix
from .report import HYPOTHESIS_NOT_MET, Report


def _check_tuple(algebra: Algebra, derivs: Sequence[Derivation]):
    for D in derivs:
        if D.algebra != algebra:
            raise AlgebraMismatch(f"{D.name} lives on {D.algebra}, not {algebra}")


class DiffOperator:
    """Formal sum of ``coefficient * D_{i1} ... D_{ik}`` (rightmost derivation acts first).

    With ``canonical`` set (commutative algebra, pairwise commuting tuple) words
    are kept sorted, so each term is a multi-index ``D^alpha``.
    """

    __slots__ = ("algebra", "derivs", "terms", "canonical")

    def __init__(self, algebra: Algebra, derivs: Sequence[Derivation], terms: dict | None = None,
                 canonical: bool | None = None):
        self.algebra = algebra
        self.derivs = tuple(derivs)
        _check_tuple(algebra, self.derivs)
        if canonical is None:
            canonical = algebra.commutative and all(
                commute_check(a, b) for a, b in itertools.combinations(self.derivs, 2))
        elif canonical:
            if not algebra.commutative:
                raise NoncommutativeAlgebra("canonical words need a commutative algebra")
            for a, b in itertools.combinations(self.derivs, 2):
                if not commute_check(a, b):
                    raise NonCommutingTuple(f"{a.name} and {b.name} do not commute")
        self.canonical = canonical
        self.terms: dict = {}
        for w, c in (terms or {}).items():
            self._add_term(tuple(w), c)

    def _add_term(self, word: tuple, c: Element):
        if self.canonical:
            word = tuple(sorted(word))
        v = self.terms.get(word)
        v = c if v is None else v + c
        if v:
            self.terms[word] = v
        else:
            self.terms.pop(word, None)

    def _new(self, terms=None) -> "DiffOperator":
        op = DiffOperator.__new__(DiffOperator)
        op.algebra, op.derivs, op.canonical = self.algebra, self.derivs, self.canonical
        op.terms = {}
        for w, c in (terms or {}).items():
            op._add_term(w, c)
        return op

    # ---- constructors ---------------------------------------------------------------
    @classmethod
    def identity(cls, algebra, derivs, canonical=None):
        return cls(algebra, derivs, {(): algebra.one()}, canonical)

    @classmethod
    def mult(cls, algebra, derivs, a: Element, canonical=None):
        """The left multiplication ``l_a``."""
        return cls(algebra, derivs, {(): algebra(a)}, canonical)

    def left(self, a: Element) -> "DiffOperator":
        return self._new({(): self.algebra(a)})

    def atom(self, i: int) -> "DiffOperator":
        return self._new({(i,): self.algebra.one()})

    # ---- structure --------------------------------------------------------------------
    @property
    def order(self) -> int:
        """Longest derivation word present (``-1`` for the zero operator)."""
        return max((len(w) for w in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "DiffOperator"):
        if other.algebra != self.algebra or other.derivs != self.derivs:
            raise AlgebraMismatch("operators over different algebras or derivation tuples")

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        self._same(other)
        out = self._new(self.terms)
        for w, c in other.terms.items():
            out._add_term(w, c)
        return out

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOperator":
        return self._new({w: v.scale(c) for w, v in self.terms.items()})

    def _word_through(self, word: tuple, c: Element) -> list[tuple[Element, tuple]]:
        # D_{w1}...D_{wk} l_c = sum over subsets S: l_{D_S c} D_{complement}
        out = []
        k = len(word)
        for mask in range(1 << k):
            img = c
            for pos in range(k - 1, -1, -1):
                if mask >> pos & 1:
                    img = self.derivs[word[pos]](img)
                    if img.is_zero():
                        break
            if img.is_zero():
                continue
            rest = tuple(word[p] for p in range(k) if not mask >> p & 1)
            out.append((img, rest))
        return out

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """``self o other``."""
        self._same(other)
        out = self._new()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                for img, rest in self._word_through(w1, c2):
                    out._add_term(rest + w2, c1 * img)
        return out

    __matmul__ = compose

    def __pow__(self, k: int) -> "DiffOperator":
        out = self._new({(): self.algebra.one()})
        for _ in range(k):
            out = out.compose(self)
        return out

    # ---- action -------------------------------------------------------------------------
    def apply_word(self, word: tuple, a: Element) -> Element:
        for i in reversed(word):
            if a.is_zero():
                break
            a = self.derivs[i](a)
        return a

    def apply(self, a: Element) -> Element:
        a = self.algebra(a)
        out = self.algebra.zero()
        cache: dict = {}
        for w, c in self.terms.items():
            # reuse shared suffixes of derivation words
            img = cache.get(w)
            if img is None:
                img = self.apply_word(w, a)
                cache[w] = img
            out = out + c * img
        return out

    __call__ = apply

    def matrix(self) -> Matrix:
        return self.algebra.linear_map_matrix(self.apply)

    def __repr__(self):
        names = [D.name for D in self.derivs]
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            word = "".join(names[i] if len(names[i]) == 1 else f"[{names[i]}]" for i in w)
            parts.append(f"({c})" + (f"*{word}" if word else ""))
        return "DiffOperator(" + (" + ".join(parts) or "0") + ")"


class OperatorPolynomial:
    """``P(xi) = sum_alpha c_alpha xi^alpha`` with coefficients in the algebra."""

    def __init__(self, algebra: Algebra, arity: int, coeffs: dict | None = None):
        self.algebra = algebra
        self.arity = arity
        self.coeffs: dict = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != arity or any(e < 0 for e in alpha):
                raise ValueError(f"exponent {alpha} does not match arity {arity}")
            c = algebra(c)
            v = self.coeffs.get(alpha)
            v = c if v is None else v + c
            if v:
                self.coeffs[alpha] = v
            else:
                self.coeffs.pop(alpha, None)

    @classmethod
    def univariate(cls, algebra, coeffs: Sequence) -> "OperatorPolynomial":
        """From ``[c_0, c_1, ...]`` meaning ``c_0 + c_1 xi + ...``."""
        return cls(algebra, 1, {(k,): c for k, c in enumerate(coeffs)})

    @classmethod
    def from_scalar_poly(cls, algebra, poly) -> "OperatorPolynomial":
        return cls.univariate(algebra, list(poly.coeffs))

    @classmethod
    def from_json(cls, algebra, obj: dict) -> "OperatorPolynomial":
        n = int(obj["arity"])
        coeffs: dict = {}
        for t in obj["terms"]:
            alpha = tuple(t["xi_exponents"])
            coeffs[alpha] = algebra(coeffs.get(alpha, algebra.zero())) + algebra(str(t["coeff"]))
        return cls(algebra, n, coeffs)

    def to_json(self) -> dict:
        return {"arity": self.arity,
                "terms": [{"xi_exponents": list(a), "coeff": str(c)} for a, c in sorted(self.coeffs.items())]}

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=-1)

    def homogeneous(self, k: int) -> "OperatorPolynomial":
        return OperatorPolynomial(self.algebra, self.arity,
                                  {a: c for a, c in self.coeffs.items() if sum(a) == k})

    def leading_form(self) -> "OperatorPolynomial":
        """``P_d`` for ``d = deg P``."""
        return self.homogeneous(self.degree)

    @property
    def a0(self) -> Element:
        return self.coeffs.get((0,) * self.arity, self.algebra.zero())

    def partial(self, i: int) -> "OperatorPolynomial":
        out = {}
        for a, c in self.coeffs.items():
            if a[i]:
                b = tuple(e - (k == i) for k, e in enumerate(a))
                out[b] = c.scale(a[i])
        return OperatorPolynomial(self.algebra, self.arity, out)

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for a, c in other.coeffs.items():
            coeffs[a] = coeffs.get(a, self.algebra.zero()) + c
        return OperatorPolynomial(self.algebra, self.arity, coeffs)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "OperatorPolynomial":
        return OperatorPolynomial(self.algebra, self.arity, {a: v.scale(c) for a, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, values: Sequence[Element]) -> Element:
        """``P(v_1, ..., v_n)`` with the coefficients in front (commutative algebras only)."""
        A = self.algebra
        if not A.commutative:
            raise NoncommutativeEvaluation("polynomial evaluation at elements needs commutativity")
        values = [A(v) for v in values]
        out = A.zero()
        for a, c in self.coeffs.items():
            term = c
            for v, e in zip(values, a):
                if e:
                    term = term * v ** e
            out = out + term
        return out

    def scalar_coefficients(self):
        """Coefficient scalars when every coefficient is a multiple of the unit, else ``None``."""
        if not all(c.is_scalar() for c in self.coeffs.values()):
            return None
        return {a: c.scalar_value() for a, c in self.coeffs.items()}

    def __repr__(self):
        parts = []
        for a, c in sorted(self.coeffs.items()):
            mono = "*".join(f"xi{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return "P(" + (" + ".join(parts) or "0") + ")"


def op_from_polynomial(P: OperatorPolynomial, derivs: Sequence[Derivation],
                       canonical: bool | None = None) -> DiffOperator:
    """``P(D)`` with every coefficient written on the left; ``xi^alpha`` becomes
    ``D_1^alpha_1 ... D_n^alpha_n``."""
    if len(derivs) != P.arity:
        raise ValueError(f"polynomial arity {P.arity} but {len(derivs)} derivations")
    terms = {}
    for a, c in P.coeffs.items():
        word = tuple(i for i, e in enumerate(a) for _ in range(e))
        terms[word] = c
    return DiffOperator(P.algebra, derivs, terms, canonical)


def gradient(u: Element, derivs: Sequence[Derivation]) -> tuple:
    return tuple(D(u) for D in derivs)


def eval_P_at_gradient(P: OperatorPolynomial, grad: Sequence[Element]) -> Element:
    return P.evaluate(grad)


def ad(u: Element, phi: DiffOperator) -> DiffOperator:
    """``[u, phi] = l_u phi - phi l_u``."""
    lu = phi.left(u)
    return lu.compose(phi) - phi.compose(lu)


def ad_power(u: Element, phi: DiffOperator, k: int) -> DiffOperator:
    for _ in range(k):
        phi = ad(u, phi)
    return phi


def probe_elements(A: Algebra, rng=None, samples: int = 0, degree_budget: int = 12) -> tuple[list, str]:
    """Elements on which two linear maps are compared and a note on what that proves.

    Finite algebras: the whole basis (exact).  Otherwise all standard monomials
    up to ``degree_budget`` plus ``samples`` random elements.
    """
    if A.is_finite:
        return A.basis_elements(), "exact on the full basis"
    monos = A.standard_monomials(degree_budget)
    probes = [A.monomial(k) for k in monos]
    if rng is not None:
        probes += [A.random_element(rng, max_degree=min(degree_budget, 4)) for _ in range(samples)]
    return probes, f"verified to degree {degree_budget}"


def maps_agree(f, g, probes) -> Element | None:
    """First probe where ``f`` and ``g`` differ, or ``None``."""
    for a in probes:
        if f(a) != g(a):
            return a
    return None


def ad_expansion_rhs(u: Element, phi: DiffOperator, k: int, a: Element) -> Element:
    """``sum_i (-1)^i C(k,i) u^(k-i) phi(u^i a)``, evaluated pointwise."""
    out = a.algebra.zero()
    for i in range(k + 1):
        out = out + (u ** (k - i) * phi(u ** i * a)).scale((-1) ** i * comb(k, i))
    return out


def ad_expansion_check(u: Element, phi: DiffOperator, k: int, rng=None, samples: int = 0,
                       degree_budget: int = 12) -> Report:
    rep = Report()
    lhs = ad_power(u, phi, k)
    probes, note = probe_elements(u.algebra, rng, samples, degree_budget)
    bad = maps_agree(lhs.apply, lambda a: ad_expansion_rhs(u, phi, k, a), probes)
    rep.expect(f"ad-power expansion k={k}", bad is None, f"{note}; u = {u}",
               None if bad is None else {"element": str(bad)})
    return rep


def commutator_check(u: Element, P: OperatorPolynomial, derivs: Sequence[Derivation]) -> Report:
    """First-order commutator formula with a remainder of order <= d - 2, and
    ``(ad_{-u})^d P(D) = d! * P_d(grad u)`` as multiplication operators."""
    A = u.algebra
    if not A.commutative:
        raise NoncommutativeAlgebra("needs a commutative algebra")
    rep = Report()
    d = P.degree
    phi = op_from_polynomial(P, derivs, canonical=True)
    grad = gradient(u, derivs)
    first = ad(-u, phi)
    approx = phi._new()
    for i in range(len(derivs)):
        approx = approx + phi.left(grad[i]).compose(op_from_polynomial(P.partial(i), derivs, canonical=True))
    Q = first - approx
    bound = d - 2
    rep.expect("commutator remainder order", Q.is_zero() or Q.order <= bound,
               f"order(Q) = {Q.order}, bound d - 2 = {bound}", {"Q": repr(Q)})
    if d < 0:
        return rep
    top = ad_power(-u, phi, d)
    target = P.leading_form().evaluate(grad).scale(factorial(d))
    probes, note = probe_elements(A)
    bad = maps_agree(top.apply, lambda a: target * a, probes)
    rep.expect("top commutator equals d! P_d(grad u)", bad is None,
               f"d = {d}; {note}", None if bad is None else {"element": str(bad)})
    return rep


def power_kernel_check(P: OperatorPolynomial, derivs: Sequence[Derivation], u: Element) -> Report:
    """Power-kernel identities: ``a0 u^d = (-1)^d d! P_d(grad u)`` and ``a0 u^(d+1) = 0``."""
    A = u.algebra
    if not A.commutative:
        raise NoncommutativeAlgebra("needs a commutative algebra")
    rep = Report()
    d = P.degree
    if d < 1:
        rep.add("hypothesis", "not-applicable", "deg P must be at least 1")
        return rep
    phi = op_from_polynomial(P, derivs)
    for m in range(1, d + 1):
        if phi(u ** m):
            rep.add("hypothesis", HYPOTHESIS_NOT_MET, f"u^{m} is not in Ker P(D)", {"m": m})
            return rep
    a0 = P.a0
    lhs = a0 * u ** d
    sign = (-1) ** d
    via_gradient = P.leading_form().evaluate(gradient(u, derivs)).scale(sign * factorial(d))
    # operator route: (ad_{-u})^d P(D) applied to 1
    via_operator = ad_power(-u, op_from_polynomial(P, derivs), d)(A.one()).scale(sign)
    rep.expect("a0 u^d against the gradient form", lhs == via_gradient,
               f"d = {d}", {"lhs": str(lhs), "rhs": str(via_gradient)})
    rep.expect("gradient form against the operator expansion", via_gradient == via_operator,
               f"d = {d}", {"gradient": str(via_gradient), "operator": str(via_operator)})
    if phi(u ** (d + 1)):
        rep.add("a0 u^(d+1) = 0", "not-applicable", f"u^{d + 1} is not in Ker P(D)")
    else:
        top = a0 * u ** (d + 1)
        rep.expect("a0 u^(d+1) = 0", top.is_zero(), f"d = {d}", {"a0*u^(d+1)": str(top)})
    return rep
