"""Concrete algebra kinds: monomial quotients, structure constants, exponential polynomials."""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from fractions import Fraction

from ..errors import (
    BadUnit,
    DimensionMismatch,
    FieldUnsupported,
    NonAssociativeTable,
    UnknownVariable,
)
from ..exactmath import QQ, Field, Matrix, solve
from .core import Algebra, Element


class NonReducedIdeal(UserWarning):
    """Ideal generators were redundant and have been dropped."""


def _power_str(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


class MonomialQuotient(Algebra):
    """``k[x_1..x_n] / I`` for a monomial ideal ``I`` given by exponent vectors."""

    kind = "commutative"

    def __init__(self, field: Field, names, ideal=()):
        self.field = field
        self.names = tuple(names)
        n = len(self.names)
        gens = []
        for g in ideal:
            g = tuple(int(e) for e in g)
            if len(g) != n or any(e < 0 for e in g):
                raise DimensionMismatch(f"bad exponent vector {g} for {n} variables")
            gens.append(g)
        gens = sorted(set(gens), key=lambda g: (sum(g), g))
        reduced = [g for i, g in enumerate(gens)
                   if not any(_divides(h, g) for h in gens[:i])]
        if len(reduced) != len(ideal):
            warnings.warn("monomial ideal generators were not reduced; normalized",
                          NonReducedIdeal, stacklevel=2)
        self.ideal = tuple(reduced)
        self.unit_key = (0,) * n
        # a pure power x_i^b in the ideal bounds variable i
        self._bounds = [None] * n
        for g in self.ideal:
            support = [i for i, e in enumerate(g) if e]
            if len(support) == 1:
                self._bounds[support[0]] = g[support[0]]

    def _key(self):
        return ("commutative", self.field, self.names, self.ideal)

    def __repr__(self):
        gens = ", ".join(self.format_monomial(g) for g in self.ideal)
        ring = f"{self.field!r}[{', '.join(self.names)}]"
        return f"{ring}/({gens})" if gens else ring

    @property
    def commutative(self):
        return True

    def is_standard(self, key) -> bool:
        return not any(_divides(g, key) for g in self.ideal)

    def _mul_keys(self, k1, k2):
        k = tuple(a + b for a, b in zip(k1, k2))
        return {k: 1} if self.is_standard(k) else {}

    def sort_key(self, key):
        return (sum(key), tuple(-e for e in key))

    def mono_degree(self, key) -> int:
        return sum(key)

    def format_monomial(self, key) -> str:
        return "*".join(_power_str(v, e) for v, e in zip(self.names, key) if e)

    @property
    def dim(self):
        if any(b is None for b in self._bounds):
            return None
        if not hasattr(self, "_dim"):
            self._dim = len(self._basis_keys())
        return self._dim

    def _basis_keys(self):
        ranges = [range(b) for b in self._bounds]
        keys = [k for k in itertools.product(*ranges) if self.is_standard(k)]
        return sorted(keys, key=self.sort_key)

    def standard_monomials(self, max_degree: int) -> list:
        n = len(self.names)
        out = [k for k in itertools.product(range(max_degree + 1), repeat=n)
               if sum(k) <= max_degree and self.is_standard(k)]
        return sorted(out, key=self.sort_key)

    def gen(self, name: str) -> Element:
        try:
            i = self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None
        return self.monomial(tuple(int(j == i) for j in range(len(self.names))))

    def to_json(self):
        return {"field": self.field.to_json(), "kind": "commutative",
                "variables": list(self.names), "ideal": [list(g) for g in self.ideal]}


def _divides(g, k) -> bool:
    return all(a <= b for a, b in zip(g, k))


def _contains_word(word: tuple, gen: tuple) -> bool:
    n = len(gen)
    return any(word[i:i + n] == gen for i in range(len(word) - n + 1))


class WordQuotient(Algebra):
    """Free algebra ``k<X_1..X_n>`` modulo a two-sided ideal spanned by words."""

    kind = "noncommutative"

    def __init__(self, field: Field, names, ideal=()):
        self.field = field
        self.names = tuple(names)
        gens = []
        for g in ideal:
            g = tuple(int(i) for i in g)
            if not g or any(not 0 <= i < len(self.names) for i in g):
                raise DimensionMismatch(f"bad ideal word {g}")
            gens.append(g)
        gens = sorted(set(gens), key=lambda g: (len(g), g))
        reduced = [g for i, g in enumerate(gens)
                   if not any(_contains_word(g, h) for h in gens[:i])]
        if len(reduced) != len(ideal):
            warnings.warn("word ideal generators were not reduced; normalized",
                          NonReducedIdeal, stacklevel=2)
        self.ideal = tuple(reduced)
        self.unit_key = ()
        self._maxlen = max((len(g) for g in self.ideal), default=0)
        self._dim = None
        self._dim_known = False

    def _key(self):
        return ("noncommutative", self.field, self.names, self.ideal)

    def __repr__(self):
        gens = ", ".join(self.format_monomial(g) for g in self.ideal)
        ring = f"{self.field!r}<{', '.join(self.names)}>"
        return f"{ring}/({gens})" if gens else ring

    @property
    def commutative(self):
        # only the one-variable free algebra is commutative
        return len(self.names) <= 1

    def is_standard(self, key) -> bool:
        return not any(_contains_word(key, g) for g in self.ideal)

    def _mul_keys(self, k1, k2):
        w = k1 + k2
        # both factors are standard, so only windows across the junction can match
        cut = len(k1)
        for g in self.ideal:
            n = len(g)
            for s in range(max(0, cut - n + 1), min(cut, len(w) - n + 1)):
                if w[s:s + n] == g:
                    return {}
        return {w: 1}

    def sort_key(self, key):
        return (len(key), key)

    def mono_degree(self, key) -> int:
        return len(key)

    def format_monomial(self, key) -> str:
        parts = []
        for i, run in itertools.groupby(key):
            parts.append(_power_str(self.names[i], len(list(run))))
        return "*".join(parts)

    def _automaton(self):
        """Aho-Corasick states over the ideal words; returns (goto, dead)."""
        goto = [{}]
        dead = [False]
        for g in self.ideal:
            s = 0
            for a in g:
                if a not in goto[s]:
                    goto.append({})
                    dead.append(False)
                    goto[s][a] = len(goto) - 1
                s = goto[s][a]
            dead[s] = True
        fail = [0] * len(goto)
        full = [dict() for _ in goto]
        queue = deque()
        for a in range(len(self.names)):
            t = goto[0].get(a)
            if t is None:
                full[0][a] = 0
            else:
                full[0][a] = t
                queue.append(t)
        while queue:
            s = queue.popleft()
            dead[s] = dead[s] or dead[fail[s]]
            for a in range(len(self.names)):
                t = goto[s].get(a)
                if t is None:
                    full[s][a] = full[fail[s]][a]
                else:
                    fail[t] = full[fail[s]][a]
                    full[s][a] = t
                    queue.append(t)
        return full, dead

    @property
    def dim(self):
        if not self._dim_known:
            self._dim = self._count_standard()
            self._dim_known = True
        return self._dim

    def _count_standard(self):
        if not self.names:
            return 1
        full, dead = self._automaton()
        live = [s for s in range(len(full)) if not dead[s]]
        # finite iff the live part of the automaton reachable from 0 is acyclic
        color = {}
        order = []

        def visit(s):
            stack = [(s, iter(full[s].values()))]
            color[s] = 1
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    color[node] = 2
                    order.append(node)
                    stack.pop()
                    continue
                if dead[nxt]:
                    continue
                c = color.get(nxt, 0)
                if c == 1:
                    return False
                if c == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(full[nxt].values())))
            return True

        if not visit(0):
            return None
        # count paths from 0 (each path is a standard word)
        paths = {s: 0 for s in live}
        paths[0] = 1
        for s in reversed(order):
            for t in full[s].values():
                if not dead[t]:
                    paths[t] += paths[s]
        return sum(paths[s] for s in order)

    def _basis_keys(self):
        out = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                for a in range(len(self.names)):
                    v = w + (a,)
                    if self._mul_keys(w, (a,)):
                        nxt.append(v)
            out.extend(nxt)
            frontier = nxt
        return sorted(out, key=self.sort_key)

    def standard_monomials(self, max_degree: int) -> list:
        out = [()]
        frontier = [()]
        for _ in range(max_degree):
            frontier = [w + (a,) for w in frontier for a in range(len(self.names))
                        if self._mul_keys(w, (a,))]
            out.extend(frontier)
        return out

    def truncation(self, length: int) -> "WordQuotient":
        """Quotient by the extra ideal of all words of length ``length``."""
        extra = [w for w in self.standard_monomials(length) if len(w) == length]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonReducedIdeal)
            return WordQuotient(self.field, self.names, list(self.ideal) + extra)

    def gen(self, name: str) -> Element:
        try:
            i = self.names.index(name)
        except ValueError:
            raise UnknownVariable(name) from None
        return self.monomial((i,))

    def word(self, text: str) -> tuple:
        """Word of variable indices from ``"X*Y"``, ``"X^2*Y"`` or, for one-letter names, ``"XY"``."""
        return parse_word(self.names, text)

    def to_json(self):
        return {"field": self.field.to_json(), "kind": "noncommutative",
                "variables": list(self.names),
                "ideal": ["*".join(self.names[i] for i in g) for g in self.ideal]}


def parse_word(names, text: str) -> tuple:
    text = text.replace(" ", "")
    if "*" in text or "^" in text or text in names:
        out = []
        for piece in text.split("*"):
            base, _, exp = piece.partition("^")
            if base not in names:
                raise UnknownVariable(base)
            out.extend([names.index(base)] * (int(exp) if exp else 1))
        return tuple(out)
    if all(len(n) == 1 for n in names):
        try:
            return tuple(names.index(ch) for ch in text)
        except ValueError:
            raise UnknownVariable(text) from None
    raise UnknownVariable(text)


class StructureConstantAlgebra(Algebra):
    """Finite-dimensional algebra with ``e_i e_j = sum_k table[i][j][k] e_k``."""

    kind = "structure_constants"

    def __init__(self, field: Field, table, unit: int, labels=None):
        self.field = field
        d = len(table)
        self.d = d
        if labels is None:
            labels = [f"e{i}" for i in range(d)]
        self.names = tuple(labels)
        if len(self.names) != d:
            raise DimensionMismatch("label count differs from dimension")
        rows = []
        for i in range(d):
            if len(table[i]) != d:
                raise DimensionMismatch(f"table row {i} has wrong length")
            row = []
            for j in range(d):
                v = table[i][j]
                if len(v) != d:
                    raise DimensionMismatch(f"product e{i}*e{j} has wrong length")
                row.append(tuple(field(c) for c in v))
            rows.append(tuple(row))
        self.table = tuple(rows)
        if not 0 <= unit < d:
            raise BadUnit(f"unit index {unit} out of range")
        self.unit_key = unit
        self._products = [[{k: c for k, c in enumerate(self.table[i][j]) if c}
                           for j in range(d)] for i in range(d)]
        self._check()

    def _check(self):
        d = self.d
        for i in range(d):
            e = {i: self.field.one}
            if self._products[self.unit_key][i] != e or self._products[i][self.unit_key] != e:
                raise BadUnit(f"declared unit e{self.unit_key} fails on e{i}")
        basis = [self.monomial(i) for i in range(d)]
        for i, j, k in itertools.product(range(d), repeat=3):
            a, b, c = basis[i], basis[j], basis[k]
            if (a * b) * c != a * (b * c):
                raise NonAssociativeTable(f"(e{i}e{j})e{k} != e{i}(e{j}e{k})")

    def _key(self):
        return ("structure_constants", self.field, self.table, self.unit_key)

    def __repr__(self):
        return f"StructureConstantAlgebra({self.field!r}, dim={self.d})"

    @property
    def commutative(self):
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.d) for j in range(i))

    def _mul_keys(self, k1, k2):
        return self._products[k1][k2]

    def is_standard(self, key) -> bool:
        return isinstance(key, int) and 0 <= key < self.d

    def format_monomial(self, key) -> str:
        return self.names[key]

    @property
    def dim(self):
        return self.d

    def _basis_keys(self):
        return list(range(self.d))

    def standard_monomials(self, max_degree: int) -> list:
        return self._basis_keys()

    def gen(self, name: str) -> Element:
        try:
            return self.monomial(self.names.index(name))
        except ValueError:
            raise UnknownVariable(name) from None

    def to_json(self):
        return {"field": self.field.to_json(), "kind": "structure_constants",
                "variables": list(self.names),
                "structure": {"dim": self.d, "unit": self.unit_key,
                              "table": [[[self.field.format(c) for c in v] for v in row]
                                        for row in self.table]}}


def structure_constants_from(algebra: Algebra, labels=None) -> StructureConstantAlgebra:
    """Re-express a finite-dimensional algebra through its structure constants."""
    basis = algebra.basis_elements()
    table = [[algebra.coords(a * b) for b in basis] for a in basis]
    unit = algebra.index_of(algebra.unit_key)
    if labels is None:
        labels = [f"b{i}" for i in range(len(basis))]
    return StructureConstantAlgebra(algebra.field, table, unit, labels)


def direct_product(a: StructureConstantAlgebra, b: StructureConstantAlgebra) -> StructureConstantAlgebra:
    """``A x B`` with basis ``(e_i, 0), (0, f_j)`` and unit ``(1, 1)`` placed first."""
    if a.field != b.field:
        raise DimensionMismatch("factors over different fields")
    f = a.field
    da, db = a.d, b.d
    n = da + db
    # basis: unit (1,1), then (e_i,0) for i != unit_a, then (0, f_j) for all j
    others_a = [i for i in range(da) if i != a.unit_key]
    vecs = [[f.zero] * n for _ in range(n)]
    for i in range(da):
        vecs[i][i] = f.one
    for j in range(db):
        vecs[da + j][da + j] = f.one
    # new basis vectors in (A-coords ++ B-coords)
    unit = [f.zero] * n
    unit[a.unit_key] = f.one
    unit[da + b.unit_key] = f.one
    new = [tuple(unit)] + [tuple(vecs[i]) for i in others_a] + [tuple(vecs[da + j]) for j in range(db)]
    change = Matrix.from_columns(f, new, n)

    def prod(u, v):
        ua, ub = u[:da], u[da:]
        va, vb = v[:da], v[da:]
        pa = a.coords(a.from_coords(ua) * a.from_coords(va))
        pb = b.coords(b.from_coords(ub) * b.from_coords(vb))
        return tuple(pa) + tuple(pb)

    table = [[solve(change, prod(u, v)) for v in new] for u in new]
    labels = ["1"] + [f"{a.names[i]}_1" for i in others_a] + [f"{b.names[j]}_2" for j in range(db)]
    return StructureConstantAlgebra(f, table, 0, labels)


def matrix_algebra(field: Field, n: int) -> StructureConstantAlgebra:
    """``M_n(k)`` with basis ``1`` followed by ``E_ij`` for ``(i, j) != (0, 0)``."""
    size = n * n

    def unit_vec(i, j):
        v = [field.zero] * size
        v[i * n + j] = field.one
        return v

    ident = [field.zero] * size
    for i in range(n):
        ident[i * n + i] = field.one
    pairs = [(i, j) for i in range(n) for j in range(n) if (i, j) != (0, 0)]
    new = [tuple(ident)] + [tuple(unit_vec(i, j)) for i, j in pairs]
    change = Matrix.from_columns(field, new, size)

    def mat(v):
        return Matrix(field, [list(v[r * n:(r + 1) * n]) for r in range(n)])

    def flat(m):
        return tuple(c for row in m.rows for c in row)

    table = [[solve(change, flat(mat(u) @ mat(v))) for v in new] for u in new]
    labels = ["I"] + [f"E{i + 1}{j + 1}" for i, j in pairs]
    return StructureConstantAlgebra(field, table, 0, labels)


class ExpPolyAlgebra(Algebra):
    """``span_Q{x^j e^(lam x)}``: exponential polynomials with rational frequencies."""

    kind = "exp_poly"
    names = ("x",)

    def __init__(self, field: Field = QQ):
        if field != QQ:
            raise FieldUnsupported("exponential polynomials need rational scalars")
        self.field = field
        self.unit_key = (Fraction(0), 0)

    def _key(self):
        return ("exp_poly",)

    def __repr__(self):
        return "ExpPoly"

    @property
    def commutative(self):
        return True

    def _mul_keys(self, k1, k2):
        return {(k1[0] + k2[0], k1[1] + k2[1]): 1}

    def is_standard(self, key) -> bool:
        return isinstance(key, tuple) and len(key) == 2 and key[1] >= 0

    def sort_key(self, key):
        return (key[0], key[1])

    def mono_degree(self, key) -> int:
        return key[1]

    def format_monomial(self, key) -> str:
        lam, j = key
        parts = []
        if j:
            parts.append(_power_str("x", j))
        if lam:
            parts.append(f"E({lam})")
        return "*".join(parts)

    @property
    def dim(self):
        return None

    def standard_monomials(self, max_degree: int, freqs=(Fraction(-1), Fraction(0), Fraction(1))) -> list:
        return [(Fraction(lam), j) for lam in freqs for j in range(max_degree + 1)]

    def gen(self, name: str) -> Element:
        if name != "x":
            raise UnknownVariable(name)
        return self.monomial((Fraction(0), 1))

    def exp(self, lam, power: int = 0) -> Element:
        """``x^power e^(lam x)``."""
        return self.monomial((Fraction(lam), power))

    def frequencies(self, e: Element) -> list:
        return sorted({k[0] for k in e.terms})

    def to_json(self):
        return {"field": self.field.to_json(), "kind": "exp_poly"}
