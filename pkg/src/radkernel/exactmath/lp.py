"""Exact rational linear programming (two-phase simplex, Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import DimensionMismatch, FieldUnsupported


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = tab[r][c]
    row = [x / piv for x in tab[r]]
    tab[r] = row
    nz = [k for k, x in enumerate(row) if x]
    for i in range(len(tab)):
        if i != r and tab[i][c]:
            f = tab[i][c]
            ti = tab[i]
            for k in nz:
                ti[k] -= f * row[k]
    basis[r] = c


def _run(tab, basis, obj_row: int, allowed: int) -> None:
    # maximize: objective row holds reduced costs as (c_B B^-1 A - c); enter on negative
    m = obj_row
    while True:
        enter = next((j for j in range(allowed) if tab[m][j] < 0), None)
        if enter is None:
            return
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise ArithmeticError("unbounded linear program")
        _pivot(tab, basis, best[1], enter)


def simplex_max(a_eq: Sequence[Sequence], b_eq: Sequence, c: Sequence):
    """Maximize ``c.x`` subject to ``a_eq x = b_eq``, ``x >= 0``.

    Returns ``(optimum, x)`` with exact fractions, or ``None`` if infeasible.
    """
    m = len(a_eq)
    n = len(c)
    rows = [[Fraction(x) for x in r] for r in a_eq]
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            rows[i] = [-x for x in rows[i]]
            b[i] = -b[i]
    # columns: n originals, m artificials, rhs
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # phase one: maximize -sum(artificials)
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for k in range(n):
            obj[k] -= tab[i][k]
        obj[-1] -= tab[i][-1]
    tab.append(obj)
    _run(tab, basis, m, n + m)
    if tab[m][-1] != 0:
        return None
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            j = next((k for k in range(n) if tab[i][k]), None)
            if j is not None:
                _pivot(tab, basis, i, j)
    keep = [i for i in range(m) if basis[i] < n]
    tab = [tab[i][:n] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    cc = [Fraction(x) for x in c]
    obj = [-x for x in cc] + [Fraction(0)]
    for i, bi in enumerate(basis):
        f = cc[bi]
        if f:
            obj = [o + f * t for o, t in zip(obj, tab[i])]
    tab.append(obj)
    _run(tab, basis, len(basis), n)
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = tab[i][-1]
    return tab[-1][-1], tuple(x)


def _check_rational(values) -> None:
    for v in values:
        if not isinstance(v, (int, Fraction)) or isinstance(v, bool):
            raise FieldUnsupported(f"rational coordinates required, got {v!r}")


def lp_feasible_max(points: Sequence[Sequence], target: Sequence):
    """Exact ``max sum(t)`` over ``t >= 0``, ``sum t_i points_i = target``, ``sum t <= 1``.

    Returns ``(optimum, t)`` or ``None`` when no such ``t`` exists.
    """
    n = len(target)
    for p in points:
        if len(p) != n:
            raise DimensionMismatch("points and target differ in dimension")
        _check_rational(p)
    _check_rational(target)
    k = len(points)
    # variables: t_1..t_k, slack s with sum(t) + s = 1
    a_eq = [[points[i][row] for i in range(k)] + [0] for row in range(n)]
    a_eq.append([1] * k + [1])
    b_eq = list(target) + [1]
    res = simplex_max(a_eq, b_eq, [1] * k + [0])
    if res is None:
        return None
    opt, x = res
    return opt, x[:k]
