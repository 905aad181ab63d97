"""Exact rational linear algebra: square solves and a small LP."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _integer_rows(a: Matrix, b: Sequence[Fraction]) -> list[list[int]]:
    rows = []
    for row, rhs in zip(a, b):
        entries = [Fraction(v) for v in row] + [Fraction(rhs)]
        scale = math.lcm(*(e.denominator for e in entries))
        rows.append([int(e * scale) for e in entries])
    return rows


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve the square system ``a x = b``; ``None`` if ``a`` is singular.

    Rows are scaled to integers and reduced by Bareiss fraction-free
    elimination, so intermediate entries stay integral and exact.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve expects a square system")
    m = _integer_rows(a, b)
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return None
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n]) - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / m[i][i]
    return x


def affine_solve(a: Matrix, b: Sequence[Fraction]) -> tuple[list[Fraction], int] | None:
    """Solve a possibly non-square system ``a x = b`` by exact row reduction.

    Returns ``None`` if inconsistent, otherwise a particular solution (free
    variables set to zero) together with the rank of ``a``.
    """
    n = len(a[0]) if a else 0
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][col]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [v - f * p for v, p in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = m[i][-1]
    return x, r


class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status: str, x: list[Fraction] | None = None, value: Fraction | None = None):
        self.status = status
        self.x = x
        self.value = value

    def __repr__(self) -> str:
        return f"LPResult({self.status!r}, x={self.x}, value={self.value})"


def linprog_max(
    c: Sequence,
    a_ub: Matrix = (),
    b_ub: Sequence = (),
    a_eq: Matrix = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c x`` subject to ``a_ub x <= b_ub``, ``a_eq x = b_eq``, ``x >= 0``.

    Two-phase tableau simplex in exact arithmetic with Bland's rule, which
    rules out cycling. Meant for the handful of variables a support check
    needs, not for large problems.
    """
    n = len(c)
    n_slack = len(a_ub)
    zero, one = Fraction(0), Fraction(1)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for i, (row, bound) in enumerate(zip(a_ub, b_ub)):
        slack = [zero] * n_slack
        slack[i] = one
        rows.append([Fraction(v) for v in row] + slack)
        rhs.append(Fraction(bound))
    for row, bound in zip(a_eq, b_eq):
        rows.append([Fraction(v) for v in row] + [zero] * n_slack)
        rhs.append(Fraction(bound))

    width = n + n_slack
    basis: list[int] = []
    needs_artificial = []
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
        if i < n_slack and rows[i][n + i] == 1:
            basis.append(n + i)
        else:
            basis.append(-1)
            needs_artificial.append(i)
    n_art = len(needs_artificial)
    tab = []
    for i in range(len(rows)):
        art = [zero] * n_art
        if basis[i] == -1:
            k = needs_artificial.index(i)
            art[k] = one
            basis[i] = width + k
        tab.append(rows[i] + art + [rhs[i]])

    if n_art:
        cost = [zero] * width + [-one] * n_art
        _run(tab, basis, cost)
        if _objective(tab, basis, cost) < 0:
            return LPResult("infeasible")
        # Pivot zero-level artificials out; rows with no other support are redundant.
        for i in range(len(tab) - 1, -1, -1):
            if basis[i] < width:
                continue
            col = next((j for j in range(width) if tab[i][j] != 0), None)
            if col is None:
                del tab[i]
                del basis[i]
            else:
                _pivot(tab, basis, i, col)
        tab = [row[:width] + [row[-1]] for row in tab]

    cost = [Fraction(v) for v in c] + [zero] * n_slack
    if not _run(tab, basis, cost):
        return LPResult("unbounded")
    x = [zero] * width
    for i, j in enumerate(basis):
        x[j] = tab[i][-1]
    return LPResult("optimal", x[:n], _objective(tab, basis, cost))


def _objective(tab, basis, cost) -> Fraction:
    return sum((cost[j] * tab[i][-1] for i, j in enumerate(basis)), Fraction(0))


def _pivot(tab, basis, r: int, col: int) -> None:
    piv = tab[r][col]
    if piv != 1:
        tab[r] = [v / piv for v in tab[r]]
    prow = tab[r]
    for i, row in enumerate(tab):
        if i != r and row[col] != 0:
            f = row[col]
            tab[i] = [v - f * p if p else v for v, p in zip(row, prow)]
    basis[r] = col


def _run(tab, basis, cost) -> bool:
    """Pivot to optimality; False if the objective is unbounded.

    Keeps the reduced-cost row alongside the tableau instead of recomputing
    it per candidate column.
    """
    ncols = len(cost)
    reduced = list(cost) + [Fraction(0)]
    for i, b in enumerate(basis):
        if reduced[b] != 0:
            f = reduced[b]
            reduced = [v - f * p for v, p in zip(reduced, tab[i])]
    while True:
        entering = next((j for j in range(ncols) if reduced[j] > 0), None)
        if entering is None:
            return True
        best = None
        for i, row in enumerate(tab):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], entering)
        f = reduced[entering]
        reduced = [v - f * p for v, p in zip(reduced, tab[best[1]])]
