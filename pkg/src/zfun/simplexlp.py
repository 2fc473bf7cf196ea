"""Exact primal simplex for inequality-form linear programs.

Solves   max c.x   subject to   A x <= b,  x >= 0,   with b >= 0 entrywise,
so the all-slack basis is feasible and no phase-one is needed.  Pivoting uses
Bland's rule (smallest eligible column; ratio ties broken by smallest basic
variable), which is deterministic and provably cycle-free.  In exact mode the
tableau holds Fractions and every comparison is exact.
"""

from __future__ import annotations

from typing import Sequence

from .errors import BadParameters, SolverFailure
from .numbers import EXACT, Mode, Num


def solve_inequality_lp(
    c: Sequence[Num],
    rows: Sequence[Sequence[Num]],
    b: Sequence[Num],
    mode: Mode = EXACT,
    max_pivots: int = 100_000,
) -> tuple[Num, list[Num]]:
    """Optimal value and one optimal vertex of ``max c.x : Ax <= b, x >= 0``.

    Requires ``b >= 0``.  Raises :class:`SolverFailure` if the program is
    unbounded or the pivot budget is exhausted (neither can occur for the
    bounded programs built by this package).
    """
    n = len(c)
    m = len(rows)
    eps = mode.pivot_eps
    zero = mode.zero
    for bi in b:
        if bi < -eps:
            raise BadParameters("right-hand side must be nonnegative")
    if any(len(row) != n for row in rows):
        raise BadParameters("constraint rows must match the objective length")

    # tableau: m constraint rows + objective row; columns: n vars, m slacks, rhs
    width = n + m + 1
    tab: list[list[Num]] = []
    for i in range(m):
        row = [mode.convert(v) for v in rows[i]]
        row += [mode.one if j == i else zero for j in range(m)]
        row.append(mode.convert(b[i]))
        tab.append(row)
    obj = [-mode.convert(v) for v in c] + [zero] * m + [zero]
    tab.append(obj)
    basis = list(range(n, n + m))

    for _ in range(max_pivots):
        # Bland: entering column = smallest index with a negative objective entry
        enter = -1
        for j in range(n + m):
            if tab[m][j] < -eps:
                enter = j
                break
        if enter < 0:
            x = [zero] * n
            for i, var in enumerate(basis):
                if var < n:
                    x[var] = tab[i][width - 1]
            return tab[m][width - 1], x
        # ratio test; ties -> smallest basic variable (Bland)
        leave = -1
        best: Num | None = None
        for i in range(m):
            a = tab[i][enter]
            if a > eps:
                ratio = tab[i][width - 1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise SolverFailure("linear program is unbounded")
        pivot = tab[leave][enter]
        tab[leave] = [v / pivot for v in tab[leave]]
        for i in range(m + 1):
            if i == leave:
                continue
            factor = tab[i][enter]
            if factor != 0:
                prow = tab[leave]
                tab[i] = [v - factor * p for v, p in zip(tab[i], prow)]
        basis[leave] = enter
    raise SolverFailure("pivot budget exhausted")
