"""Exact rational two-phase simplex with Bland's anti-cycling rule.

All arithmetic is in fractions.Fraction: the guarantees downstream are
combinatorial equalities and inequalities on integers, so floating point is
disqualified.  Bland's rule (smallest eligible index enters, smallest basic
variable leaves among ratio ties) makes the solver deterministic and immune
to cycling.

The interface is standard form:

    maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0

with all right-hand sides nonnegative, which is the only case the callers
here produce.  Returns a basic optimal solution (a vertex of the feasible
region) or None when infeasible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvariantError

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class LPResult:
    x: list[Fraction]
    objective: Fraction


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], n_total: int):
        self.rows = rows          # each row: n_total coefficients + rhs
        self.basis = basis        # basis[i] = variable index basic in row i
        self.n_total = n_total

    def pivot(self, row: int, col: int) -> None:
        piv = self.rows[row][col]
        if piv == 0:
            raise InvariantError("pivot on zero element")
        inv = ONE / piv
        self.rows[row] = [a * inv for a in self.rows[row]]
        for i, r in enumerate(self.rows):
            if i == row:
                continue
            factor = r[col]
            if factor != 0:
                prow = self.rows[row]
                self.rows[i] = [a - factor * b for a, b in zip(r, prow)]
        self.basis[row] = col

def _objective_value(tab: _Tableau, cost: list[Fraction]) -> Fraction:
    total = ZERO
    for i, var in enumerate(tab.basis):
        if cost[var] != 0:
            total += cost[var] * tab.rows[i][-1]
    return total


def _run_simplex(tab: _Tableau, cost: list[Fraction], allowed: list[bool]) -> None:
    """Minimize cost with Bland's rule; mutates the tableau in place."""
    m = len(tab.rows)
    while True:
        z = [ZERO] * (tab.n_total + 1)
        for j in range(tab.n_total):
            z[j] = -cost[j]
        z[-1] = ZERO
        for i in range(m):
            cb = cost[tab.basis[i]]
            if cb != 0:
                row = tab.rows[i]
                for j in range(tab.n_total + 1):
                    if row[j] != 0:
                        z[j] += cb * row[j]
        basic = set(tab.basis)
        enter = -1
        for j in range(tab.n_total):
            if allowed[j] and j not in basic and z[j] > 0:
                enter = j
                break
        if enter < 0:
            return
        leave = -1
        best_ratio: Fraction | None = None
        for i in range(m):
            a = tab.rows[i][enter]
            if a > 0:
                ratio = tab.rows[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and tab.basis[i] < tab.basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise InvariantError("LP unbounded; impossible for bounded models")
        tab.pivot(leave, enter)


def solve_standard_form(
    n_vars: int,
    objective: Sequence[Fraction],
    ub_rows: Sequence[tuple[Sequence[tuple[int, Fraction]], Fraction]],
    eq_rows: Sequence[tuple[Sequence[tuple[int, Fraction]], Fraction]],
) -> LPResult | None:
    """Maximize objective subject to sparse <= and = rows; None if infeasible.

    Rows are (sparse coefficients, rhs) with rhs >= 0 required.
    """
    n_ub = len(ub_rows)
    n_eq = len(eq_rows)
    m = n_ub + n_eq
    n_slack = n_ub
    n_art = n_eq
    n_total = n_vars + n_slack + n_art

    rows: list[list[Fraction]] = []
    basis: list[int] = []
    for i, (coeffs, rhs) in enumerate(ub_rows):
        if rhs < 0:
            raise ValueError("right-hand sides must be nonnegative")
        row = [ZERO] * (n_total + 1)
        for j, a in coeffs:
            row[j] += a
        row[n_vars + i] = ONE
        row[-1] = rhs
        rows.append(row)
        basis.append(n_vars + i)
    for i, (coeffs, rhs) in enumerate(eq_rows):
        if rhs < 0:
            raise ValueError("right-hand sides must be nonnegative")
        row = [ZERO] * (n_total + 1)
        for j, a in coeffs:
            row[j] += a
        row[n_vars + n_slack + i] = ONE
        row[-1] = rhs
        rows.append(row)
        basis.append(n_vars + n_slack + i)

    tab = _Tableau(rows, basis, n_total)

    if n_art:
        phase1_cost = [ZERO] * n_total
        for j in range(n_vars + n_slack, n_total):
            phase1_cost[j] = ONE
        allowed = [True] * n_total
        _run_simplex(tab, phase1_cost, allowed)
        if _objective_value(tab, phase1_cost) != 0:
            return None
        # drive remaining artificial variables out of the basis
        for i in range(m):
            if tab.basis[i] >= n_vars + n_slack:
                pivot_col = -1
                for j in range(n_vars + n_slack):
                    if tab.rows[i][j] != 0:
                        pivot_col = j
                        break
                if pivot_col >= 0:
                    tab.pivot(i, pivot_col)
        # rows still basic in an artificial variable are redundant (rhs 0)
        keep = [i for i in range(m) if tab.basis[i] < n_vars + n_slack]
        tab.rows = [tab.rows[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    phase2_cost = [ZERO] * n_total
    for j in range(n_vars):
        phase2_cost[j] = -Fraction(objective[j])  # minimize the negation
    allowed = [True] * (n_vars + n_slack) + [False] * n_art
    _run_simplex(tab, phase2_cost, allowed)

    x = [ZERO] * n_vars
    for i, var in enumerate(tab.basis):
        if var < n_vars:
            x[var] = tab.rows[i][-1]
    value = sum((Fraction(objective[j]) * x[j] for j in range(n_vars)), ZERO)
    return LPResult(x=x, objective=value)
