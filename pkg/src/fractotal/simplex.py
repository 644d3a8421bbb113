"""Exact tableau simplex over the rationals (Dantzig pricing with a Bland fallback)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

try:  # GMP rationals are exact and several times faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

LE, GE, EQ = "<=", ">=", "=="
_FLIP = {LE: GE, GE: LE, EQ: EQ}


class LPError(ArithmeticError):
    pass


class LPInfeasible(LPError):
    pass


class LPUnbounded(LPError):
    pass


@dataclass(frozen=True)
class LPSolution:
    """Optimal primal ``x``, row duals ``y`` and the common objective value."""

    value: Fraction
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    pivots: int


_STALL_LIMIT = 50


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.T = rows  # each row: coefficients + [rhs]
        for r, b in zip(self.T, rhs):
            r.append(b)
        self.basis = basis
        self.pivots = 0

    def reduced_costs(self, cost: Sequence) -> list:
        z = list(cost) + [_Q(0)]
        for i, row in enumerate(self.T):
            cb = cost[self.basis[i]]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        z[j] -= cb * v
        return z

    def pivot(self, r: int, s: int, z: list[Fraction]) -> None:
        row = self.T[r]
        piv = row[s]
        if piv != 1:
            row = [v / piv for v in row]
            self.T[r] = row
        nz = [j for j, v in enumerate(row) if v]
        for other in self.T + [z]:
            if other is row:
                continue
            f = other[s]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
        self.basis[r] = s
        self.pivots += 1

    def run(self, z: list[Fraction], allowed: Sequence[bool]) -> None:
        """Dantzig pricing; after a run of degenerate pivots switch to Bland's
        rule (lowest index entering and leaving), which cannot cycle."""
        stall = 0
        while True:
            cand = [j for j in range(len(z) - 1) if allowed[j] and z[j] < 0]
            if not cand:
                return
            bland = stall >= _STALL_LIMIT
            s = cand[0] if bland else min(cand, key=lambda j: z[j])
            best = None
            for i, row in enumerate(self.T):
                a = row[s]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise LPUnbounded("objective is unbounded")
            stall = stall + 1 if best[0][0] == 0 else 0
            self.pivot(best[1], s, z)


def simplex_solve(
    rows: Sequence[Sequence],
    senses: Sequence[str],
    rhs: Sequence,
    objective: Sequence,
    maximize: bool = False,
) -> LPSolution:
    """Optimize ``objective · x`` subject to ``rows[i] · x (sense) rhs[i]``, ``x >= 0``.

    Raises :class:`LPInfeasible` or :class:`LPUnbounded`.  The returned duals
    satisfy strong duality exactly; :func:`check_solution` re-verifies that.
    """
    m, n = len(rows), len(objective)
    if len(senses) != m or len(rhs) != m:
        raise ValueError("rows, senses and rhs must have equal length")
    A = [[_Q(a) for a in row] for row in rows]
    if any(len(r) != n for r in A):
        raise ValueError("every row needs one coefficient per variable")
    b = [_Q(x) for x in rhs]
    sense = list(senses)
    flipped = [False] * m
    for i in range(m):
        if sense[i] not in _FLIP:
            raise ValueError(f"unknown sense {sense[i]!r}")
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]
            sense[i] = _FLIP[sense[i]]
            flipped[i] = True
    c = [_Q(x) for x in objective]
    if maximize:
        c = [-x for x in c]

    ncols = n
    extra: list[tuple[int, int, int]] = []  # (row, column, coefficient)
    unit = [0] * m
    for i in range(m):
        if sense[i] != EQ:
            coef = 1 if sense[i] == LE else -1
            extra.append((i, ncols, coef))
            if coef == 1:
                unit[i] = ncols
            ncols += 1
    artificial = []
    for i in range(m):
        if sense[i] != LE:
            extra.append((i, ncols, 1))
            unit[i] = ncols
            artificial.append(ncols)
            ncols += 1
    is_art = [False] * ncols
    for j in artificial:
        is_art[j] = True

    rows_full = [A[i] + [_Q(0)] * (ncols - n) for i in range(m)]
    for i, j, coef in extra:
        rows_full[i][j] = _Q(coef)
    tab = _Tableau(rows_full, b, list(unit))

    if artificial:
        cost1 = [_Q(1) if is_art[j] else _Q(0) for j in range(ncols)]
        z1 = tab.reduced_costs(cost1)
        tab.run(z1, [True] * ncols)
        if -z1[-1] > 0:
            raise LPInfeasible("constraints are infeasible")
        for i in range(len(tab.T) - 1, -1, -1):
            if not is_art[tab.basis[i]]:
                continue
            s = next((j for j in range(ncols) if not is_art[j] and tab.T[i][j]), None)
            if s is not None:
                tab.pivot(i, s, z1)
            else:
                # redundant row: drop it
                del tab.T[i]
                del tab.basis[i]

    cost2 = c + [_Q(0)] * (ncols - n)
    z2 = tab.reduced_costs(cost2)
    tab.run(z2, [not a for a in is_art])

    x = [_Q(0)] * n
    for i, j in enumerate(tab.basis):
        if j < n:
            x[j] = tab.T[i][-1]
    y = []
    for k in range(m):
        yk = sum((cost2[tab.basis[i]] * tab.T[i][unit[k]] for i in range(len(tab.T))), _Q(0))
        y.append(-yk if flipped[k] else yk)
    if maximize:
        y = [-v for v in y]
    x = [_frac(v) for v in x]
    value = sum((Fraction(ci) * xi for ci, xi in zip(objective, x)), Fraction(0))
    return LPSolution(value, tuple(x), tuple(_frac(v) for v in y), tab.pivots)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def check_solution(
    sol: LPSolution,
    rows: Sequence[Sequence],
    senses: Sequence[str],
    rhs: Sequence,
    objective: Sequence,
    maximize: bool = False,
) -> list[str]:
    """Exact primal feasibility, dual feasibility and strong duality; returns problems."""
    problems = []
    x, y = sol.x, sol.y
    if any(v < 0 for v in x):
        problems.append("negative primal variable")
    for i, (row, s, b) in enumerate(zip(rows, senses, rhs)):
        lhs = sum((Fraction(a) * v for a, v in zip(row, x)), Fraction(0))
        if (s == LE and lhs > b) or (s == GE and lhs < b) or (s == EQ and lhs != b):
            problems.append(f"row {i} violated: {lhs} {s} {b}")
        # sign convention: for min, >= rows carry y >= 0; for max, <= rows do
        want_pos = (s == GE) != maximize
        if s != EQ and ((want_pos and y[i] < 0) or (not want_pos and y[i] > 0)):
            problems.append(f"dual {i} has the wrong sign")
    for j, cj in enumerate(objective):
        col = sum((Fraction(row[j]) * y[i] for i, row in enumerate(rows)), Fraction(0))
        if (not maximize and col > cj) or (maximize and col < cj):
            problems.append(f"dual constraint for column {j} violated")
    primal = sum((Fraction(c) * v for c, v in zip(objective, x)), Fraction(0))
    dual = sum((Fraction(b) * v for b, v in zip(rhs, y)), Fraction(0))
    if primal != dual or primal != sol.value:
        problems.append(f"duality gap: primal {primal}, dual {dual}")
    return problems


class CoveringLP:
    """``min c·x`` subject to ``A x >= b`` with ``b >= 0``, grown column by column.

    Every row owns a unit column of cost ``unit_cost``, so the basis of unit
    columns is feasible from the start and no phase 1 is needed.  Added
    columns re-enter the current optimal tableau (warm start).
    """

    def __init__(self, rhs: Sequence, unit_cost=1):
        m = len(rhs)
        b = [_Q(x) for x in rhs]
        if any(x < 0 for x in b):
            raise ValueError("right-hand sides must be nonnegative")
        self.m = m
        self.unit_cost = _Q(unit_cost)
        rows = []
        for i in range(m):
            row = [_Q(0)] * (2 * m)
            row[i] = _Q(1)
            row[m + i] = _Q(-1)  # surplus
            rows.append(row)
        self.cost = [self.unit_cost] * m + [_Q(0)] * m
        self.tab = _Tableau(rows, b, list(range(m)))
        self.z = self.tab.reduced_costs(self.cost)

    @property
    def pivots(self) -> int:
        return self.tab.pivots

    def duals(self) -> list:
        return [self.unit_cost - self.z[i] for i in range(self.m)]

    def add_column(self, coeffs: Sequence, cost) -> int:
        """Append a column (dense coefficients per row); returns its index."""
        support = [(k, _Q(a)) for k, a in enumerate(coeffs) if a]
        T = self.tab.T
        for row in T:
            row.insert(len(row) - 1, sum((row[k] * a for k, a in support), _Q(0)))
        y = self.duals()
        c = _Q(cost)
        self.cost.append(c)
        self.z.insert(len(self.z) - 1, c - sum((y[k] * a for k, a in support), _Q(0)))
        return len(self.cost) - 2 * self.m - 1

    def solve(self) -> LPSolution:
        """Optimize over the current columns.  ``x`` lists the added columns only."""
        self.tab.run(self.z, [True] * len(self.cost))
        m = self.m
        full = [_Q(0)] * len(self.cost)
        for i, j in enumerate(self.tab.basis):
            full[j] = self.tab.T[i][-1]
        value = _frac(sum((c * v for c, v in zip(self.cost, full)), _Q(0)))
        x = tuple(_frac(v) for v in full[2 * m:])
        return LPSolution(value, x, tuple(_frac(v) for v in self.duals()), self.tab.pivots)

    def unit_values(self) -> list[Fraction]:
        vals = [Fraction(0)] * self.m
        for i, j in enumerate(self.tab.basis):
            if j < self.m:
                vals[j] = _frac(self.tab.T[i][-1])
        return vals
