"""Exact rational linear programming (dense tableau simplex, Bland's rule).

All arithmetic is done with :class:`fractions.Fraction`; there is no
tolerance anywhere.  Programs are small (tens of variables, at most a few
hundred constraints), so a dense tableau is adequate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

_ZERO = Fraction(0)


class LpStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class LinProgram:
    """Maximize ``objective @ x`` subject to equalities, ``row @ x >= rhs`` and optional lower bounds.

    A lower bound of ``None`` leaves the variable free.
    """

    num_vars: int
    objective: Sequence = ()
    eq_constraints: list = field(default_factory=list)
    ineq_constraints: list = field(default_factory=list)
    var_lower_bounds: Optional[Sequence] = None

    def __post_init__(self):
        if not self.objective:
            self.objective = [0] * self.num_vars
        for row, _ in list(self.eq_constraints) + list(self.ineq_constraints):
            if len(row) != self.num_vars:
                raise ValueError("constraint row length differs from num_vars")
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length differs from num_vars")
        if self.var_lower_bounds is not None and len(self.var_lower_bounds) != self.num_vars:
            raise ValueError("lower bound list length differs from num_vars")

    def lower_bound(self, j: int) -> Optional[Fraction]:
        if self.var_lower_bounds is None:
            return None
        lb = self.var_lower_bounds[j]
        return None if lb is None else Fraction(lb)

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        for row, rhs in self.eq_constraints:
            if sum((Fraction(a) * v for a, v in zip(row, x)), _ZERO) != rhs:
                return False
        for row, rhs in self.ineq_constraints:
            if sum((Fraction(a) * v for a, v in zip(row, x)), _ZERO) < rhs:
                return False
        for j in range(self.num_vars):
            lb = self.lower_bound(j)
            if lb is not None and x[j] < lb:
                return False
        return True


class _Tableau:
    """Standard-form tableau ``A y = b, y >= 0`` with a feasible basis after phase I."""

    def __init__(self, p: LinProgram):
        self.program = p
        # column map: original var j -> list of (column, sign); plus shift
        self.var_cols: list[list[tuple[int, int]]] = []
        self.shift: list[Fraction] = []
        ncols = 0
        for j in range(p.num_vars):
            lb = p.lower_bound(j)
            if lb is None:
                self.var_cols.append([(ncols, 1), (ncols + 1, -1)])
                self.shift.append(_ZERO)
                ncols += 2
            else:
                self.var_cols.append([(ncols, 1)])
                self.shift.append(lb)
                ncols += 1
        n_struct = ncols
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        slack_of: list[Optional[int]] = []
        n_ineq = len(p.ineq_constraints)
        width = n_struct + n_ineq
        for kind, cons in (("eq", p.eq_constraints), ("ge", p.ineq_constraints)):
            for row, b in cons:
                r = [_ZERO] * width
                b = Fraction(b)
                for j, a in enumerate(row):
                    if a:
                        a = Fraction(a)
                        b -= a * self.shift[j]
                        for col, sgn in self.var_cols[j]:
                            r[col] = a if sgn > 0 else -a
                if kind == "ge":
                    r[ncols] = Fraction(-1)
                    ncols += 1
                rows.append(r)
                rhs.append(b)
        self.n_struct = n_struct
        self.n_real = width
        m = len(rows)
        # artificials: one per row, rhs made non-negative
        for i in range(m):
            if rhs[i] < 0:
                rows[i] = [-v for v in rows[i]]
                rhs[i] = -rhs[i]
            rows[i].extend(Fraction(1) if k == i else _ZERO for k in range(m))
            rows[i].append(rhs[i])
        self.rows = rows
        self.basis = [width + i for i in range(m)]
        self.width = width + m
        self.feasible = self._phase_one()

    def _pivot(self, r: int, c: int) -> None:
        rows = self.rows
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            inv = 1 / piv
            prow = [v * inv if v else v for v in prow]
            rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i != r:
                f = row[c]
                if f:
                    for k in nz:
                        row[k] -= f * prow[k]
        self.basis[r] = c

    def _run(self, cost: list[Fraction], allowed: int) -> bool:
        """Maximize ``cost @ y`` over columns ``< allowed``; False if unbounded."""
        rows = self.rows
        while True:
            # reduced costs d_j = c_j - c_B B^-1 A_j
            cb = [cost[b] if b < len(cost) else _ZERO for b in self.basis]
            enter = -1
            for j in range(allowed):
                if j in self._basic_set:
                    continue
                d = cost[j] if j < len(cost) else _ZERO
                for i, row in enumerate(rows):
                    if cb[i] and row[j]:
                        d -= cb[i] * row[j]
                if d > 0:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for i, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave < 0:
                return False
            self._basic_set.discard(self.basis[leave])
            self._pivot(leave, enter)
            self._basic_set.add(enter)

    def _phase_one(self) -> bool:
        self._basic_set = set(self.basis)
        cost = [_ZERO] * self.n_real + [Fraction(-1)] * (self.width - self.n_real)
        self._run(cost, self.width)
        if any(row[-1] for row, b in zip(self.rows, self.basis) if b >= self.n_real):
            return False
        # drive zero-level artificials out of the basis; drop redundant rows
        keep = []
        for i in range(len(self.rows)):
            b = self.basis[i]
            if b >= self.n_real:
                row = self.rows[i]
                col = next((k for k in range(self.n_real) if row[k]), None)
                if col is None:
                    continue
                self._basic_set.discard(b)
                self._pivot(i, col)
                self._basic_set.add(col)
            keep.append(i)
        self.rows = [self.rows[i][: self.n_real] + [self.rows[i][-1]] for i in keep]
        self.basis = [self.basis[i] for i in keep]
        self._basic_set = set(self.basis)
        self.width = self.n_real
        return True

    def copy(self) -> "_Tableau":
        t = object.__new__(_Tableau)
        t.__dict__.update(self.__dict__)
        t.rows = [row[:] for row in self.rows]
        t.basis = self.basis[:]
        t._basic_set = set(self._basic_set)
        return t

    def point(self) -> tuple[Fraction, ...]:
        y = [_ZERO] * self.n_real
        for row, b in zip(self.rows, self.basis):
            y[b] = row[-1]
        x = []
        for j, cols in enumerate(self.var_cols):
            v = self.shift[j]
            for col, sgn in cols:
                v += y[col] if sgn > 0 else -y[col]
            x.append(v)
        return tuple(x)

    def maximize(self, objective: Sequence) -> LpOutcome:
        cost = [_ZERO] * self.n_real
        const = _ZERO
        for j, c in enumerate(objective):
            if c:
                c = Fraction(c)
                const += c * self.shift[j]
                for col, sgn in self.var_cols[j]:
                    cost[col] = c if sgn > 0 else -c
        if not self._run(cost, self.n_real):
            return LpOutcome(LpStatus.UNBOUNDED)
        x = self.point()
        if not self.program.satisfied_by(x):
            raise ArithmeticError("simplex returned a point violating the constraints")
        value = sum((Fraction(c) * v for c, v in zip(objective, x)), _ZERO)
        return LpOutcome(LpStatus.OPTIMAL, value, x)


class Polyhedron:
    """Feasible region of a :class:`LinProgram`; phase I runs once, objectives are cheap."""

    def __init__(self, p: LinProgram):
        self.program = p
        self._tableau = _Tableau(p)

    @property
    def feasible(self) -> bool:
        return self._tableau.feasible

    def maximize(self, objective: Sequence) -> LpOutcome:
        if not self.feasible:
            return LpOutcome(LpStatus.INFEASIBLE)
        return self._tableau.copy().maximize(objective)

    def minimize(self, c: Sequence) -> LpOutcome:
        out = self.maximize([-Fraction(v) for v in c])
        if out.status is LpStatus.OPTIMAL:
            return LpOutcome(LpStatus.OPTIMAL, -out.value, out.point)
        return out

    def feasible_point(self) -> Optional[tuple[Fraction, ...]]:
        return self._tableau.point() if self.feasible else None


def solve(p: LinProgram) -> LpOutcome:
    return Polyhedron(p).maximize(p.objective)


def min_over_polyhedron(p: LinProgram, c: Sequence) -> LpOutcome:
    """Minimize ``c @ x`` over the constraints of ``p`` (its objective is ignored)."""
    return Polyhedron(p).minimize(c)
