"""Semi-balancedness of a single set system.

Tests are decided by exact LPs (strict positivity via max-min ``t``) and
exact linear algebra; the coefficient vector, conjugation and the integer
(diagram) form are derived from the unique affine combination of a minimal
system.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from . import ratlin
from .ratlp import LinProgram, Polyhedron, LpStatus, solve
from .setcore import PlayerSet, SetSystem

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotMinimal(ValueError):
    pass


class GroundMismatch(ValueError):
    pass


class SystemClass(str, enum.Enum):
    MIN_BALANCED = "MinBalanced"
    UNION_PROPER = "UnionProper"
    INTERSECTION_NONEMPTY = "IntersectionNonempty"
    FOURTH_TYPE = "FourthType"


def _member_rows(sys: SetSystem) -> list[list[int]]:
    """``rows[i][j]`` is 1 iff player i belongs to the j-th set."""
    return [[s >> i & 1 for s in sys.sets] for i in range(sys.ground.n)]


def _vectors(sys: SetSystem) -> list[list[int]]:
    return [[s >> i & 1 for i in range(sys.ground.n)] for s in sys.sets]


# -- LP based tests ----------------------------------------------------------


def _balanced_lp(sys: SetSystem) -> LinProgram:
    k = len(sys)
    rows = _member_rows(sys)
    eqs = [(row + [0], 1) for row in rows]
    ineqs = [([1 if j == c else 0 for j in range(k)] + [-1], 0) for c in range(k)]
    ineqs.append(([0] * k + [-1], -1))
    return LinProgram(k + 1, [0] * k + [1], eqs, ineqs)


def is_balanced(sys: SetSystem) -> bool:
    """chi_N is a combination of the members with all weights > 0."""
    out = solve(_balanced_lp(sys))
    return out.status is LpStatus.OPTIMAL and out.value > 0


def _semi_lp(sys: SetSystem, t_index: int) -> LinProgram:
    # variables: lambda_S for S != T, then r, then t
    k = len(sys)
    rows = _member_rows(sys)
    others = [c for c in range(k) if c != t_index]
    nv = len(others) + 2
    eqs = []
    for row in rows:
        coeffs = [row[c] for c in others] + [-1, 0]
        eqs.append((coeffs, row[t_index]))
    ineqs = []
    for pos in range(len(others)):
        r = [0] * nv
        r[pos] = 1
        r[-1] = -1
        ineqs.append((r, 0))
    ineqs.append(([0] * (nv - 1) + [-1], -1))
    return LinProgram(nv, [0] * (nv - 1) + [1], eqs, ineqs)


def semi_conic_with_exception(sys: SetSystem, t: int) -> bool:
    """A constant vector arises with ``lambda_T = -1`` and all other weights > 0."""
    out = solve(_semi_lp(sys, sys.sets.index(t)))
    return out.status is LpStatus.OPTIMAL and out.value > 0


def is_semi_balanced(sys: SetSystem) -> bool:
    if is_balanced(sys):
        return True
    return any(semi_conic_with_exception(sys, t) for t in sys.sets)


def is_exceptional(sys: SetSystem, t: int) -> bool:
    """``t`` carries a negative weight in a combination yielding a constant vector, others >= 0."""
    k = len(sys)
    ti = sys.sets.index(t)
    rows = _member_rows(sys)
    # variables: lambda (k), r ; lambda_T fixed to -1 by an equality
    eqs = [(row + [-1], 0) for row in rows]
    eqs.append(([1 if j == ti else 0 for j in range(k)] + [0], -1))
    bounds = [None if j == ti else 0 for j in range(k)] + [None]
    return Polyhedron(LinProgram(k + 1, [], eqs, [], bounds)).feasible


def exceptional_sets(sys: SetSystem) -> list[int]:
    return [t for t in sys.sets if is_exceptional(sys, t)]


# -- linear algebra ------------------------------------------------------------


def is_min_semi_balanced(sys: SetSystem) -> bool:
    vecs = _vectors(sys)
    if not ratlin.affinely_independent(vecs):
        return False
    if sys.union == sys.ground.full and not ratlin.linearly_independent(vecs):
        return False
    return is_semi_balanced(sys)


def solve_unique_affine(sys: SetSystem) -> Optional[tuple[dict[int, Fraction], Fraction]]:
    """The unique affine combination ``sum l_S chi_S = r chi_N`` if there is exactly one."""
    k = len(sys)
    a = [row + [-1] for row in _member_rows(sys)]
    a.append([1] * k + [0])
    b = [0] * sys.ground.n + [1]
    res = ratlin.solve_exact(a, b)
    if res.status is not ratlin.SolveStatus.UNIQUE:
        return None
    x = res.x
    return {s: x[j] for j, s in enumerate(sys.sets)}, x[k]


def unique_combination_condition(sys: SetSystem) -> bool:
    """Exactly one affine combination yields a constant vector; it is semi-conic with no zero weight."""
    sol = solve_unique_affine(sys)
    if sol is None:
        return False
    lam, _ = sol
    return all(v != 0 for v in lam.values()) and sum(1 for v in lam.values() if v < 0) <= 1


# -- coefficient vectors -------------------------------------------------------


@dataclass(frozen=True)
class CoefficientVector:
    ground: PlayerSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.ground.n:
            raise ValueError("coefficient vector must cover every coalition")

    @classmethod
    def from_mapping(cls, ground: PlayerSet, theta: Mapping[int, Fraction]) -> "CoefficientVector":
        vals = [_ZERO] * (1 << ground.n)
        for mask, v in theta.items():
            vals[mask] = Fraction(v)
        return cls(ground, tuple(vals))

    def __getitem__(self, mask: int) -> Fraction:
        return self.values[mask]

    def support(self) -> dict[int, Fraction]:
        return {m: v for m, v in enumerate(self.values) if v}

    def total(self) -> Fraction:
        return sum(self.values, _ZERO)

    def player_sums(self) -> list[Fraction]:
        return [sum((v for m, v in enumerate(self.values) if m >> i & 1), _ZERO) for i in range(self.ground.n)]

    def is_normalized(self) -> bool:
        return self.values[0] + self.values[self.ground.full] == 1

    def satisfies_invariants(self) -> bool:
        return self.total() == 0 and all(s == 0 for s in self.player_sums()) and self.is_normalized()

    def scaled(self, factor) -> "CoefficientVector":
        f = Fraction(factor)
        return CoefficientVector(self.ground, tuple(v * f for v in self.values))

    def __add__(self, other: "CoefficientVector") -> "CoefficientVector":
        if other.ground != self.ground:
            raise GroundMismatch("different grounds")
        return CoefficientVector(self.ground, tuple(a + b for a, b in zip(self.values, other.values)))


def theta_from_combination(ground: PlayerSet, lam: Mapping[int, Fraction], r: Fraction) -> CoefficientVector:
    theta = {s: -v for s, v in lam.items()}
    theta[ground.full] = r
    theta[0] = 1 - r
    return CoefficientVector.from_mapping(ground, theta)


def conjugate(theta: CoefficientVector) -> CoefficientVector:
    full = theta.ground.full
    return CoefficientVector(theta.ground, tuple(theta.values[full ^ m] for m in range(full + 1)))


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class SemiBalanceReport:
    system: SetSystem
    is_semi_balanced: bool
    is_balanced: bool
    is_minimal: bool
    exceptional: Optional[int] = None
    exceptional_sets: tuple[int, ...] = ()
    theta: Optional[CoefficientVector] = None
    r: Optional[Fraction] = None
    klass: Optional[SystemClass] = None
    combination: Optional[dict[int, Fraction]] = field(default=None, compare=False)


def classify(sys: SetSystem, balanced: bool) -> SystemClass:
    if balanced:
        return SystemClass.MIN_BALANCED
    if sys.union != sys.ground.full:
        return SystemClass.UNION_PROPER
    if sys.intersection:
        return SystemClass.INTERSECTION_NONEMPTY
    return SystemClass.FOURTH_TYPE


def minimal_report(sys: SetSystem) -> SemiBalanceReport:
    """Report for a system known to be min-semi-balanced, from its unique affine combination.

    Uses only exact linear algebra; raises :class:`NotMinimal` if the unique
    combination does not exist or is not semi-conic with non-zero weights.
    """
    sol = solve_unique_affine(sys)
    if sol is None:
        raise NotMinimal(f"{sys} has no unique affine combination yielding a constant vector")
    lam, r = sol
    neg = [s for s, v in lam.items() if v < 0]
    if any(v == 0 for v in lam.values()) or len(neg) > 1:
        raise NotMinimal(f"{sys} is not min-semi-balanced")
    balanced = not neg
    exc = neg[0] if neg else None
    return SemiBalanceReport(
        system=sys,
        is_semi_balanced=True,
        is_balanced=balanced,
        is_minimal=True,
        exceptional=exc,
        exceptional_sets=(exc,) if exc is not None else (),
        theta=theta_from_combination(sys.ground, lam, r),
        r=r,
        klass=classify(sys, balanced),
        combination=lam,
    )


def analyze(sys: SetSystem) -> SemiBalanceReport:
    balanced = is_balanced(sys)
    semi = balanced or is_semi_balanced(sys)
    excs = tuple(exceptional_sets(sys)) if semi else ()
    minimal = semi and is_min_semi_balanced(sys)
    if not minimal:
        return SemiBalanceReport(sys, semi, balanced, False, exceptional_sets=excs)
    rep = minimal_report(sys)
    if rep.is_balanced != balanced or excs != rep.exceptional_sets:
        raise ArithmeticError(f"LP and linear-algebra routes disagree on {sys}")
    return SemiBalanceReport(
        system=sys,
        is_semi_balanced=True,
        is_balanced=balanced,
        is_minimal=True,
        exceptional=rep.exceptional,
        exceptional_sets=excs,
        theta=rep.theta,
        r=rep.r,
        klass=rep.klass,
        combination=rep.combination,
    )


def coefficient_vector(sys: SetSystem) -> CoefficientVector:
    if not is_min_semi_balanced(sys):
        raise NotMinimal(f"{sys} is not min-semi-balanced")
    return minimal_report(sys).theta


# -- integer form ----------------------------------------------------------------


@dataclass(frozen=True)
class IntegerForm:
    system: SetSystem
    alpha: dict[int, int]
    alpha_exceptional: Optional[tuple[int, int]]
    alpha_empty: int
    alpha_N: int

    def signed(self) -> dict[int, int]:
        """All member coefficients with their sign (exceptional one negative)."""
        out = dict(self.alpha)
        if self.alpha_exceptional is not None:
            t, a = self.alpha_exceptional
            out[t] = -a
        return out


def integer_form(sys: SetSystem, report: Optional[SemiBalanceReport] = None) -> IntegerForm:
    if report is None:
        if not is_min_semi_balanced(sys):
            raise NotMinimal(f"{sys} is not min-semi-balanced")
        report = minimal_report(sys)
    if not report.is_minimal:
        raise NotMinimal(f"{sys} is not min-semi-balanced")
    lam = report.combination
    scale = math.lcm(*(v.denominator for v in lam.values()))
    ints = {s: int(v * scale) for s, v in lam.items()}
    g = math.gcd(*ints.values())
    ints = {s: v // g for s, v in ints.items()}
    alpha_n = report.r * scale / g
    assert alpha_n.denominator == 1
    alpha_n = int(alpha_n)
    alpha_empty = sum(ints.values()) - alpha_n
    exc = None
    if report.exceptional is not None:
        exc = (report.exceptional, -ints[report.exceptional])
    alpha = {s: v for s, v in ints.items() if v > 0}
    return IntegerForm(sys, alpha, exc, alpha_empty, alpha_n)
