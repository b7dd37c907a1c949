"""Transferable-utility games and their core-based certification.

A game stores one exact value per coalition (indexed by bitmask, ``m(0) = 0``).
Balancedness, total balancedness and exactness are decided by exact LPs over
the core; exactness needs one minimization per coalition, all sharing a
single phase I.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .ratlp import LinProgram, Polyhedron
from .semibal import CoefficientVector, GroundMismatch
from .setcore import PlayerSet, sort_key

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Game:
    ground: PlayerSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != 1 << self.ground.n:
            raise ValueError("a game needs one value per coalition")
        vals = tuple(Fraction(v) for v in self.values)
        if vals[0] != 0:
            raise ValueError("the empty coalition must have value 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, ground: PlayerSet, values: Mapping[int, object]) -> "Game":
        vals = [_ZERO] * (1 << ground.n)
        for mask, v in values.items():
            vals[mask] = Fraction(v)
        return cls(ground, tuple(vals))

    @classmethod
    def from_function(cls, ground: PlayerSet, f: Callable[[int], object]) -> "Game":
        return cls(ground, tuple([_ZERO] + [Fraction(f(s)) for s in range(1, ground.full + 1)]))

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    def __getitem__(self, mask: int) -> Fraction:
        return self.values[mask]

    @property
    def grand(self) -> Fraction:
        return self.values[self.ground.full]


@dataclass(frozen=True)
class Allocation:
    x: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(v) for v in self.x))

    def __len__(self) -> int:
        return len(self.x)

    def value(self, mask: int) -> Fraction:
        return sum((v for i, v in enumerate(self.x) if mask >> i & 1), _ZERO)


@dataclass(frozen=True)
class MinRepresentation:
    vectors: tuple[Allocation, ...]

    def __post_init__(self):
        if not self.vectors:
            raise ValueError("a min-representation needs at least one vector")


class CertStatus(str, enum.Enum):
    EXACT = "Exact"
    NOT_EXACT = "NotExact"
    EMPTY_CORE = "EmptyCore"


@dataclass(frozen=True)
class ExactnessCertificate:
    status: CertStatus
    witnesses: dict[int, Allocation] = field(default_factory=dict)
    failing: Optional[int] = None
    core_min: Optional[Fraction] = None

    @property
    def is_exact(self) -> bool:
        return self.status is CertStatus.EXACT


def additive_game(ground: PlayerSet, weights: Sequence) -> Game:
    a = Allocation(tuple(weights))
    return Game.from_function(ground, a.value)


def unanimity_game(ground: PlayerSet, t: int) -> Game:
    return Game.from_function(ground, lambda s: 1 if s & t == t else 0)


# -- core LPs --------------------------------------------------------------------


def _core_program(m: Game, players: int) -> LinProgram:
    """Core of the subgame on ``players``; variables are the members in increasing index."""
    idx = [i for i in range(m.ground.n) if players >> i & 1]
    k = len(idx)

    def row(s: int) -> list[int]:
        return [s >> i & 1 for i in idx]

    eqs = [([1] * k, m[players])]
    ineqs = []
    sub = (players - 1) & players
    while sub:
        ineqs.append((row(sub), m[sub]))
        sub = (sub - 1) & players
    return LinProgram(k, [], eqs, ineqs)


def core_polyhedron(m: Game) -> Polyhedron:
    return Polyhedron(_core_program(m, m.ground.full))


def in_core(m: Game, x: Allocation) -> bool:
    if len(x) != m.ground.n or x.value(m.ground.full) != m.grand:
        return False
    return all(x.value(s) >= m[s] for s in range(1, m.ground.full))


def is_balanced_game(m: Game) -> bool:
    return core_polyhedron(m).feasible


def is_totally_balanced(m: Game) -> bool:
    return all(Polyhedron(_core_program(m, sub)).feasible for sub in range(1, m.ground.full + 1))


def core_minimum(m: Game, s: int, core: Optional[Polyhedron] = None) -> tuple[Fraction, Allocation]:
    """``min x(s)`` over the core (which must be non-empty) and a minimizer."""
    core = core or core_polyhedron(m)
    out = core.minimize([s >> i & 1 for i in range(m.ground.n)])
    if not out.optimal:
        raise ValueError("core is empty")
    return out.value, Allocation(out.point)


def _min_chunk(args: tuple[Game, list[int]]) -> list[tuple[int, Fraction, tuple]]:
    m, coalitions = args
    core = core_polyhedron(m)
    out = []
    for s in coalitions:
        v, x = core_minimum(m, s, core)
        out.append((s, v, x.x))
    return out


def exactness(m: Game, jobs: int = 1) -> ExactnessCertificate:
    core = core_polyhedron(m)
    if not core.feasible:
        return ExactnessCertificate(CertStatus.EMPTY_CORE)
    order = sorted(range(1, m.ground.full), key=sort_key)
    if jobs > 1:
        chunks = [order[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            found = {s: (v, Allocation(x)) for part in pool.map(_min_chunk, [(m, c) for c in chunks]) for s, v, x in part}
        minima = ((s, *found[s]) for s in order)
    else:
        minima = ((s, *core_minimum(m, s, core)) for s in order)
    witnesses = {}
    for s, v, x in minima:
        if v != m[s]:
            return ExactnessCertificate(CertStatus.NOT_EXACT, failing=s, core_min=v)
        witnesses[s] = x
    x = Allocation(core.feasible_point())
    witnesses[0] = x
    witnesses[m.ground.full] = x
    return ExactnessCertificate(CertStatus.EXACT, witnesses=witnesses)


def anti_dual(m: Game) -> Game:
    full = m.ground.full
    return Game(m.ground, tuple(m[full ^ s] - m.grand for s in range(full + 1)))


def verify_min_representation(m: Game, rep: MinRepresentation) -> bool:
    if any(len(x) != m.ground.n for x in rep.vectors):
        return False
    return all(min(x.value(s) for x in rep.vectors) == m[s] for s in range(m.ground.full + 1))


def evaluate_inequality(theta: CoefficientVector, m: Game) -> Fraction:
    if theta.ground != m.ground:
        raise GroundMismatch("coefficient vector and game live on different grounds")
    return sum((t * v for t, v in zip(theta.values, m.values) if t), _ZERO)


def is_exact_via_facets(m: Game, cat) -> bool:
    if cat.ground != m.ground:
        raise GroundMismatch("catalogue and game live on different grounds")
    return all(evaluate_inequality(e.report.theta, m) >= 0 for e in cat.entries)


# -- random corpus -----------------------------------------------------------------


def random_integer_game(ground: PlayerSet, rng: random.Random, lo: int = -8, hi: int = 8) -> Game:
    return Game.from_function(ground, lambda s: rng.randint(lo, hi))


def random_convex_game(ground: PlayerSet, rng: random.Random, terms: int = 4) -> Game:
    """Non-negative mixture of unanimity games plus an additive part (supermodular)."""
    pool = range(1, ground.full + 1)
    parts = [(rng.choice(pool), rng.randint(1, 5)) for _ in range(terms)]
    add = [rng.randint(-8, 8) for _ in range(ground.n)]
    return Game.from_function(
        ground,
        lambda s: sum(c for t, c in parts if s & t == t) + sum(a for i, a in enumerate(add) if s >> i & 1),
    )


def random_corpus(ground: PlayerSet, count: int, seed: int = 0) -> Iterator[Game]:
    """Reproducible mix: uniform integer games, additive, unanimity and convex mixtures."""
    rng = random.Random(seed * 1000003 + ground.n)
    for i in range(count):
        kind = i % 5
        if kind in (0, 1):
            yield random_integer_game(ground, rng)
        elif kind == 2:
            yield additive_game(ground, [rng.randint(-8, 8) for _ in range(ground.n)])
        elif kind == 3:
            t = rng.randrange(1, ground.full + 1)
            yield Game.from_function(ground, lambda s, t=t, c=rng.randint(1, 8): c if s & t == t else 0)
        else:
            yield random_convex_game(ground, rng)


def restrict(m: Game, players: int) -> tuple[PlayerSet, Game]:
    """Subgame on ``players`` re-indexed onto a smaller ground."""
    idx = [i for i in range(m.ground.n) if players >> i & 1]
    if len(idx) < 2:
        raise ValueError("subgames need at least two players")
    sub = PlayerSet(len(idx), tuple(m.ground.labels[i] for i in idx))

    def lift(s: int) -> int:
        return sum(1 << idx[j] for j in range(len(idx)) if s >> j & 1)

    return sub, Game.from_function(sub, lambda s: m[lift(s)])

