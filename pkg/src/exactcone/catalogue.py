"""Catalogues of min-semi-balanced systems and the facets of the exact cone.

Pipeline for ``n >= 3``:

1. enumerate min-balanced systems (integer kernel, see ``_kernels``);
2. swap each member ``Z`` of every min-balanced ``B`` with ``|B| >= 3`` for
   its complement, giving every purely min-semi-balanced system exactly once;
3. drop the systems that admit a decomposition;
4. attach coefficient vectors and group by permutational type.

Brute-force oracles (``n <= 4``) live here as well so that tests can compare
both routes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import _kernels
from .ratlp import LinProgram, Polyhedron
from .semibal import SemiBalanceReport, is_exceptional, is_semi_balanced, minimal_report
from .setcore import CanonicalType, GroundTooLarge, PlayerSet, SetSystem, canonicalize

log = logging.getLogger(__name__)

MAX_DEFAULT_N = 5
MAX_N = 6
MAX_BRUTE_N = 4


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class CatalogueEntry:
    system: SetSystem
    report: SemiBalanceReport
    indecomposable: bool
    canonical: CanonicalType


@dataclass(frozen=True)
class Catalogue:
    ground: PlayerSet
    entries: tuple[CatalogueEntry, ...]

    @property
    def facet_count(self) -> int:
        return len(self.entries)

    @property
    def type_count(self) -> int:
        return count_types(self.entries)

    def systems(self) -> list[SetSystem]:
        return [e.system for e in self.entries]


def _check_n(ground: PlayerSet, cap: int) -> None:
    if ground.n > cap:
        raise GroundTooLarge(f"n = {ground.n} exceeds the cap of {cap}")


def enumerate_min_balanced(ground: PlayerSet, allow_n6: bool = False) -> list[SetSystem]:
    _check_n(ground, MAX_N if allow_n6 else MAX_DEFAULT_N)
    return sorted(
        (SetSystem(ground, masks) for masks in _kernels.min_balanced_masks(ground.n)),
        key=lambda s: (len(s), s.sets),
    )


def purely_from_balanced(b: SetSystem, z: int) -> SetSystem:
    """Replace ``z`` in a min-balanced system by its complement."""
    if len(b) < 3:
        raise PreconditionViolated("need a min-balanced system with at least three sets")
    if z not in b:
        raise PreconditionViolated("z must be a member of b")
    y = b.ground.full ^ z
    if y in b:
        raise PreconditionViolated("complement of z already present; b is not min-balanced")
    return SetSystem(b.ground, tuple(s for s in b.sets if s != z) + (y,))


def purely_min_semi_balanced(ground: PlayerSet, min_balanced: Optional[list[SetSystem]] = None,
                             allow_n6: bool = False) -> list[tuple[SetSystem, int]]:
    """All purely min-semi-balanced systems with their exceptional sets."""
    if min_balanced is None:
        min_balanced = enumerate_min_balanced(ground, allow_n6)
    out = []
    seen = set()
    for b in min_balanced:
        if len(b) < 3:
            continue
        for z in b.sets:
            s = purely_from_balanced(b, z)
            if s.sets in seen:
                raise ArithmeticError(f"{s} generated twice")
            seen.add(s.sets)
            out.append((s, ground.full ^ z))
    return out


def _decomposition_lp(sys: SetSystem, e: int) -> bool:
    """``e`` is exceptional within ``sys + {e}`` (one LP)."""
    return is_exceptional(sys.with_set(e), e)


def has_decomposition(sys: SetSystem, method: str = "kernel",
                      report: Optional[SemiBalanceReport] = None) -> Optional[int]:
    """The canonically first set yielding a decomposition, or ``None`` if indecomposable.

    ``method="lp"`` runs one exact LP per candidate; ``method="kernel"`` solves
    the equivalent integer system for ``(sys - {T}) + {E}`` with all weights
    ``>= 0``.
    """
    if report is None:
        report = minimal_report(sys)
    if not report.is_minimal or report.is_balanced:
        raise PreconditionViolated(f"{sys} is not purely min-semi-balanced")
    if method == "lp":
        for e in sys.ground.nontrivial():
            if e not in sys and _decomposition_lp(sys, e):
                return e
        return None
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    (w,) = _kernels.first_decompositions([sys.sets], [report.exceptional], sys.ground.n)
    return None if w < 0 else w


def is_irreducible(b: SetSystem, ground_mask: Optional[int] = None) -> bool:
    """No proper non-empty ``E`` of the ground has chi_E in the cone of members strictly inside E."""
    m = b.ground.full if ground_mask is None else ground_mask
    e = (m - 1) & m
    while e:
        inside = [s for s in b.sets if s & e == s and s != e]
        if inside and _conic(inside, e, b.ground.n):
            return False
        e = (e - 1) & m
    return True


def _conic(sets: list[int], target: int, n: int) -> bool:
    k = len(sets)
    eqs = [([s >> i & 1 for s in sets], target >> i & 1) for i in range(n)]
    return Polyhedron(LinProgram(k, [], eqs, [], [0] * k)).feasible


def count_types(entries: Iterable[CatalogueEntry | SetSystem]) -> int:
    reps = set()
    for e in entries:
        if isinstance(e, CatalogueEntry):
            reps.add(e.canonical.representative.sets)
        else:
            reps.add(canonicalize(e)[0].representative.sets)
    return len(reps)


def _entry(sys: SetSystem, indecomposable: bool) -> CatalogueEntry:
    return CatalogueEntry(sys, minimal_report(sys), indecomposable, canonicalize(sys)[0])


def _sorted_entries(entries: list[CatalogueEntry]) -> tuple[CatalogueEntry, ...]:
    return tuple(sorted(entries, key=lambda e: (e.canonical.representative.sets, e.system.sets)))


def enumerate_facets(ground: PlayerSet, allow_n6: bool = False,
                     progress: Optional[Callable[[str, int, int], None]] = None) -> Catalogue:
    """Facet catalogue of the exact cone: one entry per indecomposable system."""
    _check_n(ground, MAX_N if allow_n6 else MAX_DEFAULT_N)
    if ground.n == 2:
        return Catalogue(ground, (_entry(SetSystem(ground, (1, 2)), True),))
    mb = enumerate_min_balanced(ground, allow_n6)
    if progress:
        progress("min-balanced", len(mb), len(mb))
    purely = purely_min_semi_balanced(ground, mb)
    if progress:
        progress("purely", len(purely), len(purely))
    witnesses = _kernels.first_decompositions([s.sets for s, _ in purely], [t for _, t in purely], ground.n)
    keep = [s for (s, _), w in zip(purely, witnesses) if w < 0]
    log.info("n=%d: %d min-balanced, %d purely, %d indecomposable", ground.n, len(mb), len(purely), len(keep))
    exc_of = {s.sets: t for s, t in purely}
    entries = []
    for i, s in enumerate(keep):
        entry = _entry(s, True)
        # the generated exceptional set must be the one found by linear algebra
        if entry.report.exceptional != exc_of[s.sets]:
            raise ArithmeticError(f"exceptional set of {s} disagrees with its generator")
        entries.append(entry)
        if progress and (i + 1) % 500 == 0:
            progress("facets", i + 1, len(keep))
    if progress:
        progress("facets", len(keep), len(keep))
    return Catalogue(ground, _sorted_entries(entries))


def min_semi_balanced_catalogue(ground: PlayerSet, allow_n6: bool = False) -> list[SetSystem]:
    """Generator route: min-balanced systems plus their purely counterparts."""
    mb = enumerate_min_balanced(ground, allow_n6)
    return mb + [s for s, _ in purely_min_semi_balanced(ground, mb)]


# -- brute-force oracles -------------------------------------------------------


def all_nontrivial_systems(ground: PlayerSet, max_size: Optional[int] = None) -> Iterable[SetSystem]:
    from itertools import combinations

    pool = ground.nontrivial()
    top = len(pool) if max_size is None else max_size
    for k in range(1, top + 1):
        for combo in combinations(pool, k):
            yield SetSystem(ground, combo)


def brute_force_min_semi_balanced(ground: PlayerSet) -> list[SetSystem]:
    """Minimal semi-balanced systems straight from the definition.

    Systems are visited by increasing size; a semi-balanced system is minimal
    iff it contains no minimal system found earlier (every semi-balanced
    proper subsystem contains a minimal one), so supersets are skipped without LPs.
    """
    _check_n(ground, MAX_BRUTE_N)
    pool = ground.nontrivial()
    index = {m: i for i, m in enumerate(pool)}
    found: list[SetSystem] = []
    found_bits: list[int] = []
    for sys in all_nontrivial_systems(ground):
        bits = 0
        for s in sys.sets:
            bits |= 1 << index[s]
        if any(bits & f == f for f in found_bits):
            continue
        if is_semi_balanced(sys):
            found.append(sys)
            found_bits.append(bits)
    return found


def brute_force_min_balanced(ground: PlayerSet) -> list[SetSystem]:
    from .semibal import is_balanced

    _check_n(ground, MAX_BRUTE_N)
    pool = ground.nontrivial()
    index = {m: i for i, m in enumerate(pool)}
    found, found_bits = [], []
    for sys in all_nontrivial_systems(ground):
        bits = sum(1 << index[s] for s in sys.sets)
        if any(bits & f == f for f in found_bits):
            continue
        if is_balanced(sys):
            found.append(sys)
            found_bits.append(bits)
    return found
