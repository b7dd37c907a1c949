"""Players, coalitions and set systems.

Coalitions are plain ``int`` bitmasks: bit ``i`` is set iff player ``i`` is a
member.  A :class:`SetSystem` is an immutable, canonically ordered collection
of non-trivial coalitions (no empty set, no grand coalition).
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_PLAYERS = 16
MAX_CANONICAL_PLAYERS = 8


class GroundTooLarge(ValueError):
    pass


class ParseError(ValueError):
    """Raised for malformed coalition or system text; ``position`` is 0-based."""

    def __init__(self, message: str, position: int | None = None):
        self.reason = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class PlayerSet:
    n: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not 2 <= self.n <= MAX_PLAYERS:
            raise ValueError(f"need 2 <= n <= {MAX_PLAYERS}, got {self.n}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(string.ascii_lowercase[: self.n]))
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("labels must be n distinct names")
        for lab in labels:
            if not lab or any(ch.isspace() or ch in "{},/" for ch in lab) or lab in ("0", "N"):
                raise ValueError(f"invalid player label {lab!r}")

    @classmethod
    def of(cls, n: int) -> "PlayerSet":
        return cls(n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def nontrivial(self) -> list[int]:
        """All coalitions except the empty and the grand one, in canonical order."""
        return sorted(range(1, self.full), key=sort_key)

    def format(self, mask: int) -> str:
        if mask == 0:
            return "0"
        if mask == self.full:
            return "N"
        return "".join(self.labels[i] for i in range(self.n) if mask >> i & 1)

    def parse(self, text: str) -> int:
        """Parse a coalition such as ``"abd"``, ``"0"`` or ``"N"``."""
        text = text.strip()
        if text == "0" or text == "":
            return 0
        if text == "N":
            return self.full
        mask = 0
        pos = 0
        # greedy longest-label match so multi-character labels work
        by_len = sorted(range(self.n), key=lambda i: -len(self.labels[i]))
        while pos < len(text):
            for i in by_len:
                lab = self.labels[i]
                if text.startswith(lab, pos):
                    if mask >> i & 1:
                        raise ParseError(f"player {lab!r} repeated in {text!r}", pos)
                    mask |= 1 << i
                    pos += len(lab)
                    break
            else:
                raise ParseError(f"unknown player in {text!r}", pos)
        return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def sort_key(mask: int) -> tuple[int, int]:
    return (popcount(mask), mask)


def incidence_vector(s: int, ground: PlayerSet) -> tuple[Fraction, ...]:
    if not 0 <= s <= ground.full:
        raise ValueError(f"coalition {s} not on {ground.n} players")
    return tuple(Fraction(s >> i & 1) for i in range(ground.n))


@dataclass(frozen=True)
class SetSystem:
    ground: PlayerSet
    sets: tuple[int, ...]

    def __post_init__(self):
        sets = tuple(sorted(set(self.sets), key=sort_key))
        if len(sets) != len(self.sets):
            raise ValueError("duplicate coalitions in set system")
        if not sets:
            raise ValueError("set system must be non-empty")
        for s in sets:
            if s <= 0 or s >= self.ground.full:
                raise ValueError(f"set system must not contain the empty or grand coalition ({s})")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def of(cls, ground: PlayerSet, sets: Iterable[int]) -> "SetSystem":
        return cls(ground, tuple(sets))

    @classmethod
    def parse(cls, ground: PlayerSet, text: str) -> "SetSystem":
        """Parse ``"{a,b,ab}"`` (braces optional)."""
        body = text.strip()
        offset = len(text) - len(text.lstrip())
        if body.startswith("{"):
            if not body.endswith("}"):
                raise ParseError("missing closing brace", offset + len(body))
            body = body[1:-1]
            offset += 1
        masks = []
        pos = offset
        for token in body.split(","):
            stripped = token.strip()
            if not stripped:
                raise ParseError("empty coalition in system", pos)
            try:
                m = ground.parse(stripped)
            except ParseError as exc:
                raise ParseError(exc.reason, pos + (exc.position or 0)) from None
            if m == 0 or m == ground.full:
                raise ParseError(f"trivial coalition {stripped!r} not allowed", pos)
            if m in masks:
                raise ParseError(f"duplicate coalition {stripped!r}", pos)
            masks.append(m)
            pos += len(token) + 1
        return cls(ground, tuple(masks))

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self.sets

    def __str__(self) -> str:
        return "{" + ",".join(self.ground.format(s) for s in self.sets) + "}"

    @property
    def union(self) -> int:
        u = 0
        for s in self.sets:
            u |= s
        return u

    @property
    def intersection(self) -> int:
        x = self.ground.full
        for s in self.sets:
            x &= s
        return x

    def with_set(self, mask: int) -> "SetSystem":
        return SetSystem(self.ground, self.sets + (mask,))

    def without(self, mask: int) -> "SetSystem":
        return SetSystem(self.ground, tuple(s for s in self.sets if s != mask))

    def permuted(self, perm: Sequence[int]) -> "SetSystem":
        """Relabel players: player ``i`` becomes player ``perm[i]``."""
        return SetSystem(self.ground, tuple(permute_mask(s, perm) for s in self.sets))

    def incidence_rows(self) -> list[list[Fraction]]:
        return [list(incidence_vector(s, self.ground)) for s in self.sets]


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i, j in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << j
    return out


def complement_system(sys: SetSystem) -> SetSystem:
    full = sys.ground.full
    return SetSystem(sys.ground, tuple(full ^ s for s in sys.sets))


@dataclass(frozen=True)
class CanonicalType:
    representative: SetSystem
    orbit_size: int


@lru_cache(maxsize=None)
def _permutation_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (perms, table) with ``table[p, mask]`` the image of ``mask`` under perm ``p``."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for i in range(n):
        bit = (masks >> i) & 1
        table |= bit[None, :] << perms[:, i][:, None]
    return perms, table


def _keys(masks: np.ndarray, n: int) -> np.ndarray:
    pc = np.zeros_like(masks)
    for i in range(n):
        pc += (masks >> i) & 1
    return (pc << n) | masks


def canonicalize(sys: SetSystem) -> tuple[CanonicalType, tuple[int, ...]]:
    """Orbit minimum of ``sys`` under player relabelings and a permutation reaching it.

    Systems are compared as lists of ``(popcount, mask)`` keys in canonical order.
    """
    n = sys.ground.n
    if n > MAX_CANONICAL_PLAYERS:
        raise GroundTooLarge(f"canonicalization supports n <= {MAX_CANONICAL_PLAYERS}")
    perms, table = _permutation_tables(n)
    images = table[:, np.asarray(sys.sets, dtype=np.int64)]
    keys = np.sort(_keys(images, n), axis=1)
    # lexsort uses the last key as primary
    order = np.lexsort(keys.T[::-1])
    best = keys[order[0]]
    distinct = np.unique(keys, axis=0)
    full_mask = (1 << n) - 1
    rep = SetSystem(sys.ground, tuple(int(k) & full_mask for k in best))
    return CanonicalType(rep, len(distinct)), tuple(int(p) for p in perms[order[0]])


def canonical_key(sys: SetSystem) -> tuple[int, ...]:
    return canonicalize(sys)[0].representative.sets
