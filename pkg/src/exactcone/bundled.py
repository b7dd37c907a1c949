"""Embedded six-player counterexample and its end-to-end verification.

The game ``m`` on ``abcdef`` is totally balanced, so is its anti-dual, yet
``m`` is not exact.  The data files ship with the package; their SHA-256
digests are pinned below so that edits are detected.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .games import (
    CertStatus,
    Game,
    MinRepresentation,
    anti_dual,
    core_minimum,
    core_polyhedron,
    evaluate_inequality,
    exactness,
    in_core,
    is_totally_balanced,
    verify_min_representation,
)
from .semibal import CoefficientVector
from .serialize import game_from_json, min_rep_from_json
from .setcore import PlayerSet

FILES = {
    "m": "counterexample_game.json",
    "m_rep": "counterexample_minrep.json",
    "ad": "antidual_game.json",
    "ad_rep": "antidual_minrep.json",
}

CHECKSUMS = {
    "counterexample_game.json": "06c30a8eec8369debbeefb4efc6384e29246aaa74aac98d423372e244ab5596c",
    "counterexample_minrep.json": "0091e3acd1c86a06d47c4d4a0fef1ca24c3ae9c0b4248603d7a3cf6c1523cd19",
    "antidual_game.json": "a9cbb75fa96d458d81109e3e0ae13066553622e5a906ec685c8c7ca6a707794d",
    "antidual_minrep.json": "26fdd50076d187856354fa1a2060e59874a11e70f5ad63813372b352c651e8b6",
}

CORE_VERTEX_COUNT = 17
GAP_SETS_M = ("ce", "bce")
GAP_SETS_AD = ("adf", "abdf")


@dataclass(frozen=True)
class CounterexampleBundle:
    m: Game
    m_rep: MinRepresentation
    ad: Game
    ad_rep: MinRepresentation
    checksums_ok: bool
    mismatched: tuple[str, ...] = ()


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]
    checksums_ok: bool = True

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _read(data_dir: Optional[Path], name: str) -> bytes:
    if data_dir is not None:
        return (Path(data_dir) / name).read_bytes()
    return resources.files("exactcone").joinpath("data").joinpath(name).read_bytes()


def load_bundle(data_dir: Optional[Path] = None) -> CounterexampleBundle:
    raw = {key: _read(data_dir, f) for key, f in FILES.items()}
    bad = tuple(FILES[k] for k, b in raw.items() if hashlib.sha256(b).hexdigest() != CHECKSUMS[FILES[k]])
    docs = {k: json.loads(b) for k, b in raw.items()}
    m = game_from_json(docs["m"])
    ad = game_from_json(docs["ad"])
    g1, m_rep = min_rep_from_json(docs["m_rep"])
    g2, ad_rep = min_rep_from_json(docs["ad_rep"])
    if not (m.ground == ad.ground == g1 == g2):
        raise ValueError("bundled files disagree on the players")
    return CounterexampleBundle(m, m_rep, ad, ad_rep, not bad, bad)


def _gap_check(g: Game, names: tuple[str, ...]) -> tuple[bool, str]:
    core = core_polyhedron(g)
    if not core.feasible:
        return False, "core is empty"
    ok, parts = True, []
    for name in names:
        s = g.ground.parse(name)
        v, _ = core_minimum(g, s, core)
        ok &= v > g[s]
        parts.append(f"min x({name}) = {v} vs value {g[s]}")
    return ok, "; ".join(parts)


def verify_counterexample(data_dir: Optional[Path] = None) -> VerificationReport:
    b = load_bundle(data_dir)
    m, ad = b.m, b.ad
    checks = []

    diff = [m.ground.format(s) for s in range(m.ground.full + 1) if anti_dual(m)[s] != ad[s]]
    checks.append(Check("anti-dual matches table", not diff,
                        "all 64 coalitions agree" if not diff else f"differs at {', '.join(diff)}"))

    ok = verify_min_representation(m, b.m_rep)
    checks.append(Check("min-representation of m", ok, f"{len(b.m_rep.vectors)} vectors"))
    ok = verify_min_representation(ad, b.ad_rep)
    checks.append(Check("min-representation of anti-dual", ok, f"{len(b.ad_rep.vectors)} vectors"))

    tb_m, tb_ad = is_totally_balanced(m), is_totally_balanced(ad)
    checks.append(Check("both totally balanced", tb_m and tb_ad,
                        f"m: {tb_m}, anti-dual: {tb_ad} (all 63 subgames by LP)"))

    outside = [i + 1 for i, x in enumerate(b.m_rep.vectors[:CORE_VERTEX_COUNT]) if not in_core(m, x)]
    checks.append(Check("listed vectors lie in the core", not outside,
                        f"first {CORE_VERTEX_COUNT} vectors" + (f"; outside: {outside}" if outside else "")))

    ok, detail = _gap_check(m, GAP_SETS_M)
    checks.append(Check("core gaps for m", ok, detail))
    ok, detail = _gap_check(ad, GAP_SETS_AD)
    checks.append(Check("core gaps for anti-dual", ok, detail))

    cert = exactness(m)
    if cert.status is CertStatus.NOT_EXACT:
        detail = f"fails at {m.ground.format(cert.failing)}: core minimum {cert.core_min} > {m[cert.failing]}"
    else:
        detail = cert.status.value
    checks.append(Check("m is not exact", cert.status is CertStatus.NOT_EXACT, detail))
    return VerificationReport(tuple(checks), b.checksums_ok)


# -- the certificate vector behind the counterexample -------------------------------

THETA_HAT = {
    "0": 1, "ce": 4, "N": 3,
    "be": -1, "ace": -3, "bcf": -1, "bcde": -1, "cdef": -2,
}
THETA_HAT_D = "ce"


@dataclass(frozen=True)
class ThetaHatReport:
    theta: CoefficientVector
    normalized: CoefficientVector
    sign_pattern_ok: bool
    zero_sums_ok: bool
    value_on_m: Fraction

    @property
    def passed(self) -> bool:
        return self.sign_pattern_ok and self.zero_sums_ok and self.value_on_m < 0


def cutting_vector(data_dir: Optional[Path] = None) -> ThetaHatReport:
    """The vector cutting off ``m``: non-positive off ``{0, ce, N}``, both zero-sum identities, negative on ``m``."""
    ground = PlayerSet(6)
    theta = CoefficientVector.from_mapping(ground, {ground.parse(k): Fraction(v) for k, v in THETA_HAT.items()})
    d = ground.parse(THETA_HAT_D)
    free = {0, d, ground.full}
    signs = all(v <= 0 for s, v in enumerate(theta.values) if s not in free)
    sums = theta.total() == 0 and all(v == 0 for v in theta.player_sums())
    normalized = theta.scaled(1 / (theta[0] + theta[ground.full]))
    m = load_bundle(data_dir).m
    return ThetaHatReport(theta, normalized, signs, sums, evaluate_inequality(normalized, m))
