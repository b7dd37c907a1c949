"""JSON formats for systems, games, min-representations and reports.

Rationals are always written as strings (``"4"``, ``"-3/2"``) so nothing is
lost to floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Optional

from .games import Allocation, ExactnessCertificate, Game, MinRepresentation
from .semibal import CoefficientVector, IntegerForm, SemiBalanceReport
from .setcore import ParseError, PlayerSet, SetSystem, sort_key

_RAT = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class MissingValue(ValueError):
    pass


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"rational must be an integer or a 'p/q' string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    m = _RAT.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", 0)
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}", text.index("/"))
    return Fraction(int(num), int(den or 1))


def format_rational(v: Fraction) -> str:
    return str(Fraction(v))


def coalition_name(ground: PlayerSet, s: int) -> str:
    """Player letters spelled out, also for the grand coalition; ``"0"`` for the empty one."""
    return "".join(ground.labels[i] for i in range(ground.n) if s >> i & 1) or "0"


def _players(doc: dict) -> PlayerSet:
    try:
        labels = doc["players"]
    except (KeyError, TypeError):
        raise ParseError("missing 'players' list") from None
    if not isinstance(labels, list) or not all(isinstance(p, str) for p in labels):
        raise ParseError("'players' must be a list of strings")
    try:
        return PlayerSet(len(labels), tuple(labels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- systems ---------------------------------------------------------------------


def system_to_json(sys: SetSystem) -> dict:
    g = sys.ground
    return {"players": list(g.labels), "sets": [coalition_name(g, s) for s in sys.sets]}


def system_from_json(doc: dict) -> SetSystem:
    ground = _players(doc)
    sets = doc.get("sets")
    if not isinstance(sets, list):
        raise ParseError("missing 'sets' list")
    try:
        return SetSystem(ground, tuple(ground.parse(s) for s in sets))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- games -----------------------------------------------------------------------


def game_to_json(m: Game) -> dict:
    g = m.ground
    return {
        "players": list(g.labels),
        "values": {coalition_name(g, s): format_rational(m[s]) for s in range(1, g.full + 1)},
    }


def game_from_json(doc: dict) -> Game:
    ground = _players(doc)
    raw = doc.get("values")
    if not isinstance(raw, dict):
        raise ParseError("missing 'values' object")
    vals: dict[int, Fraction] = {}
    for key, v in raw.items():
        s = ground.parse(key)  # "N" and "0" are accepted too
        if s in vals:
            raise ParseError(f"coalition {key!r} given twice")
        vals[s] = parse_rational(v)
    vals.setdefault(0, Fraction(0))
    if vals[0] != 0:
        raise ParseError("the empty coalition must have value 0")
    missing = [ground.format(s) for s in range(1, ground.full + 1) if s not in vals]
    if missing:
        raise MissingValue(f"no value for coalition(s): {', '.join(missing[:8])}")
    return Game.from_mapping(ground, vals)


def min_rep_to_json(ground: PlayerSet, rep: MinRepresentation) -> dict:
    return {"players": list(ground.labels), "vectors": [[format_rational(v) for v in x.x] for x in rep.vectors]}


def min_rep_from_json(doc: dict) -> tuple[PlayerSet, MinRepresentation]:
    ground = _players(doc)
    rows = doc.get("vectors")
    if not isinstance(rows, list) or not rows:
        raise ParseError("missing 'vectors' list")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != ground.n:
            raise ParseError(f"vector {row!r} must have {ground.n} entries")
        out.append(Allocation(tuple(parse_rational(v) for v in row)))
    return ground, MinRepresentation(tuple(out))


# -- reports ---------------------------------------------------------------------


def theta_to_json(theta: CoefficientVector) -> dict:
    g = theta.ground
    return {coalition_name(g, s): format_rational(v) for s, v in sorted(theta.support().items(), key=lambda kv: sort_key(kv[0]))}


def theta_from_json(ground: PlayerSet, doc: dict) -> CoefficientVector:
    return CoefficientVector.from_mapping(ground, {ground.parse(k): parse_rational(v) for k, v in doc.items()})


def integer_form_to_json(form: IntegerForm) -> dict:
    g = form.system.ground
    return {
        "alpha": {coalition_name(g, s): a for s, a in form.alpha.items()},
        "exceptional": None if form.alpha_exceptional is None else
        {"set": coalition_name(g, form.alpha_exceptional[0]), "alpha": form.alpha_exceptional[1]},
        "alpha_empty": form.alpha_empty,
        "alpha_N": form.alpha_N,
    }


def report_to_json(rep: SemiBalanceReport, form: Optional[IntegerForm] = None) -> dict:
    g = rep.system.ground
    out: dict[str, Any] = {
        "system": system_to_json(rep.system),
        "is_semi_balanced": rep.is_semi_balanced,
        "is_balanced": rep.is_balanced,
        "is_minimal": rep.is_minimal,
        "exceptional": None if rep.exceptional is None else coalition_name(g, rep.exceptional),
        "exceptional_sets": [coalition_name(g, t) for t in rep.exceptional_sets],
        "klass": None if rep.klass is None else rep.klass.value,
        "r": None if rep.r is None else format_rational(rep.r),
        "theta": None if rep.theta is None else theta_to_json(rep.theta),
    }
    if form is not None:
        out["integer_form"] = integer_form_to_json(form)
    return out


def certificate_to_json(m: Game, cert: ExactnessCertificate) -> dict:
    g = m.ground
    out: dict[str, Any] = {"status": cert.status.value}
    if cert.failing is not None:
        out["failing"] = coalition_name(g, cert.failing)
        out["core_min"] = format_rational(cert.core_min)
        out["value"] = format_rational(m[cert.failing])
    if cert.witnesses:
        out["witnesses"] = {
            coalition_name(g, s): [format_rational(v) for v in x.x]
            for s, x in sorted(cert.witnesses.items(), key=lambda kv: sort_key(kv[0]))
        }
    return out
