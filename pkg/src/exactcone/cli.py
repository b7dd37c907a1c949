"""Command-line interface: ``exactcone <command> ...``.

Exit codes: 0 success, 1 a requested check failed, 2 unparseable input,
3 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import _kernels
from .bundled import cutting_vector, verify_counterexample
from .catalogue import (
    MAX_BRUTE_N,
    MAX_DEFAULT_N,
    MAX_N,
    brute_force_min_semi_balanced,
    enumerate_facets,
    enumerate_min_balanced,
    min_semi_balanced_catalogue,
)
from .diagram import build_diagram, render_ascii, render_svg
from .games import anti_dual, exactness, is_balanced_game, is_exact_via_facets, is_totally_balanced, random_corpus
from .semibal import NotMinimal, analyze, integer_form
from .serialize import (
    MissingValue,
    certificate_to_json,
    coalition_name,
    game_from_json,
    game_to_json,
    report_to_json,
    system_from_json,
    system_to_json,
    theta_to_json,
)
from .setcore import GroundTooLarge, ParseError, PlayerSet, SetSystem

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_ARGS = 0, 1, 2, 3


class ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _ground(args) -> PlayerSet:
    if args.players:
        labels = tuple(p.strip() for p in args.players.split(","))
        if args.n is not None and args.n != len(labels):
            raise ArgumentError("--n disagrees with --players")
        return PlayerSet(len(labels), labels)
    if args.n is None:
        raise ArgumentError("give --n or --players")
    try:
        return PlayerSet(args.n)
    except ValueError as exc:
        raise ArgumentError(str(exc)) from None


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ArgumentError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def _system(args) -> SetSystem:
    if args.file:
        return system_from_json(_load_json(args.file))
    if not args.system:
        raise ArgumentError("give --system or --file")
    return SetSystem.parse(_ground(args), args.system)


# -- commands ---------------------------------------------------------------------


def cmd_analyze(args) -> int:
    sys_ = _system(args)
    rep = analyze(sys_)
    form = integer_form(sys_, rep) if rep.is_minimal else None
    _emit(report_to_json(rep, form))
    return EXIT_OK


def _n_in_range(args) -> PlayerSet:
    ground = _ground(args)
    cap = MAX_N if getattr(args, "allow_n6", False) else MAX_DEFAULT_N
    if not 2 <= ground.n <= cap:
        hint = " (n = 6 needs --allow-n6)" if ground.n == 6 else ""
        raise ArgumentError(f"n must be between 2 and {cap}{hint}")
    return ground


def cmd_facets(args) -> int:
    ground = _n_in_range(args)

    def progress(stage, done, total):
        print(f"[{stage}] {done}/{total}", file=sys.stderr, flush=True)

    cat = enumerate_facets(ground, allow_n6=args.allow_n6, progress=progress if args.progress else None)
    f, t = cat.facet_count, cat.type_count
    summary = f"{f} facet{'s' if f != 1 else ''}, {t} type{'s' if t != 1 else ''}"
    if args.json:
        _emit({
            "players": list(ground.labels),
            "facet_count": f,
            "type_count": t,
            "facets": [
                {
                    "sets": system_to_json(e.system)["sets"],
                    "exceptional": coalition_name(ground, e.report.exceptional),
                    "klass": e.report.klass.value,
                    "type": system_to_json(e.canonical.representative)["sets"],
                    "theta": theta_to_json(e.report.theta),
                }
                for e in cat.entries
            ],
        })
        return EXIT_OK
    print(summary)
    if args.types:
        orbits: dict = {}
        for e in cat.entries:
            orbits.setdefault(e.canonical.representative, []).append(e)
        for rep, members in orbits.items():
            print(f"  {rep}  orbit {len(members)}  {members[0].report.klass.value}")
    return EXIT_OK


def cmd_check_game(args) -> int:
    m = game_from_json(_load_json(args.game))
    wanted = [k for k in ("balanced", "totally_balanced", "exact") if getattr(args, k)]
    if not wanted and not args.anti_dual:
        wanted = ["balanced", "totally_balanced", "exact"]
    out: dict = {}
    ok = True
    if "balanced" in wanted:
        out["balanced"] = is_balanced_game(m)
        ok &= out["balanced"]
    if "totally_balanced" in wanted:
        out["totally_balanced"] = is_totally_balanced(m)
        ok &= out["totally_balanced"]
    if "exact" in wanted:
        cert = exactness(m, jobs=args.jobs)
        out["exact"] = certificate_to_json(m, cert)
        ok &= cert.is_exact
    if args.anti_dual:
        Path(args.anti_dual).write_text(json.dumps(game_to_json(anti_dual(m)), indent=1) + "\n")
        out["anti_dual"] = args.anti_dual
    if args.json:
        _emit(out)
    else:
        for key, val in out.items():
            if key == "exact":
                line = val["status"]
                if "failing" in val:
                    line += f" (fails at {val['failing']}: core minimum {val['core_min']} > {val['value']})"
                print(f"exact: {line}")
            else:
                print(f"{key.replace('_', ' ')}: {val}")
    return EXIT_OK if ok else EXIT_CHECK


def cmd_diagram(args) -> int:
    sys_ = _system(args)
    spec = build_diagram(sys_)
    text = render_svg(spec) if args.format == "svg" else render_ascii(spec)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    rep = verify_counterexample(Path(args.data_dir) if args.data_dir else None)
    theta = cutting_vector(Path(args.data_dir) if args.data_dir else None)
    if args.json:
        _emit({
            "passed": rep.passed,
            "checksums_ok": rep.checksums_ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks],
            "theta_hat": {"passed": theta.passed, "value_on_m": str(theta.value_on_m)},
        })
    else:
        for c in rep.checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        print(f"{'PASS' if theta.passed else 'FAIL'}  cutting vector: <theta, m> = {theta.value_on_m}")
        if not rep.checksums_ok:
            print("WARN  data files differ from the pinned checksums")
        print(f"{sum(c.passed for c in rep.checks)}/{len(rep.checks)} checks passed")
    return EXIT_OK if rep.passed and rep.checksums_ok else EXIT_CHECK


def cmd_min_balanced(args) -> int:
    ground = _n_in_range(args)
    systems = enumerate_min_balanced(ground, allow_n6=args.allow_n6)
    if args.json:
        _emit({"players": list(ground.labels), "count": len(systems),
               "systems": [system_to_json(s)["sets"] for s in systems]})
    else:
        print(f"{len(systems)} min-balanced systems on {ground.n} players (backend: {_kernels.backend()})")
        if args.list:
            for s in systems:
                print(f"  {s}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    ground = _ground(args)
    if not 2 <= ground.n <= MAX_BRUTE_N:
        raise ArgumentError(f"the brute-force oracle needs 2 <= n <= {MAX_BRUTE_N}")
    brute = {s.sets for s in brute_force_min_semi_balanced(ground)}
    gen = {s.sets for s in min_semi_balanced_catalogue(ground)}
    same = brute == gen
    cat = enumerate_facets(ground)
    disagree = 0
    for m in random_corpus(ground, args.games, seed=args.seed):
        if exactness(m).is_exact != is_exact_via_facets(m, cat):
            disagree += 1
    result = {
        "n": ground.n,
        "brute_force_systems": len(brute),
        "generator_systems": len(gen),
        "catalogues_equal": same,
        "games": args.games,
        "seed": args.seed,
        "exactness_disagreements": disagree,
    }
    if args.json:
        _emit(result)
    else:
        print(f"min-semi-balanced systems: brute force {len(brute)}, generator {len(gen)} -> {'equal' if same else 'DIFFERENT'}")
        print(f"exactness vs facet inequalities on {args.games} games (seed {args.seed}): {disagree} disagreements")
    return EXIT_OK if same and not disagree else EXIT_CHECK


# -- parser -----------------------------------------------------------------------


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags without defaults so they never mask the top-level ones
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    common.add_argument("--seed", type=int, default=d(0), help="seed for the random game corpus")
    common.add_argument("--jobs", type=int, default=d(1), help="worker processes for per-coalition LPs")
    common.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="exactcone", description=__doc__.splitlines()[0], parents=[_global_flags(False)])
    common = _global_flags(True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def players(sp):
        sp.add_argument("--n", type=int, help="number of players (labels a, b, c, ...)")
        sp.add_argument("--players", help="comma-separated player labels")

    def system(sp):
        players(sp)
        sp.add_argument("--system", help='set system such as "{a,ab,bc,abd}"')
        sp.add_argument("--file", help='JSON system file {"players": [...], "sets": [...]}, "-" for stdin')

    sp = sub.add_parser("analyze", parents=[common], help="analyze one set system")
    system(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("facets", parents=[common], help="facet catalogue of the exact cone")
    players(sp)
    sp.add_argument("--types", action="store_true", help="list one representative per permutational type")
    sp.add_argument("--progress", action="store_true", help="progress on stderr")
    sp.add_argument("--allow-n6", action="store_true", help="permit the long n = 6 run")
    sp.set_defaults(func=cmd_facets)

    sp = sub.add_parser("check-game", parents=[common], help="certify a game from a JSON file")
    sp.add_argument("game", help='JSON game file {"players": [...], "values": {...}}, "-" for stdin')
    sp.add_argument("--balanced", action="store_true")
    sp.add_argument("--totally-balanced", dest="totally_balanced", action="store_true")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--anti-dual", dest="anti_dual", metavar="OUT", help="write the anti-dual game to OUT")
    sp.set_defaults(func=cmd_check_game)

    sp = sub.add_parser("diagram", parents=[common], help="box diagram of a min-semi-balanced system")
    system(sp)
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.add_argument("--out", help="write to a file instead of stdout")
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("verify-counterexample", parents=[common], help="verify the bundled six-player game")
    sp.add_argument("--data-dir", help="read the four data files from this directory instead")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("min-balanced", parents=[common], help="enumerate min-balanced systems")
    players(sp)
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--allow-n6", action="store_true")
    sp.set_defaults(func=cmd_min_balanced)

    sp = sub.add_parser("oracle", parents=[common], help="brute-force cross-checks for n <= 4")
    players(sp)
    sp.add_argument("--games", type=int, default=100, help="random games for the exactness cross-check")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.jobs < 1:
            raise ArgumentError("--jobs must be positive")
        return args.func(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (ParseError, MissingValue) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotMinimal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except GroundTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except ValueError as exc:
        # invalid system text (duplicates, trivial sets) or player labels
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
