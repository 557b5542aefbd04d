"""Command line interface: ``ppk <subcommand> ...``.

Exit codes: 0 success, 1 rejected or false, 2 bad input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .cayley import build_cayley_graph, coset_enumerate
from .conditions import check_generic, check_special, search_special_decoration
from .crossing import find_crossing
from .embedding import (
    RotationSystem,
    extract_special_presentation,
    hinge_separation,
    planarity_test,
)
from .enumeration import Budget, enumerate_planar
from .errors import (
    BudgetExceeded,
    NotConsistent,
    NotPlanar,
    NotThreeConnected,
    PPKError,
    SearchBudgetExceeded,
)
from .oracle import crossing_oracle
from .presentation import format_presentation, parse_presentation, parse_word
from .serialization import (
    decoration_to_json,
    graph_to_dot,
    graph_to_graphml,
    load_decoration,
    read_graph,
)
from .spin import SpecialDecoration, as_generic, hinges

OK, FALSE, INPUT, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _config_defaults(path: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(_read(path).splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value.strip('"')
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check(args) -> int:
    p, d = load_decoration(_read(args.decoration))
    if args.kind == "special":
        if not isinstance(d, SpecialDecoration):
            raise InputError("a special check needs a decoration without blocks")
        verdict = check_special(p, d)
    else:
        verdict = check_generic(p, d, strict_factors=args.strict_factors)
    print(_dump(verdict.to_json()))
    return OK if verdict.accepted else FALSE


def cmd_cross(args) -> int:
    p, d = load_decoration(_read(args.decoration))
    w, z = parse_word(args.w, p.generators), parse_word(args.z, p.generators)
    if args.oracle:
        crosses = crossing_oracle(w, z, d)
        witness = None
    else:
        witness = find_crossing(w, z, d)
        crosses = witness is not None
    if args.json:
        print(_dump({"result": "cross" if crosses else "nested", "alignment": witness.to_json() if witness else None}))
    else:
        print("cross" if crosses else "nested")
        if witness:
            print(_dump(witness.to_json()))
    return FALSE if crosses else OK


def cmd_find_special(args) -> int:
    p = parse_presentation(_read(args.presentation))
    d = search_special_decoration(p, max_candidates=args.max_candidates)
    if d is None:
        print("none")
        return FALSE
    print(_dump(decoration_to_json(p, d)))
    return OK


def cmd_enumerate(args) -> int:
    budget = Budget(args.max_generators, args.max_relators, args.max_total_length, args.limit)
    with contextlib.ExitStack() as stack:
        out = sys.stdout if args.out in (None, "-") else stack.enter_context(open(args.out, "w"))
        for item in enumerate_planar(args.kind, budget):
            record = {
                "presentation": format_presentation(item.presentation),
                "decoration": decoration_to_json(item.parent or item.presentation, item.decoration),
                "parent": format_presentation(item.parent) if item.parent else None,
                "removed": list(item.removed),
            }
            out.write(_dump(record) + "\n")
            out.flush()
    return OK


def cmd_cayley(args) -> int:
    p = parse_presentation(_read(args.presentation))
    g = build_cayley_graph(p, coset_enumerate(p, args.max_cosets))
    text = graph_to_graphml(g) if args.out and args.out.endswith(".graphml") else graph_to_dot(g)
    _write(args.out, text)
    return OK


def cmd_planar(args) -> int:
    g = read_graph(_read(args.input))
    result = planarity_test(g)
    report = {"planar": result.planar}
    if result.planar:
        report["faces"] = result.faces
        if args.emit_rotation:
            _write(args.emit_rotation, _dump(result.rotation.to_json(g)) + "\n")
    else:
        report["kuratowski"] = result.kuratowski
        report["witness_edges"] = result.witness
    if args.json:
        print(_dump(report))
    else:
        print(f"planar: {str(result.planar).lower()}")
        if not result.planar:
            print(f"witness: {result.kuratowski} subdivision on edges {result.witness}")
    return OK if result.planar else FALSE


def cmd_extract(args) -> int:
    g = read_graph(_read(args.input))
    rot = RotationSystem.from_json(json.loads(_read(args.rotation)), g)
    try:
        p, d = extract_special_presentation(g, rot)
    except (NotConsistent, NotThreeConnected, NotPlanar) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FALSE
    _write(args.out, format_presentation(p) + "\n")
    if args.decoration_out:
        _write(args.decoration_out, _dump(decoration_to_json(p, d)) + "\n")
    return OK


def cmd_verify(args) -> int:
    p, d = load_decoration(_read(args.decoration))

    def stage(name: str, ok: bool, **info) -> None:
        if args.json:
            print(_dump({"stage": name, "ok": ok, **info}))
        else:
            extra = "".join(f" {k}={v}" for k, v in info.items())
            print(f"{name}: {'pass' if ok else 'fail'}{extra}")

    if args.json:
        print(_dump({"ppk": __version__}))
    verdict = (
        check_special(p, d) if isinstance(d, SpecialDecoration) and args.special else check_generic(p, as_generic(d))
    )
    stage("check", verdict.accepted, failures=len(verdict.failures))
    if not verdict.accepted:
        return FALSE
    try:
        table = coset_enumerate(p, args.max_cosets)
    except BudgetExceeded:
        stage("cosets", False, reason=f"more than {args.max_cosets} cosets, group treated as infinite")
        return BUDGET
    stage("cosets", True, cosets=len(table))
    g = build_cayley_graph(p, table)
    stage("graph", True, vertices=g.n, edges=len(g.edges))
    result = planarity_test(g)
    stage("planar", result.planar, planar=str(result.planar).lower())
    if not result.planar:
        return FALSE
    colors = sorted({x.gen for x in hinges(as_generic(d).structure)})
    stage("hinges", hinge_separation(g, colors), colors=",".join(colors) or "none")
    return OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", help="file of key=value defaults; flags override")
    common.add_argument("--threads", type=int, default=1, help="worker count (work is done serially)")

    parser = argparse.ArgumentParser(prog="ppk", description="Planar presentations toolkit.")
    parser.add_argument("--version", action="version", version=f"ppk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check a decorated presentation")
    s.add_argument("--kind", choices=["special", "generic"], required=True)
    s.add_argument("--decoration", required=True)
    s.add_argument("--strict-factors", action="store_true", help="also forbid factors of inverse relators")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cross", parents=[common], help="decide whether two relators cross")
    s.add_argument("--decoration", required=True)
    s.add_argument("--w", required=True)
    s.add_argument("--z", required=True)
    s.add_argument("--oracle", action="store_true", help="use explicit tree construction")
    s.set_defaults(func=cmd_cross)

    s = sub.add_parser("find-special", parents=[common], help="search for a special decoration")
    s.add_argument("--presentation", required=True)
    s.add_argument("--max-candidates", type=int)
    s.set_defaults(func=cmd_find_special)

    s = sub.add_parser("enumerate", parents=[common], help="stream planar presentations as JSON lines")
    s.add_argument("--kind", choices=["special", "generic", "general"], required=True)
    s.add_argument("--max-generators", type=int, required=True)
    s.add_argument("--max-relators", type=int, required=True)
    s.add_argument("--max-total-length", type=int, required=True)
    s.add_argument("--limit", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("cayley", parents=[common], help="build the Cayley graph of a finite group")
    s.add_argument("--presentation", required=True)
    s.add_argument("--max-cosets", type=int, default=10_000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_cayley)

    s = sub.add_parser("planar", parents=[common], help="test a graph for planarity")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--emit-rotation")
    s.set_defaults(func=cmd_planar)

    s = sub.add_parser("extract", parents=[common], help="read a presentation off a planar embedding")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--rotation", required=True)
    s.add_argument("--out")
    s.add_argument("--decoration-out")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("verify", parents=[common], help="check, enumerate, embed and test hinges")
    s.add_argument("--decoration", required=True)
    s.add_argument("--max-cosets", type=int, default=10_000)
    s.add_argument("--special", action="store_true", help="use the special check for special decorations")
    s.set_defaults(func=cmd_verify)
    return parser


def _parse(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    # config defaults must be in place before argparse checks required flags
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    config = pre.parse_known_args(argv)[0].config
    command = next((a for a in argv if not a.startswith("-")), None)
    subparsers = parser._subparsers._group_actions[0].choices
    if config and command in subparsers:
        subparser = subparsers[command]
        known = {a.dest: a for a in subparser._actions}
        defaults = _config_defaults(config)
        unknown = sorted(set(defaults) - set(known))
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}")
        for key, value in defaults.items():
            action = known[key]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = value.lower() in ("1", "true", "yes")
            elif action.type is not None:
                defaults[key] = action.type(value)
            action.required = False
        subparser.set_defaults(**defaults)
    args = parser.parse_args(argv)
    if args.threads < 1:
        raise InputError("--threads must be positive")
    return args


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _parse(parser, argv)
        return args.func(args)
    except SystemExit as exc:
        return INPUT if exc.code not in (0, None) else OK
    except (BudgetExceeded, SearchBudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except (InputError, PPKError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
