"""Command-line entry point: ``llshom solve|verify|generate|reduce|selftest``.

Exit codes: 0 solved or verified, 1 verification reject or failed audit,
2 error, parse failure or exhausted budget.  Errors are reported on stderr
as a single ``error: <code>: <message>`` line.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import __version__
from .exact import solve_auto, solve_bruteforce, solve_poly
from .formats import (
    ParseError,
    read_cnf,
    read_file,
    read_graph,
    read_instance,
    read_solution,
    write_file,
    write_instance,
    write_solution,
    write_td,
)
from .gadgets import (
    GadgetTooLarge,
    degree3_spacing,
    gen_general_h_girth,
    gen_general_h_pathfree,
    gen_k13,
    gen_k2loops,
    gen_nae_p3,
    gen_p4,
)
from .graph import Graph, find_induced, girth, max_degree, parse_pattern, path_graph
from .instance import (
    Instance,
    find_star_base,
    is_consistent,
    lift_to_base,
    reduce_c4_to_p3,
)
from .result import Status
from .treewidth import decompose
from .verify import verify_solution

log = logging.getLogger("llshom")


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _read(path: str) -> str:
    try:
        return read_file(path)
    except OSError as exc:
        raise CliError("io", f"{path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        write_file(path, text)
    except OSError as exc:
        raise CliError("io", f"{path}: {exc.strerror}") from None


def _load_instance(path: str) -> Instance:
    try:
        return read_instance(_read(path))
    except ParseError as exc:
        raise CliError("parse", f"{path}: {exc}") from None


# --------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    if args.threads is not None:
        os.environ["LLSHOM_THREADS"] = str(args.threads)
    forbidden = None
    if args.forbidden:
        try:
            forbidden = parse_pattern(args.forbidden)
        except ValueError as exc:
            raise CliError("pattern", str(exc)) from None
    if args.emit_td:
        _write(args.emit_td, write_td(decompose(inst.source), inst.source.n))

    algo = args.algorithm
    if algo == "auto":
        res = solve_auto(inst, forbidden, args.budget)
    elif algo == "brute":
        res = solve_bruteforce(inst, args.budget)
    elif algo == "poly":
        res = solve_poly(inst)
    else:
        from .subexp import solve_c4, solve_p3

        solver = solve_p3 if algo == "p3" else solve_c4
        try:
            res = solver(inst, forbidden, args.threads)
        except ValueError as exc:
            raise CliError("target", str(exc)) from None

    if res.status is Status.NOT_APPLICABLE:
        raise CliError("not-applicable", f"algorithm {algo} does not handle this target")
    print(f"s {res.status.value}")
    if args.stats:
        for key in sorted(res.stats):
            print(f"c {key} {res.stats[key]}")
    if res.status is Status.BUDGET_EXCEEDED:
        return 2
    if res.yes and args.witness:
        _write(args.witness, write_solution(res.witness))
    return 0


# --------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    try:
        h = read_solution(_read(args.solution), inst.source.n)
    except ParseError as exc:
        raise CliError("parse", f"{args.solution}: {exc}") from None
    for v, a in enumerate(h):
        if not 0 <= a < inst.target.n:
            raise CliError("parse", f"vertex {v} mapped to unknown target vertex {a}")
    verdict = verify_solution(inst, h)
    if verdict:
        print("s VALID")
        return 0
    print(f"s INVALID {verdict.message}")
    return 1


# --------------------------------------------------------------------------
# generate

_FREE = {"k13": 10, "p4": 14, "k2loops": 12}


def _audit(kind: str, out) -> list[tuple[str, bool, str]]:
    g = out.instance.source
    rows = []
    if kind in _FREE:
        k = _FREE[kind]
        found = find_induced(g, path_graph(k))
        rows.append((f"P{k}-free", found is None, "none" if found is None else str(found)))
    elif kind == "nae-p3":
        p = out.info["p"]
        d, gi, sp = max_degree(g), girth(g), degree3_spacing(g)
        rows.append(("max-degree", d == 3, str(d)))
        rows.append(("girth", gi >= p, str(gi)))
        rows.append(("degree3-spacing", sp >= p, str(sp)))
    elif kind == "general-girth":
        p = out.info["p"]
        gi = girth(g)
        rows.append(("girth", gi >= p, str(gi)))
        rows.append(("max-degree", True, str(max_degree(g))))
    text = write_instance(out.instance)
    rows.append(("roundtrip", write_instance(read_instance(text)) == text, "lsi"))
    return rows


def cmd_generate(args) -> int:
    try:
        f = read_cnf(_read(args.cnf))
    except ParseError as exc:
        raise CliError("parse", f"{args.cnf}: {exc}") from None
    target = None
    if args.kind in ("general-path", "general-girth"):
        if not args.target:
            raise CliError("usage", f"{args.kind} needs --target")
        try:
            target = read_graph(_read(args.target))
        except ParseError as exc:
            raise CliError("parse", f"{args.target}: {exc}") from None
    try:
        if args.kind == "k13":
            out = gen_k13(f)
        elif args.kind == "p4":
            out = gen_p4(f)
        elif args.kind == "k2loops":
            out = gen_k2loops(f)
        elif args.kind == "nae-p3":
            out = gen_nae_p3(f, args.p if args.p is not None else 1)
        elif args.kind == "general-path":
            out = gen_general_h_pathfree(f, target, via_star=True)
        else:
            out = gen_general_h_girth(f, target, args.p)
    except GadgetTooLarge as exc:
        raise CliError("too-large", str(exc)) from None
    except ValueError as exc:
        raise CliError("target", str(exc)) from None
    _write(args.output, write_instance(out.instance))
    if args.annotations:
        _write(args.annotations, out.annotations_text())
    print(f"c vertices {out.instance.source.n} edges {out.instance.source.m}")
    status = 0
    if args.audit:
        for name, ok, value in _audit(args.kind, out):
            print(f"c audit {name} {'pass' if ok else 'fail'} {value}")
            if not ok:
                status = 1
    return status


# --------------------------------------------------------------------------
# reduce


def cmd_reduce(args) -> int:
    inst = _load_instance(args.instance)
    outputs = args.output or []
    if args.to_p3:
        if len(outputs) != 2:
            raise CliError("usage", "--to-p3 writes two instances; give -o twice")
        try:
            red = reduce_c4_to_p3(inst)
        except ValueError as exc:
            raise CliError("not-consistent", str(exc)) from None
        _write(outputs[0], write_instance(red.first))
        _write(outputs[1], write_instance(red.second))
        return 0
    if len(outputs) != 1:
        raise CliError("usage", "--lift writes one instance; give -o once")
    found = find_star_base(inst.target)
    if found is None:
        raise CliError("target", "target is not an associated bipartite graph")
    base, iso = found
    std = Instance(
        Graph(inst.target.n, ((iso[u], iso[v]) for u, v in inst.target.edges)),
        inst.source,
        tuple(frozenset(iso[a] for a in l) for l in inst.lists),
    )
    try:
        lifted = lift_to_base(std, base)
    except ValueError as exc:
        raise CliError("not-consistent", str(exc)) from None
    _write(outputs[0], write_instance(lifted))
    return 0


# --------------------------------------------------------------------------
# selftest


def cmd_selftest(args) -> int:
    from .acceptance import SUITES, run

    results = run(SUITES[args.suite], args.seed, report=lambda line: print(line, flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"s {'PASS' if not failed else 'FAIL'} {len(results) - len(failed)}/{len(results)}")
    return 1 if failed else 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .acceptance import DEFAULT_SEED

    parser = _Parser(prog="llshom", description="List locally surjective homomorphism tools")
    parser.add_argument("--version", action="version", version=f"llshom {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--algorithm", default="auto", choices=["auto", "brute", "poly", "p3", "c4"])
    p.add_argument("--budget", type=int, help="node budget for brute force")
    p.add_argument("--witness", help="write the solution here (.lsm)")
    p.add_argument("--forbidden", help='forest the source excludes, e.g. "S(2,2,2)+P4"')
    p.add_argument("--stats", action="store_true", help="print solver counters")
    p.add_argument("--threads", type=int, help="worker processes (default: LLSHOM_THREADS or 1)")
    p.add_argument("--emit-td", dest="emit_td", help="write a decomposition of the source graph")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="build a reduction instance from a CNF formula")
    p.add_argument("kind", choices=["k13", "p4", "k2loops", "nae-p3", "general-path", "general-girth"])
    p.add_argument("--cnf", required=True)
    p.add_argument("--target", help="target graph (.lsg) for the general constructions")
    p.add_argument("--p", type=int, help="girth parameter")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--annotations", help="write vertex roles here")
    p.add_argument("--audit", action="store_true", help="run the structural audits")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="C4-to-P3 split or lift from H* to H")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--to-p3", dest="to_p3", action="store_true")
    mode.add_argument("--lift", action="store_true")
    p.add_argument("--instance", required=True)
    p.add_argument("-o", "--output", action="append")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--suite", default="all", choices=["oracle", "gadgets", "structural", "all"])
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError("usage", "a command is required")
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.WARNING,
            format="%(name)s: %(message)s",
        )
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: invalid: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
