"""Command-line driver.

Exit codes: 0 success, 1 usage error, 2 input or domain error (parse
failure, odd cycle, bad matching), 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .corpus import CORPUS, corpus_graph
from .graph import Graph, GraphError, bipartition, edge_name, enumerate_cycles, parse_edge_name, parse_graph
from .groebner import height
from .liaison import ChainVerificationError, pom_order, run_chain
from .pom import EMPTY_POM, PomError, extend_pom, is_maximal, validate_pom
from .poly import LexOrder
from .simplicial import NotVD, complex_of, is_vertex_decomposable, replay_witness
from .pom import build_I
from .toric import toric_ideal
from .verdict import HypothesisViolation

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    graph: Graph
    fmt: str = "text"
    verify: bool = True
    vd: bool = True
    max_cycles: int | None = None
    seed_pom: tuple[int, ...] | None = None
    order: LexOrder | None = None
    sub: str | None = None
    output: Path | None = None


def _edge_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(parse_edge_name(t) for t in text.replace(",", " ").split())
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def _load_graph(args) -> Graph:
    sources = [s for s in (args.input, args.graph, args.corpus) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of INPUT, --graph, --corpus")
    if args.corpus is not None:
        if args.corpus not in CORPUS:
            raise UsageError(f"unknown corpus graph {args.corpus!r}; known: {', '.join(CORPUS)}")
        return corpus_graph(args.corpus)
    if args.graph is not None:
        return parse_graph(args.graph.replace("\\n", "\n").replace(";", "\n"))
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    return parse_graph(text)


def _config(args) -> RunConfig:
    if args.max_cycles is not None and args.max_cycles < 0:
        raise UsageError("--max-cycles must be nonnegative")
    seed = _edge_list(args.seed_pom) if getattr(args, "seed_pom", None) else None
    order_list = _edge_list(args.order) if getattr(args, "order", None) else None
    g = _load_graph(args)
    order = None
    if order_list is not None:
        if sorted(order_list) != list(g.edge_ids):
            raise UsageError("--order must list every edge exactly once")
        order = LexOrder(order_list)
    if seed is not None:
        unknown = [e for e in seed if not g.has_edge(e)]
        if unknown:
            raise UsageError("--seed-pom names unknown edges " + ", ".join(map(edge_name, unknown)))
    return RunConfig(
        command=args.command,
        graph=g,
        fmt=args.format,
        verify=not getattr(args, "no_verify", False),
        vd=not getattr(args, "no_vd", False),
        max_cycles=args.max_cycles,
        seed_pom=seed,
        order=order,
        sub=getattr(args, "sub", None),
        output=Path(args.output) if getattr(args, "output", None) else None,
    )


def _order(cfg: RunConfig) -> LexOrder:
    return cfg.order or LexOrder.default(cfg.graph.edge_ids)


# commands: each returns (report, text lines, exit code) ----------------------------


def cmd_cycles(cfg: RunConfig):
    g = cfg.graph
    bipartition(g)
    cycles = enumerate_cycles(g, max_cycles=cfg.max_cycles)
    report = {"graph": g.to_json_obj(), "cycles": [[edge_name(e) for e in c] for c in cycles]}
    lines = [f"{len(cycles)} cycle(s)"] + [" ".join(edge_name(e) for e in c) for c in cycles]
    return report, lines, EXIT_OK


def cmd_toric(cfg: RunConfig):
    P = toric_ideal(cfg.graph, _order(cfg), max_cycles=cfg.max_cycles)
    report = {"order": [edge_name(v) for v in P.order.priority], "generators": P.strings()}
    lines = [f"order: {P.order}", f"{len(P.generators)} generator(s)"] + P.strings()
    return report, lines, EXIT_OK


def cmd_gb(cfg: RunConfig):
    P = toric_ideal(cfg.graph, _order(cfg), max_cycles=cfg.max_cycles)
    report = {
        "order": [edge_name(v) for v in P.order.priority],
        "groebner_basis": P.gb_strings(),
        "initial_ideal": P.initial.strings(),
        "height": height(P),
    }
    lines = [
        f"order: {P.order}",
        "reduced Groebner basis:",
        *("  " + s for s in P.gb_strings()),
        f"initial ideal: {P.initial}",
        f"height: {report['height']}",
    ]
    return report, lines, EXIT_OK


def cmd_pom(cfg: RunConfig):
    g = cfg.graph
    if cfg.sub == "validate":
        if cfg.seed_pom is None:
            raise UsageError("pom validate needs --seed-pom")
        pom = validate_pom(g, cfg.seed_pom)
    elif cfg.sub == "extend":
        if cfg.seed_pom is None:
            raise UsageError("pom extend needs --seed-pom")
        pom = extend_pom(g, validate_pom(g, cfg.seed_pom))
    else:
        if g.q == 0:
            pom = EMPTY_POM
        else:
            start = validate_pom(g, cfg.seed_pom or (min(g.edge_ids),))
            pom = extend_pom(g, start)
    maximal = is_maximal(g, pom)
    report = {"status": "ok", "pom": pom.to_json_obj(), "length": pom.r, "maximal": maximal}
    labels = ", ".join(f"{old}->{new}" for old, new in sorted(pom.labeling.items()))
    lines = [f"OK {pom} length {pom.r}{' (maximal)' if maximal else ''}", f"labeling: {labels}"]
    return report, lines, EXIT_OK


def cmd_chain(cfg: RunConfig):
    try:
        cert = run_chain(
            cfg.graph,
            verify=cfg.verify,
            seed_pom=cfg.seed_pom,
            base_order=cfg.order,
            max_cycles=cfg.max_cycles,
            check_vd=cfg.vd,
        )
    except ChainVerificationError as exc:
        report = {"status": "verification_failed", "error": str(exc), "step": exc.step.to_json_obj()}
        return report, [f"VERIFICATION FAILED: {exc}"], EXIT_VERIFY
    report = cert.to_json_obj()
    s = cert.summary()
    lines = [
        f"biliaisons: {s['biliaisons']}, splits: {s['splits']}, leaf strips: {s['leaf_strips']}",
        f"complete intersection: ({', '.join(s['complete_intersection'])})",
        f"height: {s['height']}",
    ]
    for step in cert.steps:
        text = f"[{step.stage}] {step.kind}"
        if step.pom is not None:
            text += f" pom={step.pom}"
        if step.s is not None:
            text += f" s={step.s}"
        if "x" in step.info:
            text += f" x={step.info['x']}"
        if step.verdicts:
            text += " " + ("OK" if step.ok else "FAIL")
        lines.append(text)
    return report, lines, EXIT_OK if cert.ok else EXIT_VERIFY


def cmd_vd(cfg: RunConfig):
    g = cfg.graph
    bipartition(g)
    pom = validate_pom(g, cfg.seed_pom) if cfg.seed_pom else EMPTY_POM
    order = pom_order(_order(cfg), pom)
    I = build_I(g, pom, order)
    cx = complex_of(I.initial, g.edge_ids)
    witness = is_vertex_decomposable(cx)
    ok = not isinstance(witness, NotVD)
    report = {
        "pom": pom.to_json_obj(),
        "order": [edge_name(v) for v in order.priority],
        "initial_ideal": I.initial.strings(),
        "complex": cx.to_json_obj(),
        "vertex_decomposable": ok,
        "witness": witness.to_json_obj(),
        "witness_replays": ok and replay_witness(cx, witness),
    }
    lines = [
        f"initial ideal: {I.initial}",
        f"facets: {len(cx.facets)}, dim {cx.dim}",
        "vertex decomposable" if ok else f"NOT vertex decomposable: {witness.reason}",
    ]
    if ok and hasattr(witness, "shed"):
        lines.append(f"first shedding vertex: {edge_name(witness.shed)}")
    return report, lines, EXIT_OK if ok else EXIT_VERIFY


def cmd_corpus(args) -> int:
    names = args.names or list(CORPUS)
    unknown = [n for n in names if n not in CORPUS]
    if unknown:
        raise UsageError(f"unknown corpus graph(s): {', '.join(unknown)}")
    rows = []
    code = EXIT_OK
    for name in names:
        try:
            cert = run_chain(corpus_graph(name), check_vd=not args.no_vd)
            rows.append({"name": name, **cert.summary()})
        except ChainVerificationError as exc:
            rows.append({"name": name, "ok": False, "error": str(exc)})
            code = EXIT_VERIFY
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            if "error" in row:
                print(f"{row['name']:<12} FAIL {row['error']}")
            else:
                ci = ",".join(row["complete_intersection"])
                print(f"{row['name']:<12} {'OK' if row['ok'] else 'FAIL'} height={row['height']} "
                      f"biliaisons={row['biliaisons']} splits={row['splits']} CI=({ci})")
    return code


COMMANDS = {"cycles": cmd_cycles, "toric": cmd_toric, "gb": cmd_gb, "pom": cmd_pom, "chain": cmd_chain, "vd": cmd_vd}


def _add_common(p: argparse.ArgumentParser, *, order=False, seed=False) -> None:
    p.add_argument("input", nargs="?", help="edge-list or JSON graph file ('-' for stdin)")
    p.add_argument("--graph", help="inline edge list, lines separated by ';' or '\\n'")
    p.add_argument("--corpus", help="use a named corpus graph")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-cycles", type=int, default=None, metavar="N")
    p.add_argument("-v", "--verbose", action="store_true")
    if order:
        p.add_argument("--order", help="edge priority list, highest first, e.g. 'e3,e1,e2'")
    if seed:
        p.add_argument("--seed-pom", help="ordered matching edges, e.g. 'e1,e5'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricliaison", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_common(subs.add_parser("cycles", help="list simple cycles"))
    _add_common(subs.add_parser("toric", help="generators of the toric ideal"), order=True)
    _add_common(subs.add_parser("gb", help="reduced Groebner basis, initial ideal, height"), order=True)
    p = subs.add_parser("pom", help="path ordered matchings")
    p.add_argument("sub", choices=("find", "validate", "extend"))
    _add_common(p, seed=True)
    p = subs.add_parser("chain", help="G-biliaison chain certificate")
    _add_common(p, order=True, seed=True)
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--no-vd", action="store_true", help="skip vertex decomposability checks")
    p.add_argument("-o", "--output", help="write the certificate here instead of stdout")
    _add_common(subs.add_parser("vd", help="vertex decomposability of the initial complex"), order=True, seed=True)
    p = subs.add_parser("corpus", help="run the chain over the built-in corpus")
    p.add_argument("names", nargs="*")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-vd", action="store_true")
    return parser


def _emit(cfg: RunConfig, report: dict, lines: list[str]) -> None:
    as_json = json.dumps(report, indent=2) + "\n"
    if cfg.output:
        # the file always gets the JSON certificate; stdout keeps the text summary
        cfg.output.write_text(as_json)
        if cfg.fmt == "text":
            sys.stdout.write("\n".join(lines) + "\n")
        return
    sys.stdout.write(as_json if cfg.fmt == "json" else "\n".join(lines) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "corpus":
            return cmd_corpus(args)
        cfg = _config(args)
        report, lines, code = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"toricliaison: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, PomError, HypothesisViolation, OSError) as exc:
        print(f"toricliaison: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(cfg, report, lines)
    return code


if __name__ == "__main__":
    sys.exit(main())
