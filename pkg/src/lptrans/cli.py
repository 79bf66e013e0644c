"""Command-line entry point.

Every command prints a report of ``key: value`` lines (or one JSON object
with ``--json``) that starts with the tool version, the input hash and the
seed, so a run can be replayed from its report alone.

Exit codes: 0 success, 1 unreadable or malformed input, 2 class membership
failure, 3 oracle size limit, 4 bound or claim violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from . import __version__
from .errors import BudgetExhausted, ClassMembershipError, HypothesisError, LptError, SizeLimitError
from .generators import (
    HOST_NAMES,
    fixture_text,
    gen_chordal,
    gen_circular_arc,
    gen_class_filtered,
    gen_hgraph,
    gen_interval,
)
from .graph import Graph, format_edge_list, parse_edge_list
from .hgraph import dump_representation, extract_q, is_nice, normalize_nice, parse_representation, realize, verify_claims
from .oracle import ENUM_LIMIT, count_longest_paths, exact_lpt, longest_path_length
from .pipelines import bullchair_transversal, chordal_refined_transversal, ptfree_transversal
from .recognizers import PATTERNS, matched_clique_index
from .suites import SUITES, run_suite
from .treewidth import parse_pace

EXIT_OK, EXIT_INPUT, EXIT_CLASS, EXIT_SIZE, EXIT_VIOLATION = 0, 1, 2, 3, 4

PIPELINE_CLASSES = ("p5free", "p6free", "bullchair", "chordal")
FIXTURES = {"walther-zamfirescu": "walther_zamfirescu"}


class Report:
    """Ordered key/value report; values are rendered the same way in both outputs."""

    def __init__(self, command: str, data: bytes | None = None, seed: int | None = None):
        self.items: list[tuple[str, object]] = [
            ("tool", f"lptrans {__version__}"),
            ("command", command),
            ("input_sha256", hashlib.sha256(data).hexdigest() if data is not None else "none"),
            ("seed", seed if seed is not None else "none"),
        ]

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps({k: _jsonable(v) for k, v in self.items}, sort_keys=False) + "\n"
        return "".join(f"{k}: {_text(v)}\n" for k, v in self.items)


def _jsonable(v):
    if isinstance(v, (frozenset, set)):
        return sorted(v)
    if isinstance(v, tuple):
        return list(v)
    return v


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (frozenset, set)):
        return " ".join(map(str, sorted(v))) or "-"
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v)) or "-"
    return str(v)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None


class _InputError(Exception):
    pass


def _load_graph(path: str) -> tuple[Graph, bytes]:
    data = _read(path)
    return parse_edge_list(data.decode("utf-8")), data


def _certificate(report: Report, cert) -> None:
    report.add("certificate", cert.transversal)
    report.add("size", len(cert))
    report.add("bound", cert.bound_claimed)
    report.add("method", cert.method)
    report.add("branch", cert.branch)
    report.add("verified", cert.verified)


# -- commands -----------------------------------------------------------------------

def cmd_oracle(args) -> tuple[Report, int]:
    g, data = _load_graph(args.graph)
    report = Report("oracle", data)
    report.add("n", g.n)
    report.add("m", g.m)
    report.add("longest_path_length", longest_path_length(g))
    report.add("longest_path_count", count_longest_paths(g) if g.n <= ENUM_LIMIT else None)
    k, witness = exact_lpt(g, limit=args.limit)
    report.add("lpt", k)
    report.add("witness", witness)
    report.add("verified", True)
    return report, EXIT_OK


def cmd_pipeline(args) -> tuple[Report, int]:
    g, data = _load_graph(args.graph)
    report = Report(f"pipeline {args.cls}", data)
    report.add("n", g.n)
    report.add("m", g.m)
    if args.cls == "p5free":
        cert = ptfree_transversal(g, 5)
    elif args.cls == "p6free":
        cert = ptfree_transversal(g, 6)
    elif args.cls == "bullchair":
        cert = bullchair_transversal(g)
    else:
        cert = chordal_refined_transversal(g)
        report.add("matched_clique_index", matched_clique_index(g))
    _certificate(report, cert)
    bad = not cert.verified or (cert.bound_claimed is not None and len(cert) > cert.bound_claimed)
    return report, EXIT_VIOLATION if bad else EXIT_OK


def cmd_hgraph_extract(args) -> tuple[Report, int]:
    data = _read(args.rep)
    rep = parse_representation(data.decode("utf-8"))
    td = None
    if args.td:
        td_data = _read(args.td)
        data += td_data
        td = parse_pace(td_data.decode("utf-8"))
    report = Report("hgraph extract", data)
    if not is_nice(rep):
        if not args.normalize:
            raise HypothesisError("representation is not nice; rerun with --normalize")
        rep = normalize_nice(rep)
        report.add("normalized", True)
    g = realize(rep)
    report.add("host_vertices", rep.h.n)
    report.add("host_edges", rep.h.m)
    report.add("subdivided_vertices", rep.h_phi.n)
    report.add("n", g.n)
    report.add("m", g.m)
    cert, trace = extract_q(rep, td)
    claims = verify_claims(trace, g)
    report.add("bag", [rep.labels[x] for x in trace.x_bag])
    for key, value in trace.summary().items():
        report.add(key, value)
    _certificate(report, cert)
    report.add("claim1", all(claims.claim1.values()))
    report.add("claim2", claims.claim2)
    report.add("cliques", claims.cliques)
    report.add("q_meets_every_vx", claims.q_meets_every_vx)
    for note in trace.notes:
        report.add("note", note)
    report.add("claims_ok", claims.ok)
    return report, EXIT_OK if claims.ok and cert.verified else EXIT_VIOLATION


def _emit(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_gen(args) -> tuple[Report | None, int]:
    kind = args.kind
    if kind == "fixture":
        name = FIXTURES.get(args.name or "")
        if name is None:
            raise _InputError(f"unknown fixture {args.name!r}; expected one of {sorted(FIXTURES)}")
        _emit(args.out, fixture_text(name))
        return None, EXIT_OK
    if args.seed is None:
        raise _InputError("gen needs --seed")
    rep = None
    comment = f"lptrans {__version__} gen {kind} seed={args.seed} n={args.n}"
    if kind == "chordal":
        g, rep = gen_chordal(args.seed, args.n, args.density)
    elif kind == "interval":
        g, rep = gen_interval(args.seed, args.n)
    elif kind == "circular-arc":
        g, rep = gen_circular_arc(args.seed, args.n)
    elif kind == "hgraph":
        g, rep = gen_hgraph(args.seed, args.n, args.host, args.max_len, args.density)
        comment += f" host={args.host}"
    else:
        names = [f for f in (args.forbid or "").split(",") if f]
        unknown = [f for f in names if f not in PATTERNS]
        if unknown:
            raise _InputError(f"unknown patterns {unknown}; known: {sorted(PATTERNS)}")
        g = gen_class_filtered(args.seed, args.n, args.p, [PATTERNS[f] for f in names], args.budget)
        comment += f" p={args.p} forbid={','.join(names) or '-'}"
    _emit(args.out, format_edge_list(g, comment))
    if args.rep_out and rep is not None:
        Path(args.rep_out).write_text(dump_representation(rep), encoding="utf-8")
    return None, EXIT_OK


def cmd_verify(args) -> tuple[Report, int]:
    result = run_suite(args.suite, args.trials, args.seed, args.workers)
    report = Report(f"verify {args.suite}", None, args.seed)
    if args.json:
        for key, value in result.as_dict().items():
            if key != "seed":
                report.add(key, value)
    else:
        for line in result.lines():
            key, _, value = line.partition(": ")
            if key != "seed":
                report.add(key, value)
    return report, EXIT_OK if result.ok else EXIT_VIOLATION


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lptrans", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"lptrans {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p):
        p.add_argument("--json", action="store_true", help="print one JSON object instead of key: value lines")
        return p

    p = with_json(sub.add_parser("oracle", help="exact longest paths and minimum transversal"))
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--limit", type=int, default=ENUM_LIMIT, help="vertex limit for path enumeration")
    p.set_defaults(func=cmd_oracle)

    p = with_json(sub.add_parser("pipeline", help="class-specific transversal with certificate"))
    p.add_argument("--class", dest="cls", choices=PIPELINE_CLASSES, required=True)
    p.add_argument("graph", help="edge-list file")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("hgraph", help="H-graph representations")
    hsub = p.add_subparsers(dest="action", required=True)
    e = with_json(hsub.add_parser("extract", help="transversal from a representation, with claim checks"))
    e.add_argument("rep", help="representation JSON file")
    e.add_argument("--td", help="tree decomposition of the subdivided host (PACE .td)")
    e.add_argument("--normalize", action="store_true", help="make the representation nice first")
    e.set_defaults(func=cmd_hgraph_extract)

    p = sub.add_parser("gen", help="write a generated instance as an edge list")
    p.add_argument("kind", choices=("chordal", "interval", "circular-arc", "hgraph", "filtered", "fixture"))
    p.add_argument("name", nargs="?", help="fixture name (gen fixture walther-zamfirescu)")
    p.add_argument("--seed", type=int)
    p.add_argument("-n", type=int, default=10, help="number of vertices")
    p.add_argument("--density", type=float, default=0.3, help="segment size as a fraction of the host")
    p.add_argument("--host", choices=HOST_NAMES, default="random")
    p.add_argument("--max-len", type=int, default=3, help="longest subdivided host edge")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for filtered sampling")
    p.add_argument("--forbid", help="comma-separated induced patterns, e.g. P5 or bull,chair")
    p.add_argument("--budget", type=int, default=2000, help="rejection sampling attempts")
    p.add_argument("--out", help="edge-list output path (default stdout)")
    p.add_argument("--rep-out", help="also write the representation JSON here")
    p.set_defaults(func=cmd_gen, json=False)

    p = with_json(sub.add_parser("verify", help="run a seeded verification suite"))
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--trials", type=int, help="number of trials (default: the suite's size)")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except ClassMembershipError as exc:
        print(f"error: class membership: {exc}", file=sys.stderr)
        return EXIT_CLASS
    except SizeLimitError as exc:
        print(f"error: size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (_InputError, LptError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report is not None:
        sys.stdout.write(report.render(args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
