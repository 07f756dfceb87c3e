"""Command-line interface: ``chromoh compute | corpus | poly``.

Exit status is 0 on success, 1 when a check fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .cache import ResultCache
from .cohomology import GraphCohomology
from .complex import StateSumComplex
from .graph import GraphError, is_bipartite
from .io import GraphFormatError, big, dumps_report, read_graph, render
from .polynomials import PolynomialError, chromatic_polynomial, poincare_closed_form, poincare_polynomial
from .report import SECTIONS, build_report, report_failed
from .verifier import corpus_graphs, resolve_selection, run_graphs

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chromoh", description="Chromatic graph cohomology calculator.")
    p.add_argument("--verbose", "-v", action="store_true", help="log timings and cache activity to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="cohomology tables and checks for one graph file")
    c.add_argument("path")
    c.add_argument("--format", choices=("json", "table", "csv"), default="json")
    c.add_argument("--checks", default="none", help="'all', 'none' or a comma-separated list")
    c.add_argument("--algebra", choices=tuple(SECTIONS), default="all")
    c.add_argument("--cache-dir", default=None, help="overrides $CHROMOH_CACHE")

    k = sub.add_parser("corpus", help="run checks over connected graphs")
    k.add_argument("--max-vertices", type=int, default=4)
    k.add_argument("--min-vertices", type=int, default=None, help="lower bound on n when sampling")
    k.add_argument("--max-edges", type=int, default=None, help="default: no limit")
    k.add_argument("--sample", type=int, default=None, metavar="N", help="draw N seeded random graphs")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--jobs", type=int, default=1)
    k.add_argument("--checks", default="all")
    k.add_argument("--out", default=None, help="write the structured report here")
    k.add_argument("--timings", action="store_true", help="include wall-clock fields in --out")

    q = sub.add_parser("poly", help="chromatic and Poincaré polynomials of one graph file")
    q.add_argument("path")
    q.add_argument("--format", choices=("json", "text"), default="text")
    return p


def _cmd_compute(args) -> int:
    G = read_graph(args.path)
    cache = ResultCache.from_env(args.cache_dir)
    report = build_report(G, algebra=args.algebra, checks=args.checks, cache=cache)
    sys.stdout.write(render(report, args.format))
    return EXIT_FAIL if report_failed(report) else EXIT_OK


def _cmd_corpus(args) -> int:
    n_max = args.max_vertices
    m_max = args.max_edges if args.max_edges is not None else n_max * (n_max - 1) // 2
    sample = (args.sample, args.seed) if args.sample is not None else None
    names = resolve_selection(args.checks)
    graphs = corpus_graphs(n_max, m_max, sample, args.min_vertices)
    report = run_graphs(graphs, names, jobs=args.jobs)
    if args.out:
        payload = {
            "schema": 1,
            "corpus": {
                "max_vertices": n_max,
                "min_vertices": args.min_vertices,
                "max_edges": m_max,
                "sample": args.sample,
                "seed": args.seed if sample else None,
                "checks": list(names),
            },
            **report.as_dict(timings=args.timings),
        }
        Path(args.out).write_text(dumps_report(payload))
    print(report.summary())
    return EXIT_FAIL if report.n_failures else EXIT_OK


def _cmd_poly(args) -> int:
    G = read_graph(args.path)
    P = chromatic_polynomial(G)
    R = poincare_polynomial(GraphCohomology(G, StateSumComplex(G)).betti())
    closed = None
    if G.n and G.is_simple() and G.is_connected():
        closed = poincare_closed_form(P, G.n, is_bipartite(G) is not None)
    if args.format == "json":
        out = {
            "schema": 1,
            "chromatic": [big(c) for c in P.coeffs],
            "poincare": [{"t": a, "q": b, "coeff": big(c)} for a, b, c in R.sorted_terms()],
            "closed_form_agrees": None if closed is None else closed == R,
        }
        sys.stdout.write(json.dumps(out, indent=2, sort_keys=True) + "\n")
    else:
        print(f"P(λ) = {P.pretty('λ')}")
        print(f"R(t,q) = {R.pretty()}")
        if closed is not None:
            print(f"closed form {'agrees' if closed == R else 'DIFFERS: ' + closed.pretty()}")
    return EXIT_FAIL if closed is not None and closed != R else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    handler = {"compute": _cmd_compute, "corpus": _cmd_corpus, "poly": _cmd_poly}[args.command]
    try:
        return handler(args)
    except (GraphFormatError, GraphError, PolynomialError) as exc:
        print(f"chromoh: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KeyError as exc:
        print(f"chromoh: error: {exc.args[0]}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
