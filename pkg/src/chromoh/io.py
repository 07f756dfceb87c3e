"""Graph file formats and report rendering.

Text format::

    # comment
    3          <- vertex count
    0 1        <- one edge per line, in edge order
    1 2

JSON format: ``{"vertices": 3, "edges": [[0, 1], [1, 2]]}``. Both keep the
edge order exactly, since it fixes the sign convention of the complex.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Optional, Sequence

from .graph import Graph, GraphError

SCHEMA_VERSION = 1
_INT64_MAX = (1 << 63) - 1


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_text(text: str) -> Graph:
    n: Optional[int] = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1 or values[0] < 0:
                raise GraphFormatError("first data line must be a single vertex count", lineno)
            n = values[0]
            continue
        if len(values) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = values
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range in edge {u} {v} (n={n})", lineno)
        edges.append((u, v))
    if n is None:
        raise GraphFormatError("no vertex count found")
    return Graph(n, tuple(edges))


def parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise GraphFormatError("JSON graph needs 'vertices' and 'edges'")
    n = obj["vertices"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("'vertices' must be a non-negative integer")
    edges = []
    for idx, e in enumerate(obj["edges"]):
        if (
            not isinstance(e, list)
            or len(e) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)
        ):
            raise GraphFormatError(f"edge {idx} must be a pair of integers")
        try:
            edges.append((e[0], e[1]))
            Graph(n, ((e[0], e[1]),))
        except GraphError as exc:
            raise GraphFormatError(f"edge {idx}: {exc}") from None
    return Graph(n, tuple(edges))


def parse_graph(text: str) -> Graph:
    """Parse either format; JSON is recognized by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def to_text(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def to_json(G: Graph) -> str:
    return json.dumps({"vertices": G.n, "edges": [list(e) for e in G.edges]})


# -- reports ------------------------------------------------------------------

def big(value: int) -> int | str:
    """Integers beyond 64 bits are emitted as decimal strings."""
    return value if -_INT64_MAX - 1 <= value <= _INT64_MAX else str(value)


def dumps_report(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_table(report: dict[str, Any]) -> str:
    out = io.StringIO()
    w = out.write
    w(f"n={report['n']} m={report['m']} bipartite={report['bipartite']}\n")
    if "betti" in report:
        w("\nH^{i,j} (d-cohomology)\n")
        w(f"{'i':>4} {'j':>4} {'dim':>6}\n")
        for row in report["betti"]:
            w(f"{row['i']:>4} {row['j']:>4} {row['dim']:>6}\n")
    if "knight_ranks" in report:
        w("\nrank of Phi_*: H^{i,j} -> H^{i+1,j-2}\n")
        for row in report["knight_ranks"]:
            w(f"{row['i']:>4} {row['j']:>4} {row['rank']:>6}\n")
    if "phi_d" in report:
        w("\nH^i (Phi+d): ")
        w(", ".join(f"i={row['i']}: {row['dim']}" for row in report["phi_d"]) or "all zero")
        w("\n")
    if "filtered" in report:
        w("\nH^{i,<=j} (Phi+d), nonzero rows\n")
        for row in report["filtered"]:
            w(f"  i={row['i']}: {row['dims']}\n")
        if not report["filtered"]:
            w("  all zero\n")
    if "chromatic" in report:
        w(f"\nP(lambda) coefficients (ascending): {report['chromatic']}\n")
    if "poincare_text" in report:
        w(f"R(t,q) = {report['poincare_text']}\n")
    if report.get("checks"):
        w("\nchecks\n")
        for c in report["checks"]:
            extra = f"  {c['details']}" if c["details"] else ""
            w(f"  {c['status']:<5} {c['name']}{extra}\n")
    return out.getvalue()


def render_csv(report: dict[str, Any]) -> str:
    out = io.StringIO()
    wr = csv.writer(out, lineterminator="\n")
    wr.writerow(["section", "i", "j", "value"])
    for row in report.get("betti", []):
        wr.writerow(["betti", row["i"], row["j"], row["dim"]])
    for row in report.get("knight_ranks", []):
        wr.writerow(["knight_rank", row["i"], row["j"], row["rank"]])
    for row in report.get("phi_d", []):
        wr.writerow(["phi_d", row["i"], "", row["dim"]])
    for row in report.get("filtered", []):
        for j, v in enumerate(row["dims"]):
            wr.writerow(["filtered", row["i"], j, v])
    for k, c in enumerate(report.get("chromatic", [])):
        wr.writerow(["chromatic", k, "", c])
    for term in report.get("poincare", []):
        wr.writerow(["poincare", term["t"], term["q"], term["coeff"]])
    for c in report.get("checks", []):
        wr.writerow(["check", c["name"], c["status"], c["details"]])
    return out.getvalue()


def render(report: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return dumps_report(report)
    if fmt == "table":
        return render_table(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"unknown format {fmt!r}")


def betti_rows(report: dict[str, Any]) -> Sequence[tuple[int, int, int]]:
    return [(r["i"], r["j"], r["dim"]) for r in report.get("betti", [])]
