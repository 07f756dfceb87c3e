"""Named theorem checks on a single graph and aggregation over corpora.

Each check returns a :class:`CheckResult` with status ``pass``, ``fail``
or ``skip``. A check whose hypotheses the graph does not meet (e.g. a
simplicity requirement) is skipped with a reason instead of passing
vacuously.
"""
from __future__ import annotations

import logging
import random
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .cohomology import BigradedDims, GraphCohomology, basic_cocycles
from .complex import DifferentialKind, StateSumComplex, apply_differential
from .graph import Graph, enumerate_connected_graphs, is_bipartite, is_bridge, sample_connected_graphs
from .polynomials import (
    UniPoly,
    chromatic_polynomial,
    count_proper_colorings,
    deletion_contraction_R,
    dim_relation_check,
    euler_identity_check,
    knight_relation_check,
    poincare_closed_form,
    poincare_from_betti,
    poincare_polynomial,
    bipartiteness_case,
)

log = logging.getLogger(__name__)

D = DifferentialKind.D
PHI = DifferentialKind.PHI
PHID = DifferentialKind.PHID

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    details: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


class _Skip(Exception):
    pass


class GraphContext:
    """Lazily computed data shared by the checks for one graph."""

    def __init__(self, G: Graph, reorderings: int = 2):
        self.G = G
        self.reorderings = reorderings
        self.cx = StateSumComplex(G)
        self.coh = GraphCohomology(G, self.cx)
        self._cache: dict[str, object] = {}

    def _memo(self, key: str, fn: Callable[[], object]):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def connected(self) -> bool:
        return self.G.n >= 1 and self.G.is_connected()

    @property
    def bipartition(self) -> Optional[tuple[int, ...]]:
        return self._memo("bip", lambda: is_bipartite(self.G) if self.connected else None)

    @property
    def bipartite(self) -> bool:
        return self.bipartition is not None

    @property
    def betti(self) -> BigradedDims:
        return self.coh.betti()

    @property
    def chromatic(self) -> UniPoly:
        return self._memo("P", lambda: chromatic_polynomial(self.G))

    @property
    def filtered(self):
        return self._memo("filtered", self.coh.filtered)

    def phi_rank(self, i: int, j: int) -> int:
        return self._memo(f"phi*{i},{j}", lambda: self.coh.induced_phi_rank(i, j))

    def non_bridge_edges(self) -> list[int]:
        return self._memo("nb", lambda: [e for e in range(self.G.m) if not is_bridge(self.G, e)])

    def triple(self, e: int) -> tuple[BigradedDims, BigradedDims, BigradedDims]:
        """Betti tables of ``(G, G - e, G / e)``."""

        def compute():
            dele = self.G.delete_edge(e)
            con = self.G.contract_edge(e)
            return (
                self.betti,
                GraphCohomology(dele, StateSumComplex(dele)).betti(),
                GraphCohomology(con, StateSumComplex(con)).betti(),
            )

        return self._memo(f"triple{e}", compute)

    # -- hypothesis guards --------------------------------------------------

    def need_connected(self) -> None:
        if not self.connected:
            raise _Skip("graph is not connected")

    def need_simple_connected(self) -> None:
        self.need_connected()
        if not self.G.is_simple():
            raise _Skip("graph is not simple")

    def need_non_bridge(self) -> list[int]:
        self.need_simple_connected()
        edges = self.non_bridge_edges()
        if not edges:
            raise _Skip("every edge is a bridge")
        return edges


# -- complex-level identities ---------------------------------------------

def _square_check(ctx: GraphContext, first: DifferentialKind, second: DifferentialKind, both: bool) -> str:
    """Failures of ``second∘first (+ first∘second)`` being zero on every ``C^i``."""
    bad = []
    for i in range(ctx.G.m - 1):
        prod = ctx.cx.matrix(second, i + 1) @ ctx.cx.matrix(first, i)
        if both:
            prod = prod + ctx.cx.matrix(first, i + 1) @ ctx.cx.matrix(second, i)
        if not prod.is_zero():
            bad.append(f"i={i}: {prod.nnz} nonzero entries")
    return "; ".join(bad)


def check_d_squared_zero(ctx: GraphContext) -> str:
    return _square_check(ctx, D, D, both=False)


def check_phi_squared_zero(ctx: GraphContext) -> str:
    return _square_check(ctx, PHI, PHI, both=False)


def check_phid_squared_zero(ctx: GraphContext) -> str:
    return _square_check(ctx, PHID, PHID, both=False)


def check_anticommute(ctx: GraphContext) -> str:
    return _square_check(ctx, D, PHI, both=True)


def check_phid_sum(ctx: GraphContext) -> str:
    bad = [
        f"i={i}"
        for i in range(ctx.G.m)
        if ctx.cx.matrix(PHID, i) != ctx.cx.matrix(D, i) + ctx.cx.matrix(PHI, i)
    ]
    return "matrix of Phi+d differs from d + Phi at " + ", ".join(bad) if bad else ""


def check_order_independence(ctx: GraphContext) -> str:
    G = ctx.G
    if G.m < 2:
        raise _Skip("fewer than two edges")
    rng = random.Random(zlib.crc32(repr(G).encode()))
    bad = []
    for _ in range(ctx.reorderings):
        order = list(range(G.m))
        rng.shuffle(order)
        H = G.reorder_edges(order)
        other = GraphCohomology(H, StateSumComplex(H)).betti()
        if other.entries != ctx.betti.entries:
            bad.append(f"order {order}: {other.items()}")
    return "; ".join(bad)


# -- structural facts about d-cohomology ----------------------------------

def check_two_diagonals(ctx: GraphContext) -> str:
    G = ctx.G
    if G.n == 0:
        raise _Skip("empty graph")
    k = G.n_components()
    off = [(ij, v) for ij, v in ctx.betti.items() if not G.n - k <= ij[0] + ij[1] <= G.n]
    return f"entries off the diagonals: {off}" if off else ""


def check_i_vanishing(ctx: GraphContext) -> str:
    n = ctx.G.n
    if n < 2:
        raise _Skip("needs at least two vertices")
    off = [(ij, v) for ij, v in ctx.betti.items() if ij[0] > n - 2]
    return f"nonzero for i > n-2: {off}" if off else ""


def check_zero_cohomology(ctx: GraphContext) -> str:
    ctx.need_connected()
    if ctx.G.has_loop():
        raise _Skip("graph has a loop")
    n = ctx.G.n
    expected = {n: 1}
    if ctx.bipartite:
        expected[n - 1] = 1
    got = {j: v for (i, j), v in ctx.betti.items() if i == 0}
    return "" if got == expected else f"H^0 dims {got}, expected {expected}"


def check_euler_identity(ctx: GraphContext) -> str:
    if euler_identity_check(ctx.G, ctx.betti):
        return ""
    lhs = poincare_polynomial(ctx.betti).at_t(-1)
    return f"sum (-1)^i q^j dim = {lhs.pretty('q')} but P(1+q) = {ctx.chromatic.compose(UniPoly([1, 1])).pretty('q')}"


def check_chromatic_count(ctx: GraphContext) -> str:
    if ctx.G.n > 5:
        raise _Skip("brute-force coloring count limited to n <= 5")
    P = ctx.chromatic
    bad = [
        f"lambda={lam}: P={P(lam)} count={c}"
        for lam in range(6)
        if P(lam) != (c := count_proper_colorings(ctx.G, lam))
    ]
    return "; ".join(bad)


def check_bipartite_p2(ctx: GraphContext) -> str:
    ctx.need_connected()
    p2 = ctx.chromatic(2)
    return "" if (p2 == 2) == ctx.bipartite else f"P(2)={p2} but bipartite={ctx.bipartite}"


def check_thm_1hom(ctx: GraphContext) -> str:
    ctx.need_simple_connected()
    n, m = ctx.G.n, ctx.G.m
    H = ctx.betti
    want_top = m - n + 1 if ctx.bipartite else m - n
    want_low = 0 if ctx.bipartite else 1
    got = (H[1, n - 1], H[1, n - 2])
    return "" if got == (want_top, want_low) else f"(H^(1,n-1), H^(1,n-2)) = {got}, expected {(want_top, want_low)}"


# -- Phi + d ----------------------------------------------------------------

def check_thm_0hompd(ctx: GraphContext) -> str:
    ctx.need_connected()
    got = ctx.coh.phid()
    expected = {0: 2} if ctx.bipartite else {}
    return "" if got == expected else f"H_(Phi+d) dims {got}, expected {expected}"


def check_filtdescr(ctx: GraphContext) -> str:
    ctx.need_connected()
    n = ctx.G.n
    F = ctx.filtered
    bad = []
    for i in range(ctx.G.m + 1):
        for j in range(n + 1):
            want = 0
            if ctx.bipartite and i == 0:
                want = 2 if j >= n else (1 if j == n - 1 else 0)
            if F[i, j] != want:
                bad.append(f"({i},<={j}): {F[i, j]} != {want}")
    return "; ".join(bad)


def check_basic_cocycles(ctx: GraphContext) -> str:
    ctx.need_connected()
    if not ctx.bipartite:
        raise _Skip("graph is not bipartite")
    S0, S1 = basic_cocycles(ctx.G, ctx.bipartition)
    bad = []
    for name, S in (("S0", S0), ("S1", S1)):
        image = apply_differential(ctx.G, S, PHID)
        if image:
            bad.append(f"(Phi+d){name} has {len(image)} nonzero terms")
    top = max(S0)  # the state colored x everywhere
    if S0[top] - S1[top] != Fraction(0):
        bad.append("S0 - S1 has nonzero top-degree coefficient")
    return "; ".join(bad)


# -- knight move --------------------------------------------------------------

def check_knightisom(ctx: GraphContext) -> str:
    ctx.need_connected()
    n = ctx.G.n
    H = ctx.betti
    bad = []
    for i in range(0, max(ctx.G.m, n) + 1):
        r = ctx.phi_rank(i, n - i)
        a, b = H[i, n - i], H[i + 1, n - i - 2]
        if i == 0 and ctx.bipartite:
            if r != a - 1:
                bad.append(f"i=0 bipartite: kernel dim {a - r}, expected 1")
        elif not r == a == b:
            bad.append(f"i={i}: rank {r}, dims {a} -> {b}")
    return "; ".join(bad)


def check_knight_quotient(ctx: GraphContext) -> str:
    ctx.need_connected()
    n, m = ctx.G.n, ctx.G.m
    F = ctx.filtered
    H = ctx.betti
    bad = []
    for i in range(m + 1):
        for j in range(n + 1):
            quotient = F[i, j] - F[i, j - 1]
            e2 = H[i, j] - ctx.phi_rank(i, j) - ctx.phi_rank(i - 1, j + 2)
            if quotient != e2:
                bad.append(f"({i},{j}): filtration quotient {quotient} vs E2 {e2}")
    return "; ".join(bad)


# -- polynomials ----------------------------------------------------------------

def check_knight_relation(ctx: GraphContext) -> str:
    ctx.need_connected()
    split = poincare_from_betti(ctx.betti)
    if knight_relation_check(split, ctx.G.n, ctx.bipartite):
        return ""
    return f"R^n = {split.top.pretty()}, R^(n-1) = {split.bottom.pretty()}"


def check_poi_chrom_identity(ctx: GraphContext) -> str:
    ctx.need_connected()
    closed = poincare_closed_form(ctx.chromatic, ctx.G.n, ctx.bipartite)
    direct = poincare_polynomial(ctx.betti)
    return "" if closed == direct else f"closed form {closed.pretty()} vs betti {direct.pretty()}"


def check_delcontract_R(ctx: GraphContext) -> str:
    bad = []
    for e in ctx.need_non_bridge():
        ok, case = deletion_contraction_R(ctx.G, e, ctx.triple(e))
        if not ok:
            bad.append(f"edge {e} (case {case})")
    return "; ".join(bad)


def check_dim_relation(ctx: GraphContext) -> str:
    bad = []
    for e in ctx.need_non_bridge():
        ok, problems = dim_relation_check(ctx.G, e, ctx.triple(e))
        if not ok:
            bad.append(f"edge {e}: " + ", ".join(problems))
    return "; ".join(bad)


def les_map_ranks(H: BigradedDims, Hd: BigradedDims, Hc: BigradedDims, j: int, i_max: int) -> list[int]:
    """Ranks of the maps in the deletion-contraction long exact sequence at degree ``j``.

    The sequence runs ``H^{i,j}(G) -> H^{i,j}(G-e) -> H^{i,j}(G/e) -> H^{i+1,j}(G)``;
    exactness fixes every rank from the dimensions alone. Returns the rank
    of the map leaving each term, in order.
    """
    dims = []
    for i in range(i_max + 1):
        dims.extend([H[i, j], Hd[i, j], Hc[i, j]])
    ranks = []
    prev = 0
    for dim in dims:
        prev = dim - prev
        ranks.append(prev)
    return ranks


def check_splitting_dims(ctx: GraphContext) -> str:
    """The maps ``H(G-e) -> H(G/e)`` vanish except at ``i = 0, j = n-1`` in case 3."""
    n, m = ctx.G.n, ctx.G.m
    bad = []
    for e in ctx.need_non_bridge():
        case = bipartiteness_case(ctx.G, e)
        H, Hd, Hc = ctx.triple(e)
        for j in range(n + 1):
            ranks = les_map_ranks(H, Hd, Hc, j, m)
            if any(r < 0 for r in ranks) or ranks[-1] != 0:
                bad.append(f"edge {e}, j={j}: dimensions not exact: {ranks}")
                continue
            for i in range(m + 1):
                phi = ranks[3 * i + 1]
                want = 1 if (case == 3 and i == 0 and j == n - 1) else 0
                if phi != want:
                    bad.append(f"edge {e}, ({i},{j}): map rank {phi}, expected {want}")
    return "; ".join(bad)


CHECKS: dict[str, Callable[[GraphContext], str]] = {
    "d_squared_zero": check_d_squared_zero,
    "phi_squared_zero": check_phi_squared_zero,
    "phid_squared_zero": check_phid_squared_zero,
    "anticommute": check_anticommute,
    "phid_sum": check_phid_sum,
    "order_independence": check_order_independence,
    "two_diagonals": check_two_diagonals,
    "i_vanishing": check_i_vanishing,
    "zero_cohomology": check_zero_cohomology,
    "euler_identity": check_euler_identity,
    "chromatic_count": check_chromatic_count,
    "bipartite_p2": check_bipartite_p2,
    "thm_0hompd": check_thm_0hompd,
    "filtdescr": check_filtdescr,
    "basic_cocycles": check_basic_cocycles,
    "knight_quotient": check_knight_quotient,
    "knightisom": check_knightisom,
    "thm_1hom": check_thm_1hom,
    "knight_relation": check_knight_relation,
    "poi_chrom_identity": check_poi_chrom_identity,
    "delcontract_R": check_delcontract_R,
    "dim_relation": check_dim_relation,
    "splitting_dims": check_splitting_dims,
}

ALL_CHECKS = tuple(CHECKS)


def resolve_selection(selection: Optional[Iterable[str] | str]) -> tuple[str, ...]:
    """Normalize ``"all"``, ``"none"``, a comma list, or an iterable of names."""
    if selection is None or selection == "all":
        return ALL_CHECKS
    if selection == "none":
        return ()
    if isinstance(selection, str):
        selection = [s.strip() for s in selection.split(",") if s.strip()]
    names = tuple(selection)
    unknown = [s for s in names if s not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    return tuple(s for s in ALL_CHECKS if s in names)


def run_checks(
    G: Graph,
    selection: Optional[Iterable[str] | str] = None,
    ctx: Optional[GraphContext] = None,
) -> list[CheckResult]:
    names = resolve_selection(selection)
    ctx = ctx or GraphContext(G)
    out = []
    for name in names:
        try:
            problem = CHECKS[name](ctx)
        except _Skip as exc:
            out.append(CheckResult(name, SKIP, str(exc)))
            continue
        out.append(CheckResult(name, FAIL, problem) if problem else CheckResult(name, PASS))
    return out


# -- corpus ---------------------------------------------------------------------

@dataclass
class CorpusReport:
    graphs: int = 0
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    slowest: float = 0.0

    @property
    def checks_run(self) -> int:
        return sum(c[PASS] + c[FAIL] for c in self.counts.values())

    @property
    def n_failures(self) -> int:
        return len(self.failures)

    def add(self, G: Graph, results: Sequence[CheckResult], seconds: float) -> None:
        self.graphs += 1
        self.elapsed += seconds
        self.slowest = max(self.slowest, seconds)
        for r in results:
            c = self.counts.setdefault(r.name, {PASS: 0, FAIL: 0, SKIP: 0})
            c[r.status] += 1
            if r.status == FAIL:
                self.failures.append(
                    {"n": G.n, "edges": [list(e) for e in G.edges], "check": r.name, "details": r.details}
                )

    def summary(self) -> str:
        return f"graphs={self.graphs} checks={self.checks_run} failures={self.n_failures}"

    def as_dict(self, timings: bool = False) -> dict:
        """Structured form; wall-clock fields only on request so reruns compare equal."""
        out = {
            "graphs": self.graphs,
            "checks_run": self.checks_run,
            "counts": {name: dict(c) for name, c in sorted(self.counts.items())},
            "failures": list(self.failures),
        }
        if timings:
            out["elapsed_seconds"] = round(self.elapsed, 3)
            out["slowest_seconds"] = round(self.slowest, 3)
        return out


def corpus_graphs(
    n_max: int, m_max: int, sample: Optional[tuple[int, int]] = None, n_min: Optional[int] = None
) -> list[Graph]:
    """Exhaustive corpus, or with ``sample=(count, seed)`` a seeded sample.

    Samples draw ``n`` uniformly from ``[n_min, n_max]`` (``n_min`` defaults
    to ``n_max``).
    """
    if sample is None:
        return list(enumerate_connected_graphs(n_max, m_max))
    count, seed = sample
    return sample_connected_graphs(count, seed, n_min or n_max, n_max, m_max)


def _check_one(args) -> tuple[Graph, list[CheckResult], float]:
    G, names = args
    start = time.perf_counter()
    results = run_checks(G, names)
    return G, results, time.perf_counter() - start


def run_graphs(
    graphs: Iterable[Graph],
    selection: Optional[Iterable[str] | str] = None,
    jobs: int = 1,
    progress: Optional[Callable[[int], None]] = None,
) -> CorpusReport:
    names = resolve_selection(selection)
    report = CorpusReport()
    work = ((G, names) for G in graphs)
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            for G, results, secs in pool.imap(_check_one, work, chunksize=4):
                report.add(G, results, secs)
                if progress:
                    progress(report.graphs)
    else:
        for item in work:
            G, results, secs = _check_one(item)
            report.add(G, results, secs)
            if progress:
                progress(report.graphs)
    log.info("%s in %.1fs", report.summary(), report.elapsed)
    return report


def run_corpus(
    n_max: int,
    m_max: int,
    sample: Optional[tuple[int, int]] = None,
    selection: Optional[Iterable[str] | str] = None,
    jobs: int = 1,
    n_min: Optional[int] = None,
) -> CorpusReport:
    return run_graphs(corpus_graphs(n_max, m_max, sample, n_min), selection, jobs)


__all__ = [
    "CHECKS",
    "ALL_CHECKS",
    "CheckResult",
    "CorpusReport",
    "GraphContext",
    "corpus_graphs",
    "les_map_ranks",
    "resolve_selection",
    "run_checks",
    "run_corpus",
    "run_graphs",
]
