"""Isomorphism-free enumeration of connected graphs and exhaustive dominance searches.

Connected graphs on ``n`` vertices are produced by appending a vertex to each
connected graph on ``n - 1`` vertices (every connected graph has a vertex
whose removal keeps it connected), canonicalizing, and deduplicating.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .canonical import CanonicalForm, canonical_form, canonical_labeling, graph_from_code, MAX_CANONICAL_N
from .dominance import (
    Classification,
    classify,
    is_geometric_dominant,
    is_super_geometric_dominant,
    trivial_kind,
)
from .graph import Graph, GraphError, distance_matrix, iter_graph6_file, parse_graph6, to_graph6
from .lines import has_universal_line, line_family

log = logging.getLogger(__name__)

MAX_BUILTIN_N = 9

_cache: dict[int, list[int]] = {1: [0]}


def clear_cache() -> None:
    _cache.clear()
    _cache[1] = [0]


def _subset_orbit_reps(m: int, gens: list[tuple[int, ...]]) -> Iterator[int]:
    """Nonempty subsets of ``range(m)``, one per orbit under the group generated by ``gens``."""
    if not gens:
        yield from range(1, 1 << m)
        return
    seen: set[int] = set()
    for s in range(1, 1 << m):
        if s in seen:
            continue
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for g in gens:
                y = 0
                v = 0
                while x >> v:
                    if x >> v & 1:
                        y |= 1 << g[v]
                    v += 1
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        yield s


def _children(args: tuple[int, list[int]]) -> set[int]:
    m, parent_codes = args
    out: set[int] = set()
    for code in parent_codes:
        parent = graph_from_code(m, code).adj
        _, _, gens = canonical_labeling(m, parent)
        for s in _subset_orbit_reps(m, gens):
            rows = [r | (s >> u & 1) << m for u, r in enumerate(parent)]
            rows.append(s)
            out.add(canonical_labeling(m + 1, rows)[0])
    return out


def _chunks(items: list, k: int) -> list[list]:
    return [items[i::k] for i in range(k)]


def connected_codes(n: int, workers: int = 1) -> list[int]:
    """Sorted canonical codes of all connected graphs on ``n`` vertices (cached)."""
    if n < 1:
        raise GraphError("n must be positive")
    if n > MAX_BUILTIN_N:
        raise GraphError(f"built-in enumeration supports n <= {MAX_BUILTIN_N}; supply a graph6 stream")
    if n in _cache:
        return _cache[n]
    parents = connected_codes(n - 1, workers)
    m = n - 1
    if workers > 1 and len(parents) > 64:
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_children, [(m, c) for c in _chunks(parents, workers * 4)])
            codes: set[int] = set().union(*parts)
    else:
        codes = _children((m, parents))
    _cache[n] = sorted(codes)
    log.info("n=%d: %d connected classes", n, len(_cache[n]))
    return _cache[n]


def enumerate_connected(n: int, workers: int = 1) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs on ``n`` vertices."""
    for code in connected_codes(n, workers):
        yield graph_from_code(n, code)


def stream_graphs(path: str | Path, dedup: bool = False) -> Iterator[Graph]:
    """Graphs from a graph6 file; with ``dedup`` isomorphic repeats are dropped (n <= 10)."""
    seen: set[CanonicalForm] = set()
    for g in iter_graph6_file(path):
        if dedup:
            cf = canonical_form(g)
            if cf in seen:
                continue
            seen.add(cf)
        yield g


# -- searches -----------------------------------------------------------------


@dataclass
class Witness:
    graph: Graph
    classification: Classification

    @property
    def graph6(self) -> str:
        return to_graph6(self.graph)

    def to_dict(self) -> dict:
        return {"graph6": self.graph6, "n": self.graph.n, **self.classification.to_dict()}


@dataclass
class SearchResult:
    order: int
    witnesses: list[Witness] = field(default_factory=list)
    graphs_scanned: int = 0

    @property
    def g_min(self) -> int | None:
        if not self.witnesses:
            return None
        return min(w.classification.distinct_line_count for w in self.witnesses)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "graphs_scanned": self.graphs_scanned,
            "witness_count": len(self.witnesses),
            "g_min": self.g_min,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class _Scan:
    graph6: str
    connected: bool
    nontrivial_gd: bool
    super_gd: bool
    super_failed: int | None
    diameter: int
    lines: int
    universal: bool
    chen_chvatal: bool


def _scan_graph(g: Graph) -> _Scan:
    if not g.is_connected():
        return _Scan(to_graph6(g), False, False, False, None, -1, 0, False, True)
    d = distance_matrix(g)
    f = line_family(d)
    universal = has_universal_line(f, g.n)
    nt_gd = trivial_kind(g) == "none" and is_geometric_dominant(f)
    sup = is_super_geometric_dominant(g, d)
    return _Scan(
        to_graph6(g),
        True,
        nt_gd,
        sup.accepted,
        sup.failed_condition,
        d.max_distance(),
        len(f),
        universal,
        g.n < 2 or universal or len(f) >= g.n,
    )


def _scan_codes(args: tuple[int, list[int]]) -> list[_Scan]:
    n, codes = args
    return [_scan_graph(graph_from_code(n, c)) for c in codes]


def _scan_graphs(graphs: list[Graph]) -> list[_Scan]:
    return [_scan_graph(g) for g in graphs]


def _scan_all(n: int | None, graphs: Iterable[Graph] | None, workers: int) -> list[_Scan]:
    if graphs is None:
        codes = connected_codes(n, workers)
        if workers > 1 and len(codes) > 256:
            with ProcessPoolExecutor(workers) as pool:
                parts = pool.map(_scan_codes, [(n, c) for c in _chunks(codes, workers * 4)])
                scans = [s for part in parts for s in part]
        else:
            scans = _scan_codes((n, codes))
    else:
        glist = list(graphs)
        if workers > 1 and len(glist) > 256:
            with ProcessPoolExecutor(workers) as pool:
                scans = [s for part in pool.map(_scan_graphs, _chunks(glist, workers * 4)) for s in part]
        else:
            scans = _scan_graphs(glist)
    return sorted(scans, key=lambda s: s.graph6)


def _canonical_if_small(g: Graph) -> Graph:
    return canonical_form(g).graph() if g.n <= MAX_CANONICAL_N else g


def find_nontrivial_gd(
    n: int | None = None,
    *,
    stream: str | Path | None = None,
    workers: int = 1,
    dedup: bool = False,
) -> SearchResult:
    """All non-trivial geometric dominant graphs on ``n`` vertices (built-in) or in a graph6 stream."""
    graphs = None
    if stream is not None:
        graphs = stream_graphs(stream, dedup=dedup)
        if n is not None:
            graphs = (g for g in graphs if g.n == n)
    elif n is None:
        raise GraphError("either an order or a stream is required")
    scans = _scan_all(n, graphs, workers)
    order = n if n is not None else (_order_of(scans) or 0)
    res = SearchResult(order, graphs_scanned=len(scans))
    witnesses = []
    for s in scans:
        if s.nontrivial_gd:
            g = _canonical_if_small(parse_graph6(s.graph6))
            witnesses.append(Witness(g, classify(g)))
    res.witnesses = sorted(witnesses, key=lambda w: w.graph6)
    return res


def _order_of(scans: list[_Scan]) -> int | None:
    return parse_graph6(scans[0].graph6).n if scans else None


def g_min(n: int, workers: int = 1) -> int | None:
    """Least distinct line count over non-trivial geometric dominant graphs on ``n`` vertices."""
    return find_nontrivial_gd(n, workers=workers).g_min


def sweep_open_questions(max_n: int, workers: int = 1, min_n: int = 1) -> dict:
    """Per order: witness diameters, super dominant graphs, and Chen–Chvátal counterexamples.

    Only the Chen–Chvátal tally is meant to be asserted; the rest are observations.
    """
    if max_n > MAX_BUILTIN_N:
        raise GraphError(f"sweep supports max_n <= {MAX_BUILTIN_N}")
    rows = []
    for n in range(min_n, max_n + 1):
        scans = _scan_all(n, None, workers)
        wit = [s for s in scans if s.nontrivial_gd]
        sup = [s for s in scans if s.super_gd]
        cc_bad = [s.graph6 for s in scans if not s.chen_chvatal]
        profile: dict[str, int] = {}
        for s in scans:
            key = "accepted" if s.super_gd else str(s.super_failed)
            profile[key] = profile.get(key, 0) + 1
        rows.append(
            {
                "order": n,
                "connected_graphs": len(scans),
                "nontrivial_gd_count": len(wit),
                "nontrivial_gd_exists": bool(wit),
                "g_min": min((s.lines for s in wit), default=None),
                "witness_diameters": sorted({s.diameter for s in wit}),
                "all_witnesses_diameter_2": all(s.diameter == 2 for s in wit),
                "witnesses": [s.graph6 for s in wit],
                "super_gd_count": len(sup),
                "super_gd_graphs": [s.graph6 for s in sup],
                "super_condition_profile": dict(sorted(profile.items())),
                "chen_chvatal_counterexamples": cc_bad,
            }
        )
    return {"max_n": max_n, "orders": rows}
