"""Named graph builders, t-exploded graphs, and the two seeded random constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations

import numpy as np

from .dominance import SuperCheck, is_super_geometric_dominant
from .graph import Graph, GraphError, distance_matrix, parse_graph6, popcount
from .lines import line_mask


def wheel(k: int) -> Graph:
    """A k-cycle on ``1..k`` plus the universal center ``0``."""
    if k < 3:
        raise GraphError(f"wheel needs a rim of at least 3 vertices, got {k}")
    edges = [(0, r) for r in range(1, k + 1)]
    edges += [(r, r % k + 1) for r in range(1, k + 1)]
    return Graph.from_edges(k + 1, edges)


def wheel_blown(sizes: list[int] | tuple[int, ...]) -> Graph:
    """The 5-wheel with rim vertex ``i`` replaced by an independent set of ``sizes[i]`` vertices.

    Vertex 0 is the center; the blocks follow in rim order.
    """
    if len(sizes) != 5:
        raise GraphError(f"need exactly 5 block sizes, got {len(sizes)}")
    if any(s < 3 for s in sizes):
        raise GraphError(f"every block needs at least 3 vertices, got {list(sizes)}")
    blocks = []
    nxt = 1
    for s in sizes:
        blocks.append(range(nxt, nxt + s))
        nxt += s
    edges = [(0, v) for b in blocks for v in b]
    for i in range(5):
        edges += [(u, v) for u in blocks[i] for v in blocks[(i + 1) % 5]]
    return Graph.from_edges(nxt, edges)


def add_twin(g: Graph, v: int) -> Graph:
    """Append a new vertex with the same open neighborhood as ``v``."""
    return g.add_vertex(g.adj[v])


def known_example(order: int) -> Graph:
    """The small non-trivial geometric dominant graphs on 6, 7 and 8 vertices.

    Orders 6 and 7 are the 5-wheel and the 5-wheel plus a twin of rim vertex 1.
    Order 8 is read from the shipped graph6 fixture.
    """
    if order == 6:
        return wheel(5)
    if order == 7:
        return add_twin(wheel(5), 1)
    if order == 8:
        text = resources.files("gdlines").joinpath("data/known_example_8.g6").read_text()
        return parse_graph6(text)
    raise GraphError(f"known examples exist for orders 6, 7, 8; got {order}")


# -- explosion ------------------------------------------------------------------


@dataclass(frozen=True)
class ExplodedGraph:
    base: Graph
    t: int
    result: Graph
    part_of: tuple[int, ...]

    def part(self, v: int) -> list[int]:
        return [x for x, p in enumerate(self.part_of) if p == v]


def explode(g: Graph, t: int) -> ExplodedGraph:
    """Replace every vertex by an independent ``t``-set; vertex ``v*t + i`` lies in part ``v``."""
    if t < 1:
        raise GraphError(f"t must be at least 1, got {t}")
    if not g.is_connected():
        raise GraphError("explode expects a connected base graph")
    n = g.n
    edges = [
        (u * t + i, v * t + j)
        for u, v in g.edges()
        for i in range(t)
        for j in range(t)
    ]
    result = Graph.from_edges(n * t, edges)
    return ExplodedGraph(g, t, result, tuple(x // t for x in range(n * t)))


def explode_line_count(n: int, m: int, t: int) -> int:
    """Distinct line count of a t-exploded super dominant graph with n vertices and m edges."""
    if t < 3:
        raise GraphError(f"the count formula needs t >= 3, got {t}")
    return math.comb(t, 2) * n + (math.comb(n, 2) - m) * t * t + m


@dataclass
class StructureReport:
    refused: str | None = None
    pairs_checked: int = 0
    mismatches: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.refused is None and not self.mismatches


def explode_line_structure_check(e: ExplodedGraph) -> StructureReport:
    """Compare brute-force lines of the exploded graph with the three closed forms.

    Same part: ``{a, b}`` plus every part adjacent to it. Cross pair with
    non-adjacent bases: ``{a, b}`` plus the parts of the base line minus its
    endpoints. Cross pair with adjacent bases: the parts of the base line.
    """
    base, t = e.base, e.t
    bd = distance_matrix(base)
    if bd.max_distance() > 2:
        return StructureReport(refused=f"base diameter {bd.max_distance()} exceeds 2")
    if t < 3:
        return StructureReport(refused=f"t = {t} is below 3")
    hd = distance_matrix(e.result)
    part_mask = [0] * base.n
    for x, p in enumerate(e.part_of):
        part_mask[p] |= 1 << x

    def union(vs_mask: int) -> int:
        out = 0
        for v in range(base.n):
            if vs_mask >> v & 1:
                out |= part_mask[v]
        return out

    rep = StructureReport()
    N = e.result.n
    for a, b in combinations(range(N), 2):
        u, v = e.part_of[a], e.part_of[b]
        pair = 1 << a | 1 << b
        if u == v:
            kind = "same part"
            expected = pair | union(base.adj[u])
        else:
            bl = line_mask(bd, u, v)
            if base.has_edge(u, v):
                kind = "cross adjacent"
                expected = union(bl)
            else:
                kind = "cross non-adjacent"
                expected = pair | union(bl & ~(1 << u | 1 << v))
        got = line_mask(hd, a, b)
        rep.pairs_checked += 1
        if got != expected:
            rep.mismatches.append({"pair": [a, b], "kind": kind, "expected": expected, "got": got})
    return rep


# -- random constructions ---------------------------------------------------------


def _generator(seed: int, *spawn_key: int) -> np.random.Generator:
    # Philox is counter-based; spawn keys give independent, schedule-free streams.
    ss = np.random.SeedSequence(seed, spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(ss))


def _graph_from_upper(n: int, upper: np.ndarray) -> Graph:
    rows = [0] * n
    iu, ju = np.triu_indices(n, 1)
    for i, j in zip(iu[upper].tolist(), ju[upper].tolist()):
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def sample_gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Erdős–Rényi G(n, p): every pair is an edge independently with probability ``p``."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    if n < 1:
        raise GraphError("n must be positive")
    rng = _generator(seed)
    upper = rng.random(n * (n - 1) // 2) < p
    return _graph_from_upper(n, upper)


@dataclass(frozen=True)
class LeftCliqueConfig:
    n: int
    t: int
    seed: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.t < self.n:
            raise ValueError(f"need 1 <= t < n, got t={self.t}, n={self.n}")

    @classmethod
    def from_c0(cls, n: int, c0: float = 5.0, seed: int = 0) -> "LeftCliqueConfig":
        """Left side size ``ceil(c0 * ln n)``, capped at ``n - 1``."""
        return cls(n, min(n - 1, max(1, math.ceil(c0 * math.log(n)))), seed)

    @property
    def missing_edge_cap(self) -> int:
        return math.comb(self.t, 2) + self.t * (self.n - self.t)


@dataclass(frozen=True)
class SamplerOutcome:
    graph: Graph
    accepted: bool
    failed_condition: int | None
    attempts_used: int
    failure_profile: dict[int, int] = field(default_factory=dict)


def draw_left_clique(cfg: LeftCliqueConfig, attempt: int) -> Graph:
    """One draw: vertices ``t..n-1`` form a clique, every other pair is an edge with probability 1/2."""
    n, t = cfg.n, cfg.t
    rng = _generator(cfg.seed, attempt)
    iu, ju = np.triu_indices(n, 1)
    upper = rng.random(len(iu)) < 0.5
    upper |= iu >= t
    return _graph_from_upper(n, upper)


def sample_left_clique(cfg: LeftCliqueConfig, max_attempts: int, strict_distinct: bool = False) -> SamplerOutcome:
    """Draw until a graph passes the super-dominance verifier or attempts run out.

    Attempt ``k`` uses its own spawned stream, so the first accepted index is
    the same however attempts are scheduled.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    profile: dict[int, int] = {}
    g = None
    check: SuperCheck | None = None
    for k in range(max_attempts):
        g = draw_left_clique(cfg, k)
        check = _verify(g, strict_distinct)
        if check.accepted:
            return SamplerOutcome(g, True, None, k + 1, profile)
        profile[check.failed_condition] = profile.get(check.failed_condition, 0) + 1
    return SamplerOutcome(g, False, check.failed_condition, max_attempts, profile)


def left_clique_rate(cfg: LeftCliqueConfig, attempts: int, strict_distinct: bool = False) -> dict:
    """Run every attempt (no early stop) and tabulate acceptance and failure conditions."""
    accepted = []
    profile: dict[int, int] = {}
    missing_max = 0
    for k in range(attempts):
        g = draw_left_clique(cfg, k)
        missing_max = max(missing_max, cfg.n * (cfg.n - 1) // 2 - g.edge_count())
        check = _verify(g, strict_distinct)
        if check.accepted:
            accepted.append(k)
        else:
            profile[check.failed_condition] = profile.get(check.failed_condition, 0) + 1
    return {
        "n": cfg.n,
        "t": cfg.t,
        "seed": cfg.seed,
        "attempts": attempts,
        "accepted": len(accepted),
        "accepted_attempts": accepted,
        "acceptance_rate": len(accepted) / attempts,
        "failed_condition_profile": {str(k): v for k, v in sorted(profile.items())},
        "max_missing_edges": missing_max,
        "missing_edge_cap": cfg.missing_edge_cap,
    }


def _verify(g: Graph, strict_distinct: bool) -> SuperCheck:
    if not g.is_connected():
        return SuperCheck(False, 1, ("disconnected",))
    return is_super_geometric_dominant(g, strict_distinct=strict_distinct)


def missing_edges(g: Graph) -> int:
    return g.n * (g.n - 1) // 2 - sum(popcount(r) for r in g.adj) // 2
