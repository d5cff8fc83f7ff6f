"""Executable audits of the structural lemmas about lines in (geometric dominant) graphs.

Each check enumerates its instances on one graph and evaluates the claimed
conclusion. Checks whose hypothesis needs a non-trivial geometric dominant
host are reported ``not_applicable`` elsewhere; an applicable check with no
instances is reported ``vacuous``. A failing instance is stored as a witness
and :func:`replay` re-evaluates exactly that instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Callable, Iterator

import networkx as nx

from .dominance import generator_graph, is_geometric_dominant, trivial_kind
from .graph import DistanceMatrix, Graph, bits, distance_matrix, to_graph6
from .lines import LineFamily, line_family, line_mask, on_geodesic

PASS, FAIL, NOT_APPLICABLE, VACUOUS = "pass", "fail", "not_applicable", "vacuous"

# hypothesis each check needs from the host graph
NONTRIVIAL_GD, GD, ANY = "nontrivial_gd", "gd", "any"


class _Context:
    def __init__(self, g: Graph, d: DistanceMatrix | None = None):
        self.g = g
        self.d = d if d is not None else distance_matrix(g)
        self.f: LineFamily = line_family(self.d)

    @cached_property
    def gd(self) -> bool:
        return is_geometric_dominant(self.f)

    @cached_property
    def nontrivial_gd(self) -> bool:
        return self.gd and trivial_kind(self.g) == "none"

    def line(self, a: int, b: int) -> int:
        return self.f.line_of(a, b)

    def adjacent(self, a: int, b: int) -> bool:
        return self.g.has_edge(a, b)

    @cached_property
    def generator_graphs(self):
        return {m: generator_graph(self.f, m, self.d) for m in self.f.generators}

    def disjoint_generator_pairs(self) -> Iterator[tuple[int, int, int, int]]:
        for gens in self.f.generators.values():
            for (a, b), (c, e) in combinations(gens, 2):
                if len({a, b, c, e}) == 4:
                    yield a, b, c, e

    def star_sets(self) -> dict[tuple[int, int], list[int]]:
        """(apex, line) -> vertices b with line(apex, b) equal to that line."""
        out: dict[tuple[int, int], list[int]] = {}
        for a in range(self.g.n):
            for b in range(self.g.n):
                if a != b:
                    out.setdefault((a, self.line(a, b)), []).append(b)
        return out

    def twin_of(self, v: int) -> list[int]:
        return [w for w in range(self.g.n) if w != v and self.g.adj[w] == self.g.adj[v]]


# -- individual checks ----------------------------------------------------------------
# Each check: instances(ctx) -> iterator of int tuples, holds(ctx, instance) -> bool.


def _abc_instances(ctx):
    for a in range(ctx.g.n):
        for b, c in combinations([x for x in range(ctx.g.n) if x != a], 2):
            if ctx.line(a, b) == ctx.line(a, c):
                yield a, b, c


def _abc_holds(ctx, inst):
    a, b, c = inst
    return on_geodesic(ctx.d, (b, a, c))


def _abcd_instances(ctx):
    for quad in combinations(range(ctx.g.n), 4):
        if any(on_geodesic(ctx.d, p) for p in permutations(quad) if p[0] < p[3]):
            yield quad


def _abcd_holds(ctx, inst):
    a, b, c, e = inst
    return (
        ctx.line(a, b) != ctx.line(c, e)
        and ctx.line(a, c) != ctx.line(b, e)
        and ctx.line(a, e) != ctx.line(b, c)
    )


def _bridge_instances(ctx):
    g = ctx.g
    for b in range(g.n):
        for a, c in combinations(bits(g.adj[b]), 2):
            if not g.has_edge(a, c):
                yield a, b, c


def _bridge_holds(ctx, inst):
    a, b, c = inst
    adj = ctx.g.adj
    return bool(adj[a] & adj[b] & adj[c])


def _parallel_instances(ctx):
    yield from ctx.disjoint_generator_pairs()


def _parallel_holds(ctx, inst):
    a, b, c, e = inst
    d = ctx.d
    if ctx.line(a, b) != ctx.line(c, e):
        return False
    if not (d[a][b] == d[c][e] and d[a][c] == d[b][e] and d[a][e] == d[b][c]):
        return False
    if d[a][b] > 1:
        return all(on_geodesic(d, t) for t in ((a, c, b), (a, e, b), (c, a, e), (c, b, e)))
    return True


def _unit_square_instances(ctx):
    d = ctx.d
    for a, b, c, e in ctx.disjoint_generator_pairs():
        if d[a][b] == d[c][e] == 1:
            if d[a][c] == d[b][e] == 1:
                yield a, b, c, e
            if d[a][e] == d[b][c] == 1:
                yield a, b, e, c


def _unit_square_holds(ctx, inst):
    a, b, c, e = inst
    return ctx.line(a, c) == ctx.line(b, e)


def _bip_instances(ctx):
    for m in ctx.f.generators:
        yield (m,)


def _bip_holds(ctx, inst):
    (m,) = inst
    h = ctx.generator_graphs[m]
    if not all(c.is_complete_bipartite for c in h.components):
        return False
    if h.is_star:
        return True
    if h.d_L is None:
        return False
    if h.d_L != 1 and not h.is_matching:
        return False
    d = ctx.d
    for x_block, y_block in combinations(h.blocks(), 2):
        if len({d[x][y] for x in x_block for y in y_block}) != 1:
            return False
    return True


def _star_instances(ctx):
    for (a, _), bs in ctx.star_sets().items():
        for bi, bj in combinations(bs, 2):
            yield a, bi, bj


def _star_holds(ctx, inst):
    a, bi, bj = inst
    target = ctx.line(a, bi)
    if ctx.line(a, bj) != target:
        return False
    B = 0
    for b in range(ctx.g.n):
        if b != a and ctx.line(a, b) == target:
            B |= 1 << b
    return ctx.line(bi, bj) & B == 1 << bi | 1 << bj


def _twins_instances(ctx):
    g = ctx.g
    for a in range(g.n):
        for b, c in combinations(bits(g.adj[a]), 2):
            if ctx.line(a, b) == ctx.line(a, c):
                yield a, b, c


def _twins_holds(ctx, inst):
    _, b, c = inst
    return ctx.g.adj[b] == ctx.g.adj[c]


def _twin_non_edge_instances(ctx):
    g = ctx.g
    for a, b in combinations(range(g.n), 2):
        if g.has_edge(a, b):
            continue
        if any(t != b for t in ctx.twin_of(a)) and any(t != a for t in ctx.twin_of(b)):
            yield a, b


def _twin_non_edge_holds(ctx, inst):
    a, b = inst
    return ctx.f.generators[ctx.line(a, b)] == [(a, b)]


def _parity_instances(ctx):
    g = ctx.g
    for a, b in g.edges():
        for c in range(g.n):
            if c != a and c != b:
                yield a, b, c


def _parity_holds(ctx, inst):
    a, b, c = inst
    d = ctx.d
    return bool(ctx.line(a, b) >> c & 1) == ((d[a][c] + d[b][c]) % 2 == 1)


def _partition_instances(ctx):
    yield ()


def _partition_holds(ctx, inst):
    n = ctx.g.n
    seen: set[tuple[int, int]] = set()
    for m, gens in ctx.f.generators.items():
        for p in gens:
            if p in seen or line_mask(ctx.d, *p) != m:
                return False
            seen.add(p)
    return len(seen) == n * (n - 1) // 2


def _non_edge_matching(ctx, m: int) -> int:
    h = nx.Graph()
    h.add_edges_from(p for p in ctx.f.generators[m] if not ctx.adjacent(*p))
    return len(nx.max_weight_matching(h, maxcardinality=True))


def _parallel_non_edge_instances(ctx):
    for m in ctx.f.generators:
        t = _non_edge_matching(ctx, m)
        if t >= 2:
            yield (m, t)


def _parallel_non_edge_holds(ctx, inst):
    m, t = inst
    return _non_edge_matching(ctx, m) >= t and len(ctx.f) >= math.comb(t, 2)


def _v_line_instances(ctx):
    full = (1 << ctx.g.n) - 1
    if full in ctx.f.generators:
        yield ()


def _v_line_holds(ctx, inst):
    kind = trivial_kind(ctx.g)
    # K2 is reported as complete but is also the path P2
    return kind in ("path", "C4") or (kind == "complete" and ctx.g.n == 2)


@dataclass(frozen=True)
class Check:
    name: str
    lemma: str
    requires: str
    instances: Callable
    holds: Callable


CHECKS: tuple[Check, ...] = (
    Check("abc", "equal lines from a common vertex: the vertex lies between the others", NONTRIVIAL_GD, _abc_instances, _abc_holds),
    Check("abcd", "four vertices on one shortest path never split into two pairs with equal lines", NONTRIVIAL_GD, _abcd_instances, _abcd_holds),
    Check("bridge", "every induced path a-b-c has a vertex adjacent to all three", NONTRIVIAL_GD, _bridge_instances, _bridge_holds),
    Check("parallel", "disjoint pairs with equal lines have matching opposite distances", NONTRIVIAL_GD, _parallel_instances, _parallel_holds),
    Check("unit_square", "a unit square whose opposite sides share a line has equal lines on the other sides", NONTRIVIAL_GD, _unit_square_instances, _unit_square_holds),
    Check("bip_blocks", "generator graph components are complete bipartite with constant distances", NONTRIVIAL_GD, _bip_instances, _bip_holds),
    Check("star_generator", "pairs of a common-apex generator set meet the set only in themselves", NONTRIVIAL_GD, _star_instances, _star_holds),
    Check("twins", "adjacent generators sharing an apex and a line are twins", NONTRIVIAL_GD, _twins_instances, _twins_holds),
    Check("twin_non_edge", "a non-adjacent pair with outside twins generates its line alone", ANY, _twin_non_edge_instances, _twin_non_edge_holds),
    Check("parity", "for adjacent a, b: c is on line ab iff d(a,c) and d(b,c) differ in parity", ANY, _parity_instances, _parity_holds),
    Check("edge_partition", "generator graphs of the distinct lines partition the pairs of K_n", ANY, _partition_instances, _partition_holds),
    Check("parallel_non_edge", "t disjoint non-adjacent generator pairs of one line force C(t,2) lines", NONTRIVIAL_GD, _parallel_non_edge_instances, _parallel_non_edge_holds),
    Check("v_line", "a dominant graph with a universal line is a path or C4", GD, _v_line_instances, _v_line_holds),
)

CHECKS_BY_NAME = {c.name: c for c in CHECKS}


@dataclass
class CheckResult:
    name: str
    lemma: str
    status: str
    instances: int = 0
    witness: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lemma": self.lemma,
            "status": self.status,
            "instances": self.instances,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass
class AuditReport:
    graph6: str
    n: int
    nontrivial_gd: bool
    geometric_dominant: bool
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def status(self, name: str) -> str:
        return next(r.status for r in self.results if r.name == name)

    def to_dict(self) -> dict:
        return {
            "graph6": self.graph6,
            "n": self.n,
            "nontrivial_gd": self.nontrivial_gd,
            "geometric_dominant": self.geometric_dominant,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }


def _applicable(ctx: _Context, requires: str) -> bool:
    if requires == NONTRIVIAL_GD:
        return ctx.nontrivial_gd
    if requires == GD:
        return ctx.gd
    return True


def audit(g: Graph, distances: DistanceMatrix | None = None, checks: tuple[str, ...] | None = None) -> AuditReport:
    """Run every check on ``g`` in fixed order.

    ``distances`` replaces the BFS distances (a fault-injection hook for tests).
    """
    ctx = _Context(g, distances)
    rep = AuditReport(to_graph6(g), g.n, ctx.nontrivial_gd, ctx.gd)
    for chk in CHECKS:
        if checks is not None and chk.name not in checks:
            continue
        if not _applicable(ctx, chk.requires):
            rep.results.append(CheckResult(chk.name, chk.lemma, NOT_APPLICABLE))
            continue
        count = 0
        witness = None
        for inst in chk.instances(ctx):
            count += 1
            if not chk.holds(ctx, inst):
                witness = inst
                break
        if witness is not None:
            status = FAIL
        else:
            status = PASS if count else VACUOUS
        rep.results.append(CheckResult(chk.name, chk.lemma, status, count, witness))
    return rep


def replay(g: Graph, check: str, witness: tuple, distances: DistanceMatrix | None = None) -> bool:
    """Re-evaluate one instance; ``True`` means the claimed conclusion holds there."""
    ctx = _Context(g, distances)
    return CHECKS_BY_NAME[check].holds(ctx, tuple(witness))
