"""Dominance classifiers, triviality detection and generator graphs."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations

import numpy as np

from .graph import DistanceMatrix, Graph, bits, distance_matrix, popcount
from .lines import Line, LineFamily, Pair, has_universal_line, line_family

TRIVIAL_KINDS = ("path", "complete", "C4", "none")

# Families at least this large are checked with the vectorized antichain test.
VECTORIZE_THRESHOLD = 400


# -- antichains -------------------------------------------------------------


def find_proper_subset_naive(masks: list[int]) -> tuple[int, int] | None:
    """Reference double loop: the first ``(x, y)`` with ``x`` a proper subset of ``y``."""
    for x in masks:
        for y in masks:
            if x != y and x & y == x:
                return x, y
    return None


def find_proper_subset(masks: list[int]) -> tuple[int, int] | None:
    """Popcount-grouped search for a proper containment among distinct masks.

    Only pairs with strictly smaller first member are compared. Returns a
    witness pair or ``None`` when the masks form an antichain.
    """
    if len(masks) >= VECTORIZE_THRESHOLD:
        return _find_proper_subset_numpy(masks)
    by_size: dict[int, list[int]] = {}
    for m in set(masks):
        by_size.setdefault(popcount(m), []).append(m)
    sizes = sorted(by_size)
    for i, s in enumerate(sizes):
        bigger = [y for t in sizes[i + 1:] for y in by_size[t]]
        for x in by_size[s]:
            for y in bigger:
                if x & y == x:
                    return x, y
    return None


def _pack(masks: list[int], width: int) -> np.ndarray:
    words = (width + 63) // 64
    out = np.zeros((len(masks), words), dtype=np.uint64)
    lo = (1 << 64) - 1
    for i, m in enumerate(masks):
        for w in range(words):
            out[i, w] = (m >> (64 * w)) & lo
    return out


def _find_proper_subset_numpy(masks: list[int]) -> tuple[int, int] | None:
    uniq = sorted(set(masks), key=popcount)
    if not uniq:
        return None
    width = max(m.bit_length() for m in uniq)
    packed = _pack(uniq, max(width, 1))
    sizes = np.array([popcount(m) for m in uniq])
    for i, x in enumerate(uniq):
        start = int(np.searchsorted(sizes, sizes[i], side="right"))
        if start == len(uniq):
            break
        sub = packed[start:]
        hit = np.all((sub & packed[i]) == packed[i], axis=1)
        if hit.any():
            return x, uniq[start + int(np.argmax(hit))]
    return None


def is_geometric_dominant(f: LineFamily) -> bool:
    """No line is a proper subset of another."""
    return find_proper_subset(f.masks) is None


def is_strongly_geometric_dominant(f: LineFamily) -> bool:
    """Any two distinct lines share at most one vertex."""
    ms = f.masks
    for i, x in enumerate(ms):
        for y in ms[i + 1:]:
            inter = x & y
            if inter & (inter - 1):
                return False
    return True


# -- triviality -------------------------------------------------------------


def trivial_kind(g: Graph) -> str:
    """Structural triviality from degrees and connectivity alone.

    ``K1`` and ``K2`` are reported as ``complete``.
    """
    n = g.n
    degs = g.degrees()
    m = sum(degs) // 2
    if m == n * (n - 1) // 2:
        return "complete"
    if m == n - 1 and max(degs) <= 2 and g.is_connected():
        return "path"
    if n == 4 and m == 4 and all(x == 2 for x in degs):
        return "C4"
    return "none"


# -- super dominance ----------------------------------------------------------


@dataclass(frozen=True)
class SuperCheck:
    accepted: bool
    failed_condition: int | None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.accepted


def is_super_geometric_dominant(
    g: Graph,
    d: DistanceMatrix | None = None,
    *,
    strict_distinct: bool = False,
) -> SuperCheck:
    """Check the four super-dominance conditions in order, stopping at the first failure.

    Condition 2 counts equal lines from distinct pairs as a violation.
    Condition 4 by default also compares ``N*(a)`` with lines through ``a``;
    ``strict_distinct=True`` only compares lines ``bc`` with ``a`` outside ``{b, c}``.
    """
    if d is None:
        d = distance_matrix(g)
    n = g.n
    if n < 2 or d.max_distance() != 2:
        return SuperCheck(False, 1, (d.max_distance(),))

    pl = _pair_lines_diameter2(g)
    seen: dict[int, Pair] = {}
    for p, m in pl.items():
        if m in seen:
            return SuperCheck(False, 2, (seen[m], p))
        seen[m] = p
    hit = find_proper_subset(list(seen))
    if hit is not None:
        return SuperCheck(False, 2, (seen[hit[0]], seen[hit[1]]))

    closed = [g.closed_neighbors(v) for v in range(n)]
    if len(set(closed)) < n:
        for a, b in combinations(range(n), 2):
            if closed[a] == closed[b]:
                return SuperCheck(False, 3, (a, b))
    hit = find_proper_subset(closed)
    if hit is not None:
        return SuperCheck(False, 3, (closed.index(hit[0]), closed.index(hit[1])))

    wit = _condition4(closed, pl, strict_distinct)
    if wit is not None:
        return SuperCheck(False, 4, wit)
    return SuperCheck(True, None)


def _pair_lines_diameter2(g: Graph) -> dict[Pair, int]:
    # In diameter 2 a triple is collinear iff it induces exactly two edges.
    adj = g.adj
    out = {}
    for a in range(g.n):
        na = adj[a]
        for b in range(a + 1, g.n):
            if na >> b & 1:
                m = na ^ adj[b]
            else:
                m = na & adj[b]
            out[(a, b)] = m | 1 << a | 1 << b
    return out


def _condition4(closed: list[int], pl: dict[Pair, int], strict: bool) -> tuple | None:
    n = len(closed)
    if len(pl) >= VECTORIZE_THRESHOLD:
        return _condition4_numpy(closed, pl, strict)
    for (b, c), m in pl.items():
        for a in range(n):
            if strict and a in (b, c):
                continue
            na = closed[a]
            if na & m == na or na & m == m:
                return (a, b, c)
    return None


def _condition4_numpy(closed: list[int], pl: dict[Pair, int], strict: bool) -> tuple | None:
    n = len(closed)
    pairs = list(pl)
    L = _pack([pl[p] for p in pairs], n)
    N = _pack(closed, n)
    ends = np.array(pairs)
    for a in range(n):
        inter = L & N[a]
        bad = np.all(inter == N[a], axis=1) | np.all(inter == L, axis=1)
        if strict:
            bad &= (ends[:, 0] != a) & (ends[:, 1] != a)
        if bad.any():
            b, c = pairs[int(np.argmax(bad))]
            return (a, b, c)
    return None


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    trivial_kind: str
    geometric_dominant: bool
    strongly_geometric_dominant: bool
    super_geometric_dominant: bool
    has_universal: bool
    diameter: int
    distinct_line_count: int
    super_failed_condition: int | None = None

    @property
    def nontrivial_gd(self) -> bool:
        return self.trivial_kind == "none" and self.geometric_dominant

    def to_dict(self) -> dict:
        return asdict(self)


def classify(g: Graph, d: DistanceMatrix | None = None, f: LineFamily | None = None) -> Classification:
    if d is None:
        d = distance_matrix(g)
    if f is None:
        f = line_family(d)
    gd = is_geometric_dominant(f)
    sgd = is_strongly_geometric_dominant(f)
    sup = is_super_geometric_dominant(g, d)
    c = Classification(
        trivial_kind=trivial_kind(g),
        geometric_dominant=gd,
        strongly_geometric_dominant=sgd,
        super_geometric_dominant=sup.accepted,
        has_universal=has_universal_line(f, g.n),
        diameter=d.max_distance(),
        distinct_line_count=len(f),
        super_failed_condition=sup.failed_condition,
    )
    _check_consistency(c)
    return c


def _check_consistency(c: Classification) -> None:
    if c.strongly_geometric_dominant and not c.geometric_dominant:
        raise AssertionError(f"strongly dominant but not dominant: {c}")
    if c.super_geometric_dominant and not (c.geometric_dominant and c.diameter == 2):
        raise AssertionError(f"super dominant without dominance or diameter 2: {c}")


def check_chen_chvatal(g: Graph, f: LineFamily | None = None) -> bool:
    """Either some line is universal or there are at least ``n`` distinct lines.

    A single vertex spans no line, so ``n < 2`` holds vacuously.
    """
    if g.n < 2:
        return True
    if f is None:
        f = line_family(distance_matrix(g))
    return has_universal_line(f, g.n) or len(f) >= g.n


# -- generator graphs ---------------------------------------------------------


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    edges: tuple[Pair, ...]
    sides: tuple[tuple[int, ...], tuple[int, ...]] | None

    @property
    def is_bipartite(self) -> bool:
        return self.sides is not None

    @property
    def is_complete_bipartite(self) -> bool:
        if self.sides is None:
            return False
        x, y = self.sides
        return len(self.edges) == len(x) * len(y)


@dataclass(frozen=True)
class GeneratorGraph:
    line: Line
    edges: tuple[Pair, ...]
    components: tuple[Component, ...]
    distances: tuple[int, ...]
    d_L: int | None

    @property
    def is_star(self) -> bool:
        if len(self.components) != 1:
            return False
        sides = self.components[0].sides
        return sides is not None and self.components[0].is_complete_bipartite and min(map(len, sides)) == 1

    @property
    def is_matching(self) -> bool:
        return all(len(c.edges) == 1 for c in self.components)

    def blocks(self) -> list[tuple[int, ...]]:
        """Sides with at least two vertices of the bipartite components."""
        return [s for c in self.components if c.sides for s in c.sides if len(s) >= 2]


def generator_graph(f: LineFamily, L: Line | int, d: DistanceMatrix) -> GeneratorGraph:
    """The graph of pairs generating ``L``, split into components with bipartition sides.

    ``d_L`` is the common graph distance of the generating pairs, or ``None``
    when the distances differ.
    """
    members = L.members if isinstance(L, Line) else L
    if members not in f.generators:
        raise KeyError("line is not in the family")
    edges = tuple(f.generators[members])
    nbrs: dict[int, list[int]] = {}
    for u, v in edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    colour: dict[int, int] = {}
    comps = []
    for start in sorted(nbrs):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        verts = [start]
        bip = True
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in colour:
                    colour[w] = colour[u] ^ 1
                    verts.append(w)
                    stack.append(w)
                elif colour[w] == colour[u]:
                    bip = False
        vs = set(verts)
        cedges = tuple(e for e in edges if e[0] in vs)
        sides = None
        if bip:
            x = tuple(sorted(v for v in verts if colour[v] == 0))
            y = tuple(sorted(v for v in verts if colour[v] == 1))
            sides = (x, y)
        comps.append(Component(tuple(sorted(verts)), cedges, sides))
    dists = tuple(d[u][v] for u, v in edges)
    d_L = dists[0] if len(set(dists)) == 1 else None
    return GeneratorGraph(f.line_for(members), edges, tuple(comps), dists, d_L)
