"""Simple undirected graphs as bit rows, graph6/edge-list interchange, distances and twins.

Vertices are ``0..n-1``; ``adj[u]`` is an int whose bit ``v`` is set iff ``u ~ v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

MAX_GRAPH6_N = 62


class GraphError(ValueError):
    """Structurally invalid graph input."""


class Graph6Error(GraphError):
    """Malformed graph6 text; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class DisconnectedGraphError(GraphError):
    """Distances and lines are undefined on a disconnected graph."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {u} has bits outside 0..{self.n - 1}")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def neighbors(self, u: int) -> int:
        """Open neighborhood N(u) as a bit row."""
        return self.adj[u]

    def closed_neighbors(self, u: int) -> int:
        """Closed neighborhood N*(u) as a bit row."""
        return self.adj[u] | 1 << u

    def is_connected(self) -> bool:
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph where old vertex ``v`` becomes ``perm[v]``."""
        rows = [0] * self.n
        for u in range(self.n):
            r = 0
            for v in bits(self.adj[u]):
                r |= 1 << perm[v]
            rows[perm[u]] = r
        return Graph(self.n, tuple(rows))

    def add_vertex(self, neighbors: int) -> "Graph":
        """Append vertex ``n`` adjacent to the vertices in the bit row ``neighbors``."""
        n = self.n
        rows = [r | (neighbors >> u & 1) << n for u, r in enumerate(self.adj)]
        rows.append(neighbors)
        return Graph(n + 1, tuple(rows))

    def induced(self, keep: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for w in bits(self.adj[v]):
                if w in index:
                    r |= 1 << index[w]
            rows.append(r)
        return Graph(len(keep), tuple(rows))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, graph6={to_graph6(self)!r})"


# -- graph6 ---------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (single-byte size header, ``n <= 62``)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside printable range 63..126", i)
    n = ord(s[0]) - 63
    if n == 0:
        raise Graph6Error("graph6 with zero vertices is not a valid graph here", 0)
    if n > MAX_GRAPH6_N:
        raise Graph6Error("extended size headers (n > 62) are not supported", 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(s) - 1 != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(s) - 1}", min(len(s), need + 1))
    rows = [0] * n
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            k += 1
    if nbits % 6:
        last = ord(s[-1]) - 63
        if last & ((1 << (6 - nbits % 6)) - 1):
            raise Graph6Error("nonzero padding bits", len(s) - 1)
    return Graph(n, tuple(rows))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n > MAX_GRAPH6_N:
        raise GraphError(f"graph6 export supports n <= {MAX_GRAPH6_N}, got {n}")
    out = [chr(63 + n)]
    acc = nacc = 0
    for v in range(1, n):
        row = g.adj[v]
        for u in range(v):
            acc = acc << 1 | (row >> u & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(63 + acc))
                acc = nacc = 0
    if nacc:
        out.append(chr(63 + (acc << (6 - nacc))))
    return "".join(out)


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse ``u v`` lines (0-based); blank lines and ``#`` comments are ignored.

    Without ``n`` the vertex count is one more than the largest label seen.
    """
    edges = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex label")
        edges.append((u, v))
        top = max(top, u, v)
    if n is None:
        n = top + 1
    if n < 1:
        raise GraphError("edge list describes no vertices")
    return Graph.from_edges(n, edges)


def read_graph_file(path: str | Path) -> Graph:
    """Load a single graph from a graph6 file or an edge-list file."""
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) == 1 and len(lines[0].split()) == 1:
        return parse_graph6(lines[0])
    return parse_edge_list(text)


def iter_graph6_file(path: str | Path) -> Iterator[Graph]:
    """Stream graphs from a graph6 file, one per line; errors name the line number."""
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield parse_graph6(line)
            except GraphError as exc:
                raise GraphError(f"{path}:{lineno}: {exc}") from exc


# -- distances ------------------------------------------------------------


class DistanceMatrix:
    """Exact shortest-path distances of a connected graph, or a validated integer metric.

    ``d[u][v]`` is the distance; ``shells[u][k]`` is the bit row of vertices at
    distance ``k`` from ``u`` (a dict keyed by distance value).
    """

    __slots__ = ("n", "d", "shells")

    def __init__(self, n: int, rows: Sequence[Sequence[int]]):
        self.n = n
        self.d = tuple(bytes(r) if max(r) <= 255 else tuple(r) for r in rows)
        shells = []
        for u in range(n):
            sh: dict[int, int] = {}
            for v, k in enumerate(self.d[u]):
                sh[k] = sh.get(k, 0) | 1 << v
            shells.append(sh)
        self.shells = tuple(shells)

    def __getitem__(self, u: int):
        return self.d[u]

    def max_distance(self) -> int:
        return max(max(r) for r in self.d)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.d]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DistanceMatrix) and self.rows() == other.rows()

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n}, max={self.max_distance()})"


def distance_matrix(g: Graph) -> DistanceMatrix:
    """All-pairs BFS over bit rows; raises on disconnected input."""
    n = g.n
    full = (1 << n) - 1
    rows = []
    for s in range(n):
        row = [0] * n
        seen = frontier = 1 << s
        k = 0
        while frontier:
            k += 1
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            for v in bits(frontier):
                row[v] = k
        if seen != full:
            raise DisconnectedGraphError(f"graph is disconnected (vertex {s} reaches {popcount(seen)} of {n})")
        if k - 1 > 255:
            raise GraphError("diameter exceeds 255; unsupported")
        rows.append(row)
    return DistanceMatrix(n, rows)


def diameter(g: Graph) -> int:
    return distance_matrix(g).max_distance()


# -- twins and complement -------------------------------------------------


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]

    def class_of(self, v: int) -> tuple[int, ...]:
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)

    def nontrivial(self) -> list[tuple[int, ...]]:
        return [c for c in self.classes if len(c) > 1]


def twin_partition(g: Graph) -> TwinPartition:
    """Group vertices by identical open neighborhood, classes ordered by least member."""
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v], []).append(v)
    return TwinPartition(tuple(sorted(tuple(c) for c in groups.values())))


def complement_edge_count(g: Graph) -> int:
    return g.n * (g.n - 1) // 2 - g.edge_count()


# -- named small graphs used throughout -----------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])
