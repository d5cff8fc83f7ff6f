"""Canonical labeling of small graphs by colour refinement and individualization search.

The canonical form is the lexicographically least upper-triangle adjacency
code (graph6 bit order) over all leaves of the refinement search tree.
Automorphisms discovered at equal leaves prune sibling subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, GraphError

MAX_CANONICAL_N = 10

Adj = Sequence[int]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    code: int

    def graph(self) -> Graph:
        return graph_from_code(self.n, self.code)


def adjacency_code(adj: Adj, order: Sequence[int]) -> int:
    """Upper-triangle bits of the graph relabeled so that ``order[i]`` becomes ``i``.

    Bits are taken column by column: (0,1), (0,2), (1,2), (0,3), ...; the
    first bit is the most significant.
    """
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def graph_from_code(n: int, code: int) -> Graph:
    rows = [0] * n
    k = n * (n - 1) // 2
    for j in range(1, n):
        for i in range(j):
            k -= 1
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def _refine(adj: Adj, cells: list[list[int]]) -> list[list[int]]:
    # Split every cell by neighbour counts into all current cells until stable.
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in c:
                row = adj[v]
                groups.setdefault(tuple((row & m).bit_count() for m in masks), []).append(v)
            if len(groups) == 1:
                out.append(c)
                continue
            split = True
            for key in sorted(groups):
                out.append(groups[key])
        if not split:
            return out
        cells = out


def _orbit_roots(n: int, gens: list[tuple[int, ...]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, n: int, adj: Adj):
        self.n = n
        self.adj = adj
        self.best_code: int | None = None
        self.best_order: list[int] | None = None
        self.first_code: int | None = None
        self.first_order: list[int] | None = None
        self.autos: list[tuple[int, ...]] = []

    def _leaf(self, cells: list[list[int]]) -> None:
        order = [c[0] for c in cells]
        code = adjacency_code(self.adj, order)
        if self.first_code is None:
            self.first_code, self.first_order = code, order
            self.best_code, self.best_order = code, order
            return
        for ref_code, ref_order in ((self.first_code, self.first_order), (self.best_code, self.best_order)):
            if code == ref_code:
                gamma = [0] * self.n
                for pos, v in enumerate(order):
                    gamma[v] = ref_order[pos]
                gamma = tuple(gamma)
                if gamma not in self.autos and any(gamma[v] != v for v in range(self.n)):
                    self.autos.append(gamma)
                return
        if code < self.best_code:
            self.best_code, self.best_order = code, order

    def run(self, cells: list[list[int]], prefix: tuple[int, ...]) -> None:
        target = None
        for i, c in enumerate(cells):
            if len(c) > 1:
                target = i
                break
        if target is None:
            self._leaf(cells)
            return
        done: list[int] = []
        for v in cells[target]:
            if done:
                gens = [g for g in self.autos if all(g[p] == p for p in prefix)]
                if gens:
                    roots = _orbit_roots(self.n, gens)
                    if any(roots[v] == roots[w] for w in done):
                        continue
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            self.run(_refine(self.adj, child), prefix + (v,))
            done.append(v)


def canonical_labeling(n: int, adj: Adj) -> tuple[int, list[int], list[tuple[int, ...]]]:
    """Return ``(code, order, automorphisms)``; ``order[i]`` is the vertex placed at position ``i``."""
    if n > MAX_CANONICAL_N:
        raise GraphError(f"canonical forms are supported for n <= {MAX_CANONICAL_N}, got {n}")
    if n == 1:
        return 0, [0], []
    by_degree: dict[int, list[int]] = {}
    for v in range(n):
        by_degree.setdefault(adj[v].bit_count(), []).append(v)
    cells = _refine(adj, [by_degree[k] for k in sorted(by_degree)])
    s = _Search(n, adj)
    s.run(cells, ())
    return s.best_code, s.best_order, s.autos


def canonical_form(g: Graph) -> CanonicalForm:
    code, _, _ = canonical_labeling(g.n, g.adj)
    return CanonicalForm(g.n, code)


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).graph()


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    """Automorphisms found during the canonical search (they generate a subgroup of Aut(g))."""
    return canonical_labeling(g.n, g.adj)[2]
