"""Collinearity, lines, closure lines and the deduplicated line family of a finite metric.

A metric here is a :class:`~gdlines.graph.DistanceMatrix`: either BFS distances
of a connected graph or an integer matrix accepted by :func:`validate_metric`.
All equality tests are exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .graph import DistanceMatrix, GraphError, bits, popcount

Pair = tuple[int, int]


class MetricError(ValueError):
    """A matrix violates a metric axiom; ``witness`` names the offending points."""

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str):
        super().__init__(f"{axiom} violated at {witness}: {message}")
        self.axiom = axiom
        self.witness = witness


def _distinct(*vs: int) -> None:
    if len(set(vs)) != len(vs):
        raise GraphError(f"vertices must be pairwise distinct, got {vs}")


def between(d: DistanceMatrix, a: int, b: int, c: int) -> bool:
    """The betweenness relation [abc]: d(a,b) + d(b,c) == d(a,c)."""
    return d[a][b] + d[b][c] == d[a][c]


def on_geodesic(d: DistanceMatrix, chain: Sequence[int]) -> bool:
    """[a0 a1 ... ak]: the chain's consecutive distances add up to d(a0, ak)."""
    return sum(d[x][y] for x, y in zip(chain, chain[1:])) == d[chain[0]][chain[-1]]


def is_collinear(d: DistanceMatrix, a: int, b: int, c: int) -> bool:
    _distinct(a, b, c)
    ab, bc, ac = d[a][b], d[b][c], d[a][c]
    return ab + bc == ac or ab + ac == bc or ac + bc == ab


def line_mask(d: DistanceMatrix, a: int, b: int) -> int:
    """Bit row of the line through ``a`` and ``b`` (no argument checks)."""
    dab = d[a][b]
    sa = d.shells[a]
    sb = d.shells[b]
    m = 1 << a | 1 << b
    # c between a and b
    for i, ma in sa.items():
        if 0 < i < dab:
            mb = sb.get(dab - i)
            if mb:
                m |= ma & mb
    # b between a and c, or a between b and c
    for j, mb in sb.items():
        if j:
            ma = sa.get(dab + j)
            if ma:
                m |= ma & mb
    for j, ma in sa.items():
        if j:
            mb = sb.get(dab + j)
            if mb:
                m |= ma & mb
    return m


@dataclass(frozen=True)
class Line:
    members: int
    generators: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        if popcount(self.members) < 2:
            raise ValueError("a line has at least two members")
        for u, v in self.generators:
            if not (self.members >> u & 1 and self.members >> v & 1):
                raise ValueError(f"generator {(u, v)} is not inside the line")

    @property
    def size(self) -> int:
        return popcount(self.members)

    def vertices(self) -> list[int]:
        return list(bits(self.members))

    def __contains__(self, v: int) -> bool:
        return bool(self.members >> v & 1)


def line(d: DistanceMatrix, a: int, b: int) -> Line:
    _distinct(a, b)
    return Line(line_mask(d, a, b), ((min(a, b), max(a, b)),))


def closure_mask(d: DistanceMatrix, a: int, b: int, pair_lines: dict[Pair, int] | None = None) -> int:
    """Least superset of {a, b} closed under taking lines of its pairs."""
    _distinct(a, b)

    def ln(u: int, v: int) -> int:
        if pair_lines is not None:
            return pair_lines[(u, v)]
        return line_mask(d, u, v)

    s = ln(min(a, b), max(a, b))
    while True:
        grown = s
        for u, v in combinations(bits(s), 2):
            grown |= ln(u, v)
        if grown == s:
            return s
        s = grown


def closure_line(d: DistanceMatrix, a: int, b: int) -> frozenset[int]:
    return frozenset(bits(closure_mask(d, a, b)))


@dataclass
class LineFamily:
    """Distinct lines of a metric keyed by member set, with generator bookkeeping."""

    n: int
    pair_index: dict[Pair, int]
    generators: dict[int, list[Pair]] = field(default_factory=dict)

    @property
    def masks(self) -> list[int]:
        return list(self.generators)

    @property
    def lines(self) -> list[Line]:
        return [Line(m, tuple(g)) for m, g in self.generators.items()]

    def __len__(self) -> int:
        return len(self.generators)

    def line_of(self, a: int, b: int) -> int:
        return self.pair_index[(a, b) if a < b else (b, a)]

    def line_for(self, members: int) -> Line:
        return Line(members, tuple(self.generators[members]))

    def sizes(self) -> list[int]:
        return [popcount(m) for m in self.generators]

    def multiplicities(self) -> list[int]:
        return [len(g) for g in self.generators.values()]


def pair_lines(d: DistanceMatrix) -> dict[Pair, int]:
    return {(a, b): line_mask(d, a, b) for a, b in combinations(range(d.n), 2)}


def line_family(d: DistanceMatrix) -> LineFamily:
    """Compute all C(n,2) lines and merge them by member set.

    Lines are merged in pair order, so the family (including the order of
    its lines and generators) depends only on the metric.
    """
    idx = pair_lines(d)
    gens: dict[int, list[Pair]] = {}
    for p, m in idx.items():
        gens.setdefault(m, []).append(p)
    return LineFamily(d.n, idx, gens)


def has_universal_line(f: LineFamily, n: int) -> bool:
    full = (1 << n) - 1
    return any(m == full for m in f.generators)


def validate_metric(m: Sequence[Sequence[int]]) -> DistanceMatrix:
    """Accept a square non-negative integer matrix that is a metric.

    Raises :class:`MetricError` with a witness tuple for the first violated
    axiom found (checked in the order: shape, integrality, diagonal,
    positivity, symmetry, triangle inequality).
    """
    n = len(m)
    if n < 1:
        raise MetricError("shape", (), "empty matrix")
    for i, row in enumerate(m):
        if len(row) != n:
            raise MetricError("shape", (i,), f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or int(x) != x:
                raise MetricError("integrality", (i, j), f"entry {x!r} is not an integer")
    for i in range(n):
        if m[i][i] != 0:
            raise MetricError("zero diagonal", (i,), f"d({i},{i}) = {m[i][i]}")
    for i, j in combinations(range(n), 2):
        if m[i][j] <= 0:
            raise MetricError("positivity", (i, j), f"d({i},{j}) = {m[i][j]}")
        if m[i][j] != m[j][i]:
            raise MetricError("symmetry", (i, j), f"d({i},{j}) = {m[i][j]} != d({j},{i}) = {m[j][i]}")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if m[a][b] > m[a][c] + m[c][b]:
                    raise MetricError(
                        "triangle inequality",
                        (a, b, c),
                        f"d({a},{b}) = {m[a][b]} > d({a},{c}) + d({c},{b}) = {m[a][c] + m[c][b]}",
                    )
    return DistanceMatrix(n, [[int(x) for x in row] for row in m])


def collinear_triples(d: DistanceMatrix) -> Iterator[tuple[int, int, int]]:
    for a, b, c in combinations(range(d.n), 3):
        if is_collinear(d, a, b, c):
            yield a, b, c
