import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gdlines import (
    DisconnectedGraphError,
    Graph,
    Graph6Error,
    GraphError,
    complement_edge_count,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diameter,
    distance_matrix,
    enumerate_connected,
    parse_edge_list,
    parse_graph6,
    path_graph,
    read_graph_file,
    to_graph6,
    twin_partition,
    wheel,
)
from gdlines.graph import iter_graph6_file

from oracles import nx_distances


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


class TestGraphType:
    def test_rejects_asymmetric_rows(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0))

    def test_rejects_loops(self):
        with pytest.raises(GraphError):
            Graph(1, (1,))

    def test_rejects_empty(self):
        with pytest.raises(GraphError):
            Graph(0, ())

    def test_edges_and_degrees(self, w6):
        assert w6.edge_count() == 10
        assert sorted(w6.degrees()) == [3, 3, 3, 3, 3, 5]

    def test_relabel_preserves_isomorphism(self, w6):
        perm = [3, 5, 0, 1, 4, 2]
        assert nx.is_isomorphic(w6.to_networkx(), w6.relabel(perm).to_networkx())


class TestGraph6:
    def test_round_trip_string(self):
        assert to_graph6(parse_graph6("E?~o")) == "E?~o"

    def test_wheel_decodes_with_hub(self):
        g = parse_graph6(to_graph6(wheel(5)))
        assert g.edge_count() == 10
        assert 5 in g.degrees()

    def test_single_vertex(self):
        g = parse_graph6("@")
        assert g.n == 1 and g.edge_count() == 0
        assert to_graph6(Graph(1, (0,))) == "@"

    def test_single_edge(self):
        assert to_graph6(path_graph(2)) == "A_"

    def test_header_accepted(self):
        assert parse_graph6(">>graph6<<A_") == path_graph(2)

    def test_agrees_with_networkx(self, w6):
        expected = nx.to_graph6_bytes(w6.to_networkx(), header=False).decode().strip()
        assert to_graph6(w6) == expected

    @pytest.mark.parametrize(
        "text, offset",
        [("A", 1), ("A__", 2), ("A~", 1), ("E?~o@", 4), ("?", 0), ("\x7f", 0)],
    )
    def test_malformed_names_offset(self, text, offset):
        with pytest.raises(Graph6Error) as err:
            parse_graph6(text)
        assert err.value.offset == offset

    def test_large_order_unsupported(self):
        with pytest.raises(GraphError):
            to_graph6(path_graph(63))

    @settings(max_examples=1000, deadline=None)
    @given(graphs())
    def test_round_trip_random(self, g):
        assert parse_graph6(to_graph6(g)) == g


class TestFileInput:
    def test_edge_list_with_comments(self):
        g = parse_edge_list("# P4\n0 1\n\n1 2  # middle\n2 3\n")
        assert g == path_graph(4)

    def test_edge_list_bad_line(self):
        with pytest.raises(GraphError):
            parse_edge_list("0 1\n1\n")

    def test_read_graph_file_detects_format(self, tmp_path):
        a = tmp_path / "w.g6"
        a.write_text("E|fG\n")
        b = tmp_path / "p.txt"
        b.write_text("0 1\n1 2\n")
        assert read_graph_file(a) == parse_graph6("E|fG")
        assert read_graph_file(b) == path_graph(3)

    def test_stream_error_names_line(self, tmp_path):
        p = tmp_path / "s.g6"
        p.write_text("A_\nE?~o\nA~\n")
        with pytest.raises(GraphError, match=r"s\.g6:3:"):
            list(iter_graph6_file(p))


class TestDistances:
    def test_path(self):
        assert distance_matrix(path_graph(4))[0][3] == 3

    def test_wheel(self, w6):
        d = distance_matrix(w6)
        assert d[1][3] == 2
        assert all(d[0][r] == 1 for r in range(1, 6))

    def test_complete(self):
        d = distance_matrix(complete_graph(5))
        assert all(d[u][v] == (u != v) for u in range(5) for v in range(5))

    def test_disconnected_raises(self):
        with pytest.raises(DisconnectedGraphError):
            distance_matrix(Graph.from_edges(4, [(0, 1), (2, 3)]))
        with pytest.raises(DisconnectedGraphError):
            diameter(Graph.from_edges(4, [(0, 1), (2, 3)]))

    @pytest.mark.parametrize("g, expected", [(wheel(5), 2), (path_graph(4), 3), (complete_graph(7), 1)])
    def test_diameter(self, g, expected):
        assert diameter(g) == expected

    def test_byte_range_boundary(self):
        assert distance_matrix(path_graph(256))[0][255] == 255
        with pytest.raises(GraphError, match="255"):
            distance_matrix(path_graph(257))

    def test_metric_axioms_exhaustive(self):
        for n in range(1, 9):
            for g in enumerate_connected(n):
                d = distance_matrix(g)
                for u in range(n):
                    assert d[u][u] == 0
                    for v in range(n):
                        assert d[u][v] == d[v][u]
                        assert (d[u][v] == 1) == g.has_edge(u, v)
                        for w in range(n):
                            assert d[u][w] <= d[u][v] + d[v][w]

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_n=14))
    def test_matches_networkx(self, g):
        if not g.is_connected():
            return
        ref = nx_distances(g.to_networkx())
        d = distance_matrix(g)
        assert all(d[u][v] == ref[u][v] for u in range(g.n) for v in range(g.n))


class TestTwins:
    def test_wheel_singletons(self, w6):
        assert twin_partition(w6).nontrivial() == []

    def test_wheel_with_twin(self, w6):
        g = w6.add_vertex(w6.neighbors(2))
        tp = twin_partition(g)
        assert tp.nontrivial() == [(2, 6)]
        assert len(tp.classes) == 6

    def test_complete_bipartite(self):
        assert sorted(twin_partition(complete_bipartite(3, 3)).nontrivial()) == [(0, 1, 2), (3, 4, 5)]

    def test_twin_rows_agree_outside_class(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(3, 10)
            g = Graph.from_edges(n, [p for p in combinations(range(n), 2) if rng.random() < 0.4])
            if not g.is_connected():
                continue
            d = distance_matrix(g)
            for cls in twin_partition(g).nontrivial():
                for a, b in combinations(cls, 2):
                    assert not g.has_edge(a, b)
                    assert all(d[a][z] == d[b][z] for z in range(n) if z not in (a, b))


@pytest.mark.parametrize("g, expected", [(complete_graph(5), 0), (cycle_graph(5), 5), (wheel(5), 5)])
def test_complement_edge_count(g, expected):
    assert complement_edge_count(g) == expected
