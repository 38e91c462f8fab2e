"""Graph-state rewrite rules at the pure-graph level."""

import random

import pytest

from gstsim.graphstate import GraphState, edge_key


class TestConstruction:
    def test_vertices_and_edges(self):
        g = GraphState(["a", "b", "c"], [("a", "b"), ("c", "b")])
        assert g.vertices == frozenset({"a", "b", "c"})
        assert g.edges == frozenset({("a", "b"), ("b", "c")})
        assert g.neighbors("b") == frozenset({"a", "c"})
        assert g.degree("b") == 2 and g.degree("a") == 1

    def test_edge_key_is_order_free(self):
        assert edge_key(2, 1) == edge_key(1, 2) == (1, 2)

    def test_duplicate_edges_collapse(self):
        g = GraphState([1, 2], [(1, 2), (2, 1), (1, 2)])
        assert len(g.edges) == 1

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            GraphState([1], [(1, 1)])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValueError):
            GraphState([1, 2], [(1, 3)])

    def test_equality_ignores_retired_history(self):
        a = GraphState([1, 2, 3], [(1, 2)]).measure_z(3)
        b = GraphState([1, 2], [(1, 2)])
        assert a == b
        assert hash(a) == hash(b)

    def test_add_vertex(self):
        g = GraphState([1], []).add_vertex(2)
        assert 2 in g
        with pytest.raises(ValueError):
            g.add_vertex(1)


class TestToggle:
    def test_toggle_creates_and_removes(self):
        g = GraphState([1, 2], [])
        g2 = g.toggle_edge(1, 2)
        assert g2.has_edge(1, 2)
        assert g2.toggle_edge(2, 1) == g

    def test_toggle_is_involution_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(25):
            n = rng.randint(2, 7)
            verts = list(range(n))
            edges = [e for e in
                     [(i, j) for i in range(n) for j in range(i + 1, n)]
                     if rng.random() < 0.4]
            g = GraphState(verts, edges)
            u, v = rng.sample(verts, 2)
            assert g.toggle_edge(u, v).toggle_edge(u, v) == g

    def test_toggle_needs_two_live_vertices(self):
        g = GraphState([1, 2], [])
        with pytest.raises(ValueError):
            g.toggle_edge(1, 1)
        with pytest.raises(ValueError):
            g.toggle_edge(1, 9)


class TestLocalComplement:
    def test_star_becomes_complete(self):
        """Complementing a star's hub joins all the leaves."""
        g = GraphState(range(4), [(0, 1), (0, 2), (0, 3)])
        lc = g.local_complement(0)
        assert lc.edges == frozenset(
            {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
        )

    def test_triangle_opens_at_apex(self):
        g = GraphState(range(3), [(0, 1), (0, 2), (1, 2)])
        assert g.local_complement(0).edges == frozenset({(0, 1), (0, 2)})

    def test_involution(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(2, 7)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.5]
            g = GraphState(range(n), edges)
            a = rng.randrange(n)
            assert g.local_complement(a).local_complement(a) == g

    def test_untouched_elsewhere(self):
        g = GraphState(range(5), [(0, 1), (2, 3), (3, 4)])
        lc = g.local_complement(0)
        assert lc.has_edge(2, 3) and lc.has_edge(3, 4)


class TestMeasurements:
    def test_z_removes_vertex_and_edges(self):
        g = GraphState(range(3), [(0, 1), (1, 2)])
        after = g.measure_z(1)
        assert after.vertices == frozenset({0, 2})
        assert after.edges == frozenset()
        assert after.retired == frozenset({1})

    def test_y_on_path_center_fuses_ends(self):
        """Y on the middle of a 3-path leaves its ends joined."""
        g = GraphState(["a", "b", "c"], [("a", "b"), ("b", "c")])
        after = g.measure_y("b")
        assert after.vertices == frozenset({"a", "c"})
        assert after.edges == frozenset({("a", "c")})

    def test_y_equals_lc_then_z(self):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randint(2, 7)
            edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                     if rng.random() < 0.5]
            g = GraphState(range(n), edges)
            a = rng.randrange(n)
            assert g.measure_y(a) == g.local_complement(a).measure_z(a)

    def test_retired_vertices_stay_dead(self):
        g = GraphState([1, 2], [(1, 2)]).measure_z(1)
        with pytest.raises(ValueError):
            g.measure_z(1)
        with pytest.raises(ValueError):
            g.add_vertex(1)
        with pytest.raises(ValueError):
            g.toggle_edge(1, 2)


def test_transfer_identity_moves_neighborhood():
    """CZ(a,b) then Y(a), Y(b) hands a's other edges to c.

    Shapes covered: c already adjacent to a or not, arbitrary spectator
    edges, arbitrary edges from a into the spectators.
    """
    rng = random.Random(23)
    for _ in range(60):
        spect = ["x0", "x1", "x2", "x3"]
        verts = ["a", "b", "c"] + spect
        edges = [("b", "c")]
        for s in spect:
            if rng.random() < 0.5:
                edges.append(("a", s))
        for i in range(len(spect)):
            for j in range(i + 1, len(spect)):
                if rng.random() < 0.4:
                    edges.append((spect[i], spect[j]))
        c_adj_a = rng.random() < 0.5
        if c_adj_a:
            edges.append(("a", "c"))
        g = GraphState(verts, edges)
        # the b-a edge comes from the CZ step of the transfer
        moved = g.toggle_edge("a", "b").measure_y("a").measure_y("b")
        want_c = g.neighbors("a") - {"b", "c"}
        assert moved.neighbors("c") == want_c
        # spectator edges and non-c endpoints must be exactly preserved
        kept = {e for e in g.edges if "a" not in e and "b" not in e and "c" not in e}
        assert {e for e in moved.edges if "c" not in e} == kept
