"""Topology model, locality enforcement, link discipline."""

import json

import pytest

from gstsim.network import (
    LocalityError,
    NetworkState,
    NetworkTopology,
    link_key,
    load_topology,
    topology_from_dict,
    topology_to_dict,
    verify_target,
)
from gstsim.graphstate import GraphState

from helpers_brute import floyd_warshall


def diamond():
    # a - b
    # |   |
    # c - d
    return NetworkTopology(["a", "b", "c", "d"],
                           [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


class TestTopology:
    def test_nodes_sorted_links_canonical(self):
        t = NetworkTopology(["b", "a"], [("b", "a")])
        assert t.nodes == ("a", "b")
        assert t.links == frozenset({("a", "b")})
        assert link_key("b", "a") == ("a", "b")

    def test_duplicate_node_rejected(self):
        with pytest.raises(ValueError):
            NetworkTopology(["a", "a"], [])

    def test_self_link_rejected(self):
        with pytest.raises(ValueError):
            NetworkTopology(["a", "b"], [("a", "a"), ("a", "b")])

    def test_duplicate_link_rejected(self):
        with pytest.raises(ValueError):
            NetworkTopology(["a", "b"], [("a", "b"), ("b", "a")])

    def test_disconnected_rejected_with_component_listing(self):
        with pytest.raises(ValueError) as err:
            NetworkTopology(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])
        msg = str(err.value)
        assert "2 components" in msg and "{a, b}" in msg and "{c, d}" in msg

    def test_neighbors_sorted(self):
        t = diamond()
        assert t.neighbors("a") == ("b", "c")
        assert t.neighbors("d") == ("b", "c")

    def test_single_node_topology_allowed(self):
        t = NetworkTopology(["solo"], [])
        assert t.eccentricity("solo") == 0


class TestPathsAndDistances:
    def test_bfs_matches_floyd_warshall(self):
        t = diamond()
        fw = floyd_warshall(t)
        for src in t.nodes:
            d = t.bfs_distances(src)
            for dst in t.nodes:
                assert d[dst] == fw[(src, dst)]

    def test_shortest_path_prefers_lexicographic(self):
        """Both a-b-d and a-c-d have length 2; the b route wins."""
        assert diamond().shortest_path("a", "d") == ["a", "b", "d"]

    def test_shortest_path_trivial(self):
        assert diamond().shortest_path("a", "a") == ["a"]

    def test_eccentricity(self):
        t = diamond()
        assert t.eccentricity("a") == 2


class TestSerialization:
    def test_round_trip(self, tmp_path):
        t = diamond()
        p = tmp_path / "topo.json"
        p.write_text(json.dumps(topology_to_dict(t)))
        again = load_topology(str(p))
        assert again.nodes == t.nodes and again.links == t.links

    def test_from_dict_validates(self):
        with pytest.raises(ValueError):
            topology_from_dict({"nodes": ["a"], "links": [["a", "b"]]})


class TestNetworkState:
    def test_fresh_qubits_are_never_recycled(self):
        st = NetworkState(diamond())
        q0 = st.new_qubit("a")
        st.measure_z(q0)
        q1 = st.new_qubit("a")
        assert q1 != q0
        assert st.qubits_at("a") == [q1]

    def test_epr_spans_exactly_one_link(self):
        st = NetworkState(diamond())
        qa, qb = st.generate_epr("a", "b")
        assert st.node_of(qa) == "a" and st.node_of(qb) == "b"
        assert st.graph.has_edge(qa, qb)
        assert st.epr_generated == 1
        with pytest.raises(ValueError):
            st.generate_epr("a", "d")  # not a link

    def test_link_once_per_timestep(self):
        st = NetworkState(diamond())
        st.advance_timestep()
        st.generate_epr("a", "b")
        with pytest.raises(LocalityError):
            st.generate_epr("b", "a")
        st.generate_epr("c", "d")  # other links unaffected
        st.advance_timestep()
        st.generate_epr("a", "b")  # fresh round, fine

    def test_cz_requires_colocation(self):
        st = NetworkState(diamond())
        qa = st.new_qubit("a")
        qb = st.new_qubit("b")
        with pytest.raises(LocalityError):
            st.apply_cz(qa, qb)
        qa2 = st.new_qubit("a")
        st.apply_cz(qa, qa2)
        assert st.graph.has_edge(qa, qa2)

    def test_measurements_remove_placement(self):
        st = NetworkState(diamond())
        qa = st.new_qubit("a")
        qb = st.new_qubit("a")
        st.apply_cz(qa, qb)
        st.measure_y(qa)
        assert st.qubits_at("a") == [qb]
        with pytest.raises(ValueError):
            st.node_of(qa)


class TestVerifyTarget:
    def setup_method(self):
        self.st = NetworkState(diamond())
        self.target = GraphState(["u", "v"], [("u", "v")])

    def test_accepts_matching_placement(self):
        qa, qb = self.st.generate_epr("a", "b")
        assert verify_target(self.st, self.target, {"u": "a", "v": "b"})

    def test_rejects_wrong_node(self):
        self.st.generate_epr("a", "b")
        assert not verify_target(self.st, self.target, {"u": "a", "v": "c"})

    def test_rejects_wrong_edges(self):
        self.st.new_qubit("a")
        self.st.new_qubit("b")
        assert not verify_target(self.st, self.target, {"u": "a", "v": "b"})

    def test_rejects_leftover_live_qubits(self):
        self.st.generate_epr("a", "b")
        self.st.new_qubit("c")  # stray qubit must fail verification
        assert not verify_target(self.st, self.target, {"u": "a", "v": "b"})

    def test_accepts_among_several_candidates(self):
        """Two qubits at one node: the verifier must find the right pairing."""
        qa1, qb = self.st.generate_epr("a", "b")
        qa2 = self.st.new_qubit("a")
        target = GraphState(["u", "v", "w"], [("u", "v")])
        assert verify_target(self.st, target, {"u": "a", "v": "b", "w": "a"})
