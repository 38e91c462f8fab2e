"""Max-flow planning: values, decomposition, and the k optimizer."""

import random

import pytest

from gstsim.flow import (
    FlowInstance,
    FlowResult,
    decompose_flow,
    max_flow,
    min_saturating_k,
    minimize_completion_time,
)
from gstsim.network import NetworkTopology
from gstsim.topogen import gnp_topology, line_topology

from helpers_brute import brute_max_served, path_multiset_exists


def bowtie():
    """Seven nodes; the root reaches three leaves through two bridges."""
    return NetworkTopology(
        ["root", "n1", "n2", "n3", "s1", "s2", "s3"],
        [("root", "n1"), ("root", "n2"), ("n1", "s1"),
         ("n2", "n3"), ("n3", "s2"), ("n3", "s3")])


class TestInstance:
    def test_targets_validated(self):
        with pytest.raises(ValueError):
            FlowInstance(line_topology(3), "n00", ["n09"], 1)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            FlowInstance(line_topology(3), "n00", ["n02"], 0)

    def test_reusable_across_calls(self):
        inst = FlowInstance(bowtie(), "root", ["s1", "s2", "s3"], 2)
        first = max_flow(inst).value
        second = max_flow(inst).value
        assert first == second == 3


class TestMaxFlow:
    def test_line_is_one_lane(self):
        topo = line_topology(5)
        inst = FlowInstance(topo, "n00", ["n03", "n04"], 1)
        assert max_flow(inst).value == 1
        inst2 = FlowInstance(topo, "n00", ["n03", "n04"], 2)
        assert max_flow(inst2).value == 2

    def test_bowtie_values(self):
        topo = bowtie()
        S = ["s1", "s2", "s3"]
        assert max_flow(FlowInstance(topo, "root", S, 1)).value == 2
        assert max_flow(FlowInstance(topo, "root", S, 2)).value == 3

    def test_root_in_targets_is_free(self):
        topo = line_topology(3)
        inst = FlowInstance(topo, "n00", ["n00", "n02"], 1)
        assert max_flow(inst).value == 2

    def test_monotone_in_k(self):
        rng = random.Random(19)
        for seed in range(8):
            topo = gnp_topology(rng.randint(4, 7), 0.4, seed=seed)
            nodes = list(topo.nodes)
            root = rng.choice(nodes)
            S = sorted(rng.sample(nodes, rng.randint(2, len(nodes) - 1)))
            prev = 0
            for k in range(1, len(S) + 1):
                val = max_flow(FlowInstance(topo, root, S, k)).value
                assert val >= prev
                prev = val
            assert prev == len(S)  # k = |S| always suffices

    def test_matches_brute_force_value(self):
        rng = random.Random(23)
        for seed in range(6):
            topo = gnp_topology(5, 0.45, seed=seed)
            nodes = list(topo.nodes)
            root = rng.choice(nodes)
            S = sorted(rng.sample(nodes, 3))
            for k in (1, 2):
                got = max_flow(FlowInstance(topo, root, S, k)).value
                want = brute_max_served(topo, root, S, k)
                assert got == want


class TestDecomposition:
    def test_paths_serve_every_target_within_budget(self):
        topo = bowtie()
        inst = FlowInstance(topo, "root", ["s1", "s2", "s3"], 2)
        plan = decompose_flow(max_flow(inst))
        assert sorted(plan.paths) == ["s1", "s2", "s3"]
        usage = {}
        for t, path in plan.paths.items():
            assert path[0] == "root" and path[-1] == t
            for i in range(len(path) - 1):
                assert topo.has_link(path[i], path[i + 1])
                key = tuple(sorted((path[i], path[i + 1])))
                usage[key] = usage.get(key, 0) + 1
        assert max(usage.values()) <= 2

    def test_requires_saturating_flow(self):
        inst = FlowInstance(bowtie(), "root", ["s1", "s2", "s3"], 1)
        result = max_flow(inst)
        assert result.value == 2
        with pytest.raises(ValueError):
            decompose_flow(result)

    def test_cycle_component_is_ignored(self):
        """Adding a circulating cycle to the flow must not change the paths."""
        topo = NetworkTopology(
            ["r", "a", "b", "c", "t"],
            [("r", "a"), ("a", "t"), ("a", "b"), ("b", "c"), ("c", "a")])
        inst = FlowInstance(topo, "r", ["t"], 1)
        result = max_flow(inst)
        plain = decompose_flow(result).paths
        spiked = dict(result.link_flow)
        for arc in [("a", "b"), ("b", "c"), ("c", "a")]:
            spiked[arc] = spiked.get(arc, 0) + 1
        tampered = FlowResult(instance=inst, value=result.value, link_flow=spiked)
        assert decompose_flow(tampered).paths == plain

    def test_root_in_targets_gets_empty_path(self):
        topo = line_topology(3)
        inst = FlowInstance(topo, "n00", ["n00", "n01"], 1)
        plan = decompose_flow(max_flow(inst))
        assert plan.paths["n00"] == ["n00"]
        assert plan.epr_cost == 1


class TestOptimizer:
    def test_min_saturating_k_on_line(self):
        topo = line_topology(5)
        S = list(topo.nodes)
        assert min_saturating_k(topo, S, "n00") == 4
        assert min_saturating_k(topo, S, "n02") == 2

    def test_min_saturating_k_brute_checked(self):
        rng = random.Random(3)
        for seed in range(6):
            topo = gnp_topology(5, 0.5, seed=seed)
            nodes = list(topo.nodes)
            root = rng.choice(nodes)
            S = sorted(rng.sample(nodes, 3))
            k = min_saturating_k(topo, S, root)
            assert path_multiset_exists(topo, root, S, k)
            if k > 1:
                assert not path_multiset_exists(topo, root, S, k - 1)

    def test_bowtie_pinned_vs_free_root(self):
        topo = bowtie()
        S = ["s1", "s2", "s3"]
        root, k, plan = minimize_completion_time(topo, S, roots=["root"])
        assert (root, k) == ("root", 2)
        assert sorted(plan.paths) == S
        free_root, free_k, _ = minimize_completion_time(topo, S)
        assert (free_root, free_k) == ("n3", 1)

    def test_lexicographic_root_tie_break(self):
        topo = line_topology(3)
        S = ["n00", "n02"]
        root, k, _ = minimize_completion_time(topo, S)
        # n00, n01, n02 all reach both targets at k=1; smallest name wins
        assert k == 1 and root == "n00"

    def test_roots_must_exist(self):
        with pytest.raises(ValueError):
            minimize_completion_time(line_topology(3), ["n02"], roots=["zz"])


def test_theorem_two_equivalence_sample():
    """Flow saturation ⟺ a path multiset exists (small random sample;
    the acceptance suite grinds a much larger one)."""
    rng = random.Random(47)
    for seed in range(10):
        n = rng.randint(3, 6)
        topo = gnp_topology(n, 0.5, seed=seed + 100)
        nodes = list(topo.nodes)
        root = rng.choice(nodes)
        S = sorted(rng.sample(nodes, rng.randint(1, n - 1)))
        for k in range(1, len(S) + 1):
            flow_ok = max_flow(FlowInstance(topo, root, S, k)).value == len(S)
            brute_ok = path_multiset_exists(topo, root, [t for t in S if t != root], k)
            assert flow_ok == brute_ok
