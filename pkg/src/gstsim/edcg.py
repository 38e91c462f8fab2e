"""Cost model for the GHZ-ladder baseline.

The baseline shares an edge-decorated complete graph among the target nodes
by distributing a cascade of GHZ states: first an m-party GHZ over all of
{s_1..s_m}, then over {s_2..s_m}, and so on down to the final pair — each
suffix costing one EPR pair per edge of a tree spanning it.  This module
only *costs* that construction (tree sizes, timesteps, qubit footprint);
nothing is simulated.  Spanning trees come from the classic metric-closure
MST approximation (within 2x of optimal Steiner, exact on tree networks),
so reported pair counts are a modeled upper estimate — report rows carry a
"modeled-cost" marker for exactly this reason.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import permutations

from .network import NetworkTopology, NodeId

logger = logging.getLogger(__name__)


def _mst_on_terminals(topology: NetworkTopology, terminals: list) -> list[tuple]:
    """Kruskal over the metric closure; deterministic (weight, u, v) order."""
    dists = {t: topology.bfs_distances(t) for t in terminals}
    cands = sorted(
        (dists[u][v], u, v)
        for i, u in enumerate(terminals)
        for v in terminals[i + 1:]
    )
    parent = {t: t for t in terminals}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for w, u, v in cands:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append((u, v))
    return chosen


def steiner_tree(topology: NetworkTopology, terminals) -> set:
    """Edge set of a tree spanning the terminals (metric-closure MST expansion).

    Each closure edge becomes its lexicographically-least shortest path; the
    union is thinned to a tree (BFS spanning tree from the smallest terminal,
    then repeated pruning of non-terminal leaves).
    """
    terminals = sorted(set(terminals))
    if not terminals:
        raise ValueError("need at least one terminal")
    for t in terminals:
        if t not in topology.nodes:
            raise ValueError(f"terminal {t!r} is not a topology node")
    if len(terminals) == 1:
        return set()

    union_adj: dict = {}

    def add(u, v):
        union_adj.setdefault(u, set()).add(v)
        union_adj.setdefault(v, set()).add(u)

    for u, v in _mst_on_terminals(topology, terminals):
        path = topology.shortest_path(u, v)
        for a, b in zip(path, path[1:]):
            add(a, b)

    # BFS spanning tree of the union graph
    root = terminals[0]
    parent = {root: None}
    queue = [root]
    while queue:
        cur = queue.pop(0)
        for nb in sorted(union_adj.get(cur, ())):
            if nb not in parent:
                parent[nb] = cur
                queue.append(nb)
    tree_adj: dict = {v: set() for v in parent}
    for v, p in parent.items():
        if p is not None:
            tree_adj[v].add(p)
            tree_adj[p].add(v)

    # prune non-terminal leaves until only the Steiner tree remains
    need = set(terminals)
    changed = True
    while changed:
        changed = False
        for v in sorted(tree_adj):
            if v not in need and len(tree_adj[v]) <= 1:
                for nb in tree_adj.pop(v):
                    tree_adj[nb].discard(v)
                changed = True
    edges = set()
    for v, nbrs in tree_adj.items():
        for nb in nbrs:
            edges.add((v, nb) if v <= nb else (nb, v))
    return edges


def _suffix_cost(topology: NetworkTopology, order: list) -> int:
    return sum(
        len(steiner_tree(topology, order[i:]))
        for i in range(len(order) - 1)
    )


def _peel_order(topology: NetworkTopology, targets: list) -> list:
    """Repeatedly strip the smallest terminal sitting on a leaf of the tree.

    The terminal removed first becomes s_1, so every suffix's spanning tree
    loses exactly one leaf edge relative to the previous one whenever the
    network itself is a tree — the ordering the cascade cost story assumes.
    """
    remaining = list(targets)
    prefix_reversed = []
    while len(remaining) > 1:
        edges = steiner_tree(topology, remaining)
        degree: dict = {}
        for u, v in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaves = [t for t in remaining if degree.get(t, 0) <= 1]
        pick = min(leaves) if leaves else min(remaining)
        prefix_reversed.append(pick)
        remaining.remove(pick)
    return prefix_reversed + remaining


def edcg_order(targets, topology: NetworkTopology, mode: str = "peel") -> list:
    """Deterministic ordering s_1..s_m of the targets for the GHZ cascade.

    Modes: "peel" (default; leaf-stripping order described above), "lex"
    (plain sort), "exhaustive" (cheapest over all permutations; capped at 8
    targets — beyond that it errors, and callers fall back with a warning).
    """
    targets = sorted(set(targets))
    if mode == "lex":
        return targets
    if mode == "peel":
        return _peel_order(topology, targets)
    if mode == "exhaustive":
        if len(targets) > 8:
            raise ValueError(
                f"exhaustive ordering supports at most 8 targets, got {len(targets)}"
            )
        best = min(
            permutations(targets),
            key=lambda order: (_suffix_cost(topology, list(order)), order),
        )
        return list(best)
    raise ValueError(f"unknown ordering mode {mode!r}")


@dataclass(frozen=True)
class EdcgPlan:
    """Ordered cascade plus the spanning tree charged to each suffix."""

    order: tuple
    suffix_trees: tuple  # tuple of frozensets, one per suffix {s_k..s_m}, k = 1..m-1

    @property
    def epr_pairs(self) -> int:
        return sum(len(t) for t in self.suffix_trees)


def build_edcg_plan(topology: NetworkTopology, order) -> EdcgPlan:
    order = list(order)
    trees = tuple(
        frozenset(steiner_tree(topology, order[i:]))
        for i in range(len(order) - 1)
    )
    return EdcgPlan(tuple(order), trees)


@dataclass(frozen=True)
class EdcgCost:
    epr_pairs: int
    timesteps: int
    classical_bits: int
    resource_qubits: int


def edcg_cost(topology: NetworkTopology, targets, mode: str = "peel") -> tuple[EdcgPlan, EdcgCost]:
    """Modeled cost of sharing the edge-decorated complete graph over targets.

    EPR pairs: sum of suffix spanning-tree sizes.  Timesteps: m - 1 (one
    GHZ layer per step).  Resource qubits: m(m+1)/2 — the complete graph's
    vertices plus one decoration per edge.  Classical bits: 2 per EPR pair
    plus 2 per complete-graph edge slot.
    """
    targets = sorted(set(targets))
    m = len(targets)
    if m == 0:
        raise ValueError("need at least one target")
    try:
        order = edcg_order(targets, topology, mode)
    except ValueError:
        if mode != "exhaustive":
            raise
        logger.warning(
            "exhaustive ordering unavailable for %d targets; falling back to peel", m
        )
        order = edcg_order(targets, topology, "peel")
    plan = build_edcg_plan(topology, order)
    epr = plan.epr_pairs
    cost = EdcgCost(
        epr_pairs=epr,
        timesteps=max(m - 1, 0),
        classical_bits=2 * epr + m * (m - 1),
        resource_qubits=m * (m + 1) // 2,
    )
    return plan, cost
