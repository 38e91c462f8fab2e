"""Network topology and the simulated network-wide quantum state.

A topology is a connected, undirected graph of nodes joined by quantum
links.  The network state tracks every live qubit's location plus the one
shared entanglement graph over all live qubits; local gates are free, and
the only way two qubits at different nodes ever become entangled is an EPR
pair generated across a link.

Timesteps model link contention: within one step each link may source at
most one EPR pair (enforced when the discipline flag is on, which execution
always sets — a violation is a planner bug, not a user error).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graphstate import GraphState

NodeId = str
QubitId = int
Link = tuple  # canonical (min, max) node pair


class LocalityError(ValueError):
    """A two-qubit gate was requested across nodes."""


def link_key(u: NodeId, v: NodeId) -> Link:
    return (u, v) if u <= v else (v, u)


class NetworkTopology:
    """Immutable undirected network graph with deterministic adjacency."""

    def __init__(self, nodes, links):
        self._nodes = tuple(sorted(nodes))
        if len(set(self._nodes)) != len(self._nodes):
            raise ValueError("duplicate node ids in topology")
        node_set = set(self._nodes)
        seen = set()
        adj = {v: [] for v in self._nodes}
        for u, v in links:
            if u == v:
                raise ValueError(f"self-link on {u!r}")
            if u not in node_set or v not in node_set:
                raise ValueError(f"link ({u!r}, {v!r}) references unknown node")
            key = link_key(u, v)
            if key in seen:
                raise ValueError(f"duplicate link {key!r}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self._links = frozenset(seen)
        self._adj = {v: tuple(sorted(ns)) for v, ns in adj.items()}
        comps = self.components()
        if len(comps) > 1:
            names = "; ".join("{" + ", ".join(c) + "}" for c in comps)
            raise ValueError(
                f"topology is disconnected into {len(comps)} components: {names}"
            )

    @property
    def nodes(self) -> tuple:
        return self._nodes

    @property
    def links(self) -> frozenset:
        return self._links

    def __len__(self) -> int:
        return len(self._nodes)

    def has_link(self, u: NodeId, v: NodeId) -> bool:
        return link_key(u, v) in self._links

    def neighbors(self, v: NodeId) -> tuple:
        if v not in self._adj:
            raise ValueError(f"unknown node {v!r}")
        return self._adj[v]

    def components(self) -> list[list[NodeId]]:
        """Connected components, each sorted, ordered by smallest member."""
        seen = set()
        comps = []
        for start in self._nodes:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            queue = [start]
            while queue:
                cur = queue.pop(0)
                for nb in self._adj[cur]:
                    if nb not in seen:
                        seen.add(nb)
                        comp.append(nb)
                        queue.append(nb)
            comps.append(sorted(comp))
        return comps

    # -- shortest-path machinery (deterministic: lexicographic everywhere) --

    def bfs_distances(self, src: NodeId) -> dict:
        """Hop counts from ``src`` to every reachable node."""
        if src not in self._adj:
            raise ValueError(f"unknown node {src!r}")
        dist = {src: 0}
        queue = [src]
        while queue:
            cur = queue.pop(0)
            for nb in self._adj[cur]:
                if nb not in dist:
                    dist[nb] = dist[cur] + 1
                    queue.append(nb)
        return dist

    def shortest_path(self, src: NodeId, dst: NodeId) -> list[NodeId]:
        """Lexicographically smallest among all shortest src->dst paths."""
        d_src = self.bfs_distances(src)
        if dst not in d_src:
            raise ValueError(f"no path from {src!r} to {dst!r}")
        d_dst = self.bfs_distances(dst)
        total = d_src[dst]
        path = [src]
        cur = src
        while cur != dst:
            # smallest neighbor still on some shortest path
            step = d_src[cur] + 1
            nxt = min(
                nb for nb in self._adj[cur]
                if d_src.get(nb) == step and step + d_dst.get(nb, total + 1) == total
            )
            path.append(nxt)
            cur = nxt
        return path

    def eccentricity(self, v: NodeId) -> int:
        return max(self.bfs_distances(v).values())


def topology_from_dict(data: dict) -> NetworkTopology:
    if not isinstance(data, dict) or "nodes" not in data or "links" not in data:
        raise ValueError("topology document needs 'nodes' and 'links' keys")
    nodes = data["nodes"]
    links = [tuple(pair) for pair in data["links"]]
    return NetworkTopology(nodes, links)


def load_topology(path: str) -> NetworkTopology:
    """Read a topology JSON file: {"nodes": [...], "links": [[u, v], ...]}."""
    with open(path) as fh:
        return topology_from_dict(json.load(fh))


def topology_to_dict(topo: NetworkTopology) -> dict:
    return {
        "nodes": list(topo.nodes),
        "links": [list(l) for l in sorted(topo.links)],
    }


@dataclass
class TimestepLedger:
    """Per-step link usage plus running totals."""

    current_step: int = 0
    usage: dict = field(default_factory=dict)   # link -> uses this step
    epr_total: int = 0
    enforce: bool = True

    def advance(self) -> None:
        self.current_step += 1
        self.usage = {}

    def record(self, link: Link) -> None:
        count = self.usage.get(link, 0)
        if self.enforce and count >= 1:
            raise LocalityError(
                f"link {link!r} already used in timestep {self.current_step}"
            )
        self.usage[link] = count + 1
        self.epr_total += 1


class NetworkState:
    """Single-writer mutable view: placement map + shared entanglement graph."""

    def __init__(self, topology: NetworkTopology, enforce_link_discipline: bool = True):
        self.topology = topology
        self.graph = GraphState()
        self.placement: dict[QubitId, NodeId] = {}
        self.ledger = TimestepLedger(enforce=enforce_link_discipline)
        self._next_qubit: QubitId = 0

    # -- qubit management ----------------------------------------------------

    def new_qubit(self, node: NodeId) -> QubitId:
        """Mint a fresh |+> qubit at ``node``.  Ids are never recycled."""
        if node not in self.topology._adj:
            raise ValueError(f"unknown node {node!r}")
        q = self._next_qubit
        self._next_qubit += 1
        self.graph = self.graph.add_vertex(q)
        self.placement[q] = node
        return q

    def node_of(self, q: QubitId) -> NodeId:
        if q not in self.placement:
            raise ValueError(f"qubit {q!r} is not live")
        return self.placement[q]

    def qubits_at(self, node: NodeId) -> list[QubitId]:
        return sorted(q for q, nd in self.placement.items() if nd == node)

    # -- operations ----------------------------------------------------------

    def generate_epr(self, u: NodeId, v: NodeId) -> tuple[QubitId, QubitId]:
        """Create an entangled pair across link (u, v); returns (qubit@u, qubit@v).

        Counts against the current timestep's link budget and the total EPR
        tally.
        """
        if not self.topology.has_link(u, v):
            raise ValueError(f"no link between {u!r} and {v!r}")
        self.ledger.record(link_key(u, v))
        qu = self.new_qubit(u)
        qv = self.new_qubit(v)
        self.graph = self.graph.toggle_edge(qu, qv)
        return qu, qv

    def apply_cz(self, q1: QubitId, q2: QubitId) -> None:
        """Local CZ: both qubits must sit at the same node."""
        n1, n2 = self.node_of(q1), self.node_of(q2)
        if n1 != n2:
            raise LocalityError(
                f"CZ across nodes {n1!r} and {n2!r} (qubits {q1}, {q2}); "
                "cross-node entanglement must come from generate_epr"
            )
        self.graph = self.graph.toggle_edge(q1, q2)

    def measure_y(self, q: QubitId) -> None:
        self.node_of(q)
        self.graph = self.graph.measure_y(q)
        del self.placement[q]

    def measure_z(self, q: QubitId) -> None:
        self.node_of(q)
        self.graph = self.graph.measure_z(q)
        del self.placement[q]

    def apply_local(self, op: str, qubits) -> None:
        """String-dispatch convenience over the typed operations above."""
        if op == "cz":
            q1, q2 = qubits
            self.apply_cz(q1, q2)
        elif op == "measure_y":
            (q,) = qubits
            self.measure_y(q)
        elif op == "measure_z":
            (q,) = qubits
            self.measure_z(q)
        else:
            raise ValueError(f"unknown local op {op!r}")

    def advance_timestep(self) -> None:
        self.ledger.advance()

    @property
    def epr_generated(self) -> int:
        return self.ledger.epr_total


def verify_target(state: NetworkState, target: GraphState, assignment: dict) -> bool:
    """Does the live entanglement graph realize the target at its destinations?

    ``assignment`` maps each target vertex to the node that must hold it.
    True iff some bijection from target vertices onto the live qubits is both
    placement-respecting and edge-preserving (exactly — no extra or missing
    entanglement, no extra live qubits).
    """
    vertices = sorted(target.vertices)
    if set(assignment) != set(vertices):
        raise ValueError("assignment must cover exactly the target vertices")
    live = sorted(state.placement)
    if len(live) != len(vertices):
        return False
    candidates = {v: state.qubits_at(assignment[v]) for v in vertices}

    mapping: dict = {}
    used: set = set()

    def backtrack(i: int) -> bool:
        if i == len(vertices):
            return True
        v = vertices[i]
        for q in candidates[v]:
            if q in used:
                continue
            ok = True
            for w, qw in mapping.items():
                if target.has_edge(v, w) != state.graph.has_edge(q, qw):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = q
            used.add(q)
            if backtrack(i + 1):
                return True
            del mapping[v]
            used.remove(q)
        return False

    return backtrack(0)
