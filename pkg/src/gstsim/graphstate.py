"""Graph states as pure edge-set rewrites.

A graph state on vertex set V is the stabilizer state prepared by putting
every vertex qubit in |+> and applying CZ across every edge.  All the
entangling structure lives in the (simple, undirected) graph, so the three
operations this module exposes — CZ edge toggles, local complementation and
single-qubit Pauli measurements — are implemented as graph rewrites.  The
state-vector module provides the independent check that these rewrites agree
with actual quantum semantics.

Measurement outcomes differ only by single-qubit corrections, which carry no
entanglement structure; the rewrite therefore tracks a single canonical graph
per operation and the corrections are never modeled here.

``GraphState`` values are immutable: every operation returns a new instance
and never mutates its receiver.  Measured (removed) vertex ids are retired
permanently and may not be re-added — fresh ids must always be minted by the
caller.
"""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable

# Vertex ids only need to be hashable and mutually orderable; the network
# layer uses ints, target descriptions use strings.
VertexId = Hashable


def edge_key(u: VertexId, v: VertexId) -> tuple:
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


class GraphState:
    """Immutable simple graph representing a stabilizer graph state.

    Stores both an adjacency map (frozensets, so neighborhood queries are
    O(deg) and structure can be shared between versions) and the canonical
    edge set (O(1) membership).
    """

    __slots__ = ("_adj", "_edges", "_retired")

    def __init__(
        self,
        vertices: Iterable[VertexId] = (),
        edges: Iterable[tuple] = (),
        _retired: frozenset = frozenset(),
    ):
        adj: dict = {v: set() for v in vertices}
        eset = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r} is not a valid edge")
            if u not in adj or v not in adj:
                raise ValueError(f"edge ({u!r}, {v!r}) references unknown vertex")
            key = edge_key(u, v)
            if key in eset:
                continue
            eset.add(key)
            adj[u].add(v)
            adj[v].add(u)
        bad = _retired.intersection(adj)
        if bad:
            raise ValueError(f"vertices {sorted(bad)!r} are retired")
        self._adj = {v: frozenset(nbrs) for v, nbrs in adj.items()}
        self._edges = frozenset(eset)
        self._retired = _retired

    # -- construction helpers ------------------------------------------------

    @classmethod
    def _from_parts(cls, adj: dict, edges: frozenset, retired: frozenset) -> "GraphState":
        g = cls.__new__(cls)
        g._adj = adj
        g._edges = edges
        g._retired = retired
        return g

    def add_vertex(self, v: VertexId) -> "GraphState":
        """Return a copy with isolated vertex ``v`` added."""
        if v in self._adj:
            raise ValueError(f"vertex {v!r} already present")
        if v in self._retired:
            raise ValueError(f"vertex id {v!r} is retired and may not be reused")
        adj = dict(self._adj)
        adj[v] = frozenset()
        return GraphState._from_parts(adj, self._edges, self._retired)

    # -- queries -------------------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset:
        """Canonicalized edge set (each edge as a sorted pair)."""
        return self._edges

    @property
    def retired(self) -> frozenset:
        """Ids of vertices that have been measured out; never reusable."""
        return self._retired

    def neighbors(self, v: VertexId) -> frozenset:
        self._check(v)
        return self._adj[v]

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return edge_key(u, v) in self._edges if u != v else False

    def __contains__(self, v: VertexId) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other) -> bool:
        # Structural equality on the live graph; retired-id history is
        # bookkeeping, not state.
        if not isinstance(other, GraphState):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.vertices, self._edges))

    def __repr__(self) -> str:
        vs = ",".join(repr(v) for v in sorted(self._adj))
        return f"GraphState([{vs}], {len(self._edges)} edges)"

    def _check(self, v: VertexId) -> None:
        if v not in self._adj:
            if v in self._retired:
                raise ValueError(f"vertex {v!r} was measured out (retired id)")
            raise ValueError(f"unknown vertex {v!r}")

    # -- rewrite operations ----------------------------------------------------

    def toggle_edge(self, u: VertexId, v: VertexId) -> "GraphState":
        """CZ between two vertex qubits: flip edge membership of (u, v)."""
        self._check(u)
        self._check(v)
        if u == v:
            raise ValueError(f"cannot toggle a self-loop on {u!r}")
        key = edge_key(u, v)
        adj = dict(self._adj)
        if key in self._edges:
            edges = self._edges - {key}
            adj[u] = self._adj[u] - {v}
            adj[v] = self._adj[v] - {u}
        else:
            edges = self._edges | {key}
            adj[u] = self._adj[u] | {v}
            adj[v] = self._adj[v] | {u}
        return GraphState._from_parts(adj, edges, self._retired)

    def local_complement(self, a: VertexId) -> "GraphState":
        """Complement the subgraph induced on the neighborhood of ``a``.

        Every pair of neighbors of ``a`` has its edge toggled; edges touching
        ``a`` itself and everything outside N(a) are untouched.
        """
        self._check(a)
        nbrs = sorted(self._adj[a])
        adj = {v: set(ns) for v, ns in self._adj.items()}
        edges = set(self._edges)
        for x, y in combinations(nbrs, 2):
            key = edge_key(x, y)
            if key in edges:
                edges.remove(key)
                adj[x].discard(y)
                adj[y].discard(x)
            else:
                edges.add(key)
                adj[x].add(y)
                adj[y].add(x)
        return GraphState._from_parts(
            {v: frozenset(ns) for v, ns in adj.items()}, frozenset(edges), self._retired
        )

    def measure_z(self, a: VertexId) -> "GraphState":
        """Z measurement of ``a``: delete the vertex and its incident edges."""
        self._check(a)
        adj = dict(self._adj)
        edges = self._edges
        for nbr in self._adj[a]:
            adj[nbr] = self._adj[nbr] - {a}
            edges = edges - {edge_key(a, nbr)}
        del adj[a]
        return GraphState._from_parts(adj, edges, self._retired | {a})

    def measure_y(self, a: VertexId) -> "GraphState":
        """Y measurement of ``a``: locally complement at ``a``, then delete it."""
        self._check(a)
        return self.local_complement(a).measure_z(a)
