"""Completion-time optimization via max flow.

A set of transfers can finish within k timesteps when the root can reach
every target along paths that load no link more than k times.  That
question is a max-flow instance: give every undirected link two opposite
arcs of capacity k, wire each target to a synthetic sink with capacity 1,
and ask whether |S| units flow from the root.  Searching the smallest
feasible k per candidate root (the value is monotone in k) and taking the
best root yields the plan with the fewest rounds; the unit flow paths fall
out of a deterministic decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .distribution import DistributionPlan
from .network import NetworkTopology, NodeId


@dataclass
class _Arc:
    to: int
    cap: int
    rev: int          # index of the reverse arc in graph[to]
    link: tuple | None  # (u_idx, v_idx) directed link identity, None for sink arcs


@dataclass
class FlowInstance:
    """Directed max-flow encoding of one (root, S, k) question."""

    topology: NetworkTopology
    root: NodeId
    targets: tuple
    k: int
    names: tuple = field(init=False)       # index -> node name; sink is index len(names)
    source: int = field(init=False)
    sink: int = field(init=False)
    graph: list = field(init=False)        # adjacency: graph[v] = [_Arc, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("link capacity k must be at least 1")
        targets = tuple(sorted(set(self.targets)))
        self.targets = targets
        missing = [t for t in targets if t not in self.topology.nodes]
        if missing or self.root not in self.topology.nodes:
            raise ValueError("root and targets must be topology nodes")
        names = self.topology.nodes
        self.names = names
        index = {v: i for i, v in enumerate(names)}
        self.source = index[self.root]
        self.sink = len(names)
        self.graph = [[] for _ in range(len(names) + 1)]
        for u, v in sorted(self.topology.links):
            self._add_arc(index[u], index[v], self.k)
            self._add_arc(index[v], index[u], self.k)
        for t in targets:
            self._add_arc(index[t], self.sink, 1)

    def _add_arc(self, u: int, v: int, cap: int) -> None:
        fwd = _Arc(v, cap, len(self.graph[v]), (u, v) if v != self.sink else None)
        bwd = _Arc(u, 0, len(self.graph[u]), None)
        self.graph[u].append(fwd)
        self.graph[v].append(bwd)


@dataclass
class FlowResult:
    instance: FlowInstance
    value: int
    link_flow: dict  # directed (u_name, v_name) -> net units, positives only


def max_flow(instance: FlowInstance) -> FlowResult:
    """Dinic's algorithm; integral by construction, deterministic arc order."""
    graph = instance.graph
    source, sink = instance.source, instance.sink
    n = len(graph)
    caps = [[arc.cap for arc in adj] for adj in graph]

    def bfs() -> list[int] | None:
        level = [-1] * n
        level[source] = 0
        queue = [source]
        while queue:
            nxt = []
            for u in queue:
                for i, arc in enumerate(graph[u]):
                    if caps[u][i] > 0 and level[arc.to] < 0:
                        level[arc.to] = level[u] + 1
                        nxt.append(arc.to)
            queue = nxt
        return level if level[sink] >= 0 else None

    def dfs(u: int, pushed: int, level, it) -> int:
        if u == sink:
            return pushed
        while it[u] < len(graph[u]):
            i = it[u]
            arc = graph[u][i]
            if caps[u][i] > 0 and level[arc.to] == level[u] + 1:
                got = dfs(arc.to, min(pushed, caps[u][i]), level, it)
                if got > 0:
                    caps[u][i] -= got
                    caps[arc.to][arc.rev] += got
                    return got
            it[u] += 1
        return 0

    total = 0
    while True:
        level = bfs()
        if level is None:
            break
        it = [0] * n
        while True:
            pushed = dfs(source, 1 << 30, level, it)
            if pushed == 0:
                break
            total += pushed

    # Per-arc flow = initial cap - residual cap; then cancel the two opposite
    # arcs of each undirected link so only the net direction carries flow.
    raw: dict = {}
    for u in range(n):
        for i, arc in enumerate(graph[u]):
            if arc.link is not None:
                sent = arc.cap - caps[u][i]
                if sent:
                    raw[arc.link] = raw.get(arc.link, 0) + sent
    net: dict = {}
    for (u, v), sent in sorted(raw.items()):
        back = raw.get((v, u), 0)
        keep = sent - back
        if keep > 0:
            net[(instance.names[u], instance.names[v])] = keep
    return FlowResult(instance, total, net)


def decompose_flow(result: FlowResult) -> DistributionPlan:
    """Split a saturating flow into one unit root->target path per target.

    Walks the positive net flow depth-first (smallest node first) from the
    root, peeling off one unit path at a time; residual circulation (cycles)
    is simply never reached and gets discarded, which cannot change the
    link usage certified by the flow value.
    """
    inst = result.instance
    if result.value != len(inst.targets):
        raise ValueError(
            f"flow value {result.value} does not saturate {len(inst.targets)} targets"
        )
    remaining = dict(result.link_flow)
    outgoing: dict = {}
    for (u, v) in sorted(remaining):
        outgoing.setdefault(u, []).append(v)
    unreached = set(inst.targets)
    paths: dict = {}

    def extract(root: NodeId) -> list[NodeId]:
        """One unit path root -> some unreached target over positive flow.

        Conservation guarantees every non-terminal node the walk enters has
        an unused outgoing unit, so the walk can only stop at an unreached
        target.  Returning to a node already on the path closes a cycle;
        that cycle's unit is excised from the flow on the spot (it can never
        serve a path) and the walk resumes from the revisited node.
        """
        path = [root]
        pos = {root: 0}
        while True:
            cur = path[-1]
            if cur in unreached:
                return path
            step = None
            for nxt in outgoing.get(cur, []):
                if remaining.get((cur, nxt), 0) > 0:
                    step = nxt
                    break
            if step is None:
                raise ValueError("flow decomposition ran out of usable arcs")
            if step in pos:
                cycle = path[pos[step]:] + [step]
                for a, b in zip(cycle, cycle[1:]):
                    remaining[(a, b)] -= 1
                for node in path[pos[step] + 1:]:
                    del pos[node]
                del path[pos[step] + 1:]
            else:
                path.append(step)
                pos[step] = len(path) - 1

    if inst.root in unreached:
        unreached.remove(inst.root)
        paths[inst.root] = [inst.root]
    while unreached:
        path = extract(inst.root)
        for a, b in zip(path, path[1:]):
            remaining[(a, b)] -= 1
        tgt = path[-1]
        unreached.remove(tgt)
        paths[tgt] = path
    return DistributionPlan(inst.root, paths)


def min_saturating_k(topology: NetworkTopology, targets, root: NodeId) -> int:
    """Smallest per-link capacity k at which all targets are reachable at once.

    Feasibility is monotone in k and k = |S| always saturates on a connected
    topology, so plain binary search applies.
    """
    targets = tuple(sorted(set(targets)))
    lo, hi = 1, max(1, len(targets))
    top = max_flow(FlowInstance(topology, root, targets, hi))
    if top.value != len(targets):
        raise ValueError(f"targets unreachable from {root!r} even at k = {hi}")
    while lo < hi:
        mid = (lo + hi) // 2
        if max_flow(FlowInstance(topology, root, targets, mid)).value == len(targets):
            hi = mid
        else:
            lo = mid + 1
    return lo


def minimize_completion_time(topology: NetworkTopology, targets,
                             roots=None) -> tuple[NodeId, int, DistributionPlan]:
    """Pick the root whose saturating k is smallest (ties: lexicographic).

    ``roots`` restricts the candidate set (default: every node).  Returns
    (root, k, plan) where the plan is the deterministic decomposition of the
    max flow at that (root, k).
    """
    candidates = sorted(set(roots)) if roots is not None else list(topology.nodes)
    if not candidates:
        raise ValueError("no candidate roots")
    best: tuple | None = None
    for root in candidates:
        k = min_saturating_k(topology, targets, root)
        if best is None or k < best[1]:
            best = (root, k)
    root, k = best
    result = max_flow(FlowInstance(topology, root, tuple(sorted(set(targets))), k))
    plan = decompose_flow(result)
    return root, k, plan
