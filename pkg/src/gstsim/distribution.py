"""Planning and executing graph-state distribution over a network.

The strategy simulated here builds the whole target graph state locally at a
root node (local CZs are free), then walks each vertex qubit out to its
destination along a network path.  One hop = one EPR pair across a link plus
a three-step rewrite (CZ onto the local pair half, Y-measure the traveling
qubit, Y-measure the local half) that hands the traveling qubit's
entanglement to the remote half.  Total EPR cost is therefore the sum of
path lengths.

Scheduling packs hops into timesteps under the one-pair-per-link-per-step
rule: a set of hops that touches no link twice can run in a single step, so
the greedy scheduler lets each transfer advance as many consecutive hops per
round as free links allow, pausing mid-path when it hits a used link.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .graphstate import GraphState
from .network import NetworkState, NetworkTopology, NodeId, QubitId, link_key

logger = logging.getLogger(__name__)


class ExecutionError(RuntimeError):
    """A distribution run violated its own plan or failed verification."""


@dataclass(frozen=True)
class DistributionRequest:
    """Target graph plus where each of its vertices must end up."""

    target: GraphState
    assignment: dict  # target vertex -> NodeId

    def __post_init__(self):
        if set(self.assignment) != set(self.target.vertices):
            raise ValueError("assignment must cover exactly the target vertices")
        nodes = list(self.assignment.values())
        if len(set(nodes)) != len(nodes):
            raise ValueError("assignment must send each vertex to a distinct node")

    @property
    def target_nodes(self) -> list[NodeId]:
        return sorted(self.assignment.values())


@dataclass(frozen=True)
class DistributionPlan:
    """One network path per target node; a path is the node sequence from
    the root (single-element path = the root's own target, zero hops)."""

    root: NodeId
    paths: dict  # target NodeId -> [root, ..., target]

    def hops(self, node: NodeId) -> int:
        return len(self.paths[node]) - 1

    @property
    def epr_cost(self) -> int:
        return sum(len(p) - 1 for p in self.paths.values())


@dataclass(frozen=True)
class Schedule:
    """Rounds of (target node, from_index, to_index) path advances."""

    rounds: tuple

    @property
    def timesteps(self) -> int:
        return len(self.rounds)


@dataclass
class TraceEvent:
    kind: str        # "epr" | "measure_report" | "directive"
    subject: tuple
    bits: int = 0


@dataclass
class RunReport:
    """Cost accounting for one distribution run."""

    epr_pairs: int
    timesteps: int
    classical_bits: int
    root_memory_qubits: int
    resource_qubits: int = 0
    trace: list = field(default_factory=list, repr=False)


def validate_plan(topology: NetworkTopology, plan: DistributionPlan, targets) -> None:
    expected = set(targets)
    if set(plan.paths) != expected:
        raise ValueError("plan paths do not cover exactly the target nodes")
    for node, path in plan.paths.items():
        if not path or path[0] != plan.root or path[-1] != node:
            raise ValueError(f"path for {node!r} must run from the root to it")
        for a, b in zip(path, path[1:]):
            if not topology.has_link(a, b):
                raise ValueError(f"path for {node!r} uses missing link ({a!r}, {b!r})")


def plan_shortest(topology: NetworkTopology, targets, root: NodeId) -> DistributionPlan:
    """Lexicographically-least shortest path from the root to every target."""
    paths = {t: topology.shortest_path(root, t) for t in sorted(set(targets))}
    return DistributionPlan(root, paths)


def center_root(topology: NetworkTopology) -> NodeId:
    """Minimum-eccentricity node; ties broken by node id."""
    return min(topology.nodes, key=lambda v: (topology.eccentricity(v), v))


def epr_bound(n: int, s: int, free_root: bool = False) -> int:
    """Worst-case EPR pairs to reach s targets in an n-node network.

    With a caller-chosen root the targets occupy the s farthest possible
    distances, giving s(2n - s - 1)/2.  When every node is a target and the
    root may be optimized, a most-central root halves the reach:
    (3n^2 - 2n)/8 for even n, (3n^2 - 4n + 1)/8 for odd n.
    """
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    if free_root:
        if s != n:
            raise ValueError("free-root bound is defined for s = n")
        num = 3 * n * n - 2 * n if n % 2 == 0 else 3 * n * n - 4 * n + 1
        q, r = divmod(num, 8)
        assert r == 0
        return q
    q, r = divmod(s * (2 * n - s - 1), 2)
    assert r == 0
    return q


def make_schedule(plan: DistributionPlan) -> Schedule:
    """Greedy round construction.

    Each round processes pending transfers longest-remaining-path-first
    (ties by target id), advancing every transfer along consecutive path
    links not yet used this round.  Multi-hop advances and mid-path pauses
    both fall out naturally.  The first transfer examined each round always
    completes (its remaining links are all fresh), so there are at most as
    many rounds as transfers.
    """
    pos = {t: 0 for t, p in plan.paths.items() if len(p) > 1}
    rounds = []
    while pos:
        used = set()
        entries = []
        order = sorted(pos, key=lambda t: (-(len(plan.paths[t]) - 1 - pos[t]), t))
        for t in order:
            path = plan.paths[t]
            i = start = pos[t]
            while i < len(path) - 1 and link_key(path[i], path[i + 1]) not in used:
                used.add(link_key(path[i], path[i + 1]))
                i += 1
            if i > start:
                entries.append((t, start, i))
                pos[t] = i
                if i == len(path) - 1:
                    del pos[t]
        if not entries:  # pragma: no cover - impossible by the argument above
            raise ExecutionError("scheduler made no progress")
        rounds.append(tuple(entries))
    return Schedule(tuple(rounds))


def connection_transfer(state: NetworkState, a: QubitId, b: QubitId, c: QubitId) -> QubitId:
    """Hand qubit a's entanglement to qubit c through the pair (b, c).

    Preconditions: a and b are co-located, b's only entanglement edge goes
    to c, and a is adjacent to neither b nor itself equal to b/c.  The
    rewrite is CZ(a, b), Y-measure a, Y-measure b; afterwards c's
    neighborhood is exactly a's former one (minus c, were it present).
    """
    if a in (b, c):
        raise ValueError("transfer needs distinct qubits a, b, c")
    if state.node_of(a) != state.node_of(b):
        raise ValueError(
            f"qubits {a} and {b} are at different nodes; transfer must start locally"
        )
    if state.graph.neighbors(b) != frozenset({c}):
        raise ValueError(f"qubit {b} must be entangled with {c} and nothing else")
    if state.graph.has_edge(a, b):
        raise ValueError(f"qubits {a} and {b} are already entangled")
    state.apply_cz(a, b)
    state.measure_y(a)
    state.measure_y(b)
    return c


def make_local_copy(state: NetworkState, target: GraphState, root: NodeId) -> dict:
    """Build the target graph state from fresh qubits at one node.

    Returns the vertex -> qubit map.  Only free local operations are used.
    """
    mapping = {}
    for v in sorted(target.vertices):
        mapping[v] = state.new_qubit(root)
    for u, v in sorted(target.edges):
        state.apply_cz(mapping[u], mapping[v])
    return mapping


def execute(state: NetworkState, request: DistributionRequest, plan: DistributionPlan,
            schedule: Schedule | None = None) -> RunReport:
    """Run a plan to completion and verify the delivered state.

    Builds the local copy at the root, walks every vertex qubit along its
    scheduled path, and finally demands the live entanglement graph match
    the request exactly (raising ExecutionError otherwise).  The report's
    trace carries one 2-bit measurement-report event per consumed EPR pair
    and one 2-bit completion directive per target — zero-hop targets (the
    root's own vertex) are confirmed up front, every other one when its
    qubit arrives.
    """
    from .network import verify_target  # local import to keep module DAG flat

    validate_plan(state.topology, plan, request.target_nodes)
    if schedule is None:
        schedule = make_schedule(plan)
    root = plan.root
    copy_map = make_local_copy(state, request.target, root)
    node_of_vertex = dict(request.assignment)
    vertex_at = {node: v for v, node in node_of_vertex.items()}
    carrier = {node: copy_map[vertex_at[node]] for node in plan.paths}
    trace: list[TraceEvent] = []
    transfers = 0
    peak_root = len(state.qubits_at(root))
    for tnode in sorted(plan.paths):
        if len(plan.paths[tnode]) == 1:
            trace.append(TraceEvent("directive", (tnode,), bits=2))

    for rnum, round_entries in enumerate(schedule.rounds):
        state.advance_timestep()
        for (tnode, start, end) in round_entries:
            path = plan.paths[tnode]
            qubit = carrier[tnode]
            for i in range(start, end):
                unode, vnode = path[i], path[i + 1]
                try:
                    qu, qv = state.generate_epr(unode, vnode)
                    peak_root = max(peak_root, len(state.qubits_at(root)))
                    trace.append(TraceEvent("epr", (unode, vnode)))
                    connection_transfer(state, qubit, qu, qv)
                except ValueError as exc:
                    raise ExecutionError(f"round {rnum}: {exc}") from exc
                transfers += 1
                trace.append(TraceEvent("measure_report", (tnode, i), bits=2))
                qubit = qv
            carrier[tnode] = qubit
            if end == len(path) - 1:
                trace.append(TraceEvent("directive", (tnode,), bits=2))

    if not verify_target(state, request.target, request.assignment):
        raise ExecutionError("delivered state does not realize the request")
    assert transfers == state.epr_generated == plan.epr_cost
    return RunReport(
        epr_pairs=transfers,
        timesteps=schedule.timesteps,
        classical_bits=sum(ev.bits for ev in trace),
        root_memory_qubits=peak_root,
        trace=trace,
    )


# ---------------------------------------------------------------------------
# Pre-shared resource state: one root-anchored pair per target
# ---------------------------------------------------------------------------

def build_resource_state(state: NetworkState, targets, root: NodeId) -> tuple[dict, RunReport]:
    """Pre-share one EPR pair between the root and every other target node.

    Each pair starts as two locally-entangled fresh qubits at the root; the
    outer half is then walked to its node with ordinary scheduled transfers.
    Afterwards the root holds |S|-1 anchor qubits, each entangled with one
    qubit at a distinct target — 2(|S|-1) live qubits total (for root in S).
    Returns ({target node: (anchor qubit, remote qubit)}, build report).
    """
    others = sorted(set(targets) - {root})
    plan = plan_shortest(state.topology, others, root) if others else DistributionPlan(root, {})
    schedule = make_schedule(plan)
    anchors = {}
    carrier = {}
    for t in others:
        anchor = state.new_qubit(root)
        mover = state.new_qubit(root)
        state.apply_cz(anchor, mover)
        anchors[t] = anchor
        carrier[t] = mover
    trace: list[TraceEvent] = []
    transfers = 0
    peak_root = len(state.qubits_at(root))
    for rnum, round_entries in enumerate(schedule.rounds):
        state.advance_timestep()
        for (tnode, start, end) in round_entries:
            path = plan.paths[tnode]
            qubit = carrier[tnode]
            for i in range(start, end):
                try:
                    qu, qv = state.generate_epr(path[i], path[i + 1])
                    peak_root = max(peak_root, len(state.qubits_at(root)))
                    trace.append(TraceEvent("epr", (path[i], path[i + 1])))
                    connection_transfer(state, qubit, qu, qv)
                except ValueError as exc:
                    raise ExecutionError(f"round {rnum}: {exc}") from exc
                transfers += 1
                trace.append(TraceEvent("measure_report", (tnode, i), bits=2))
                qubit = qv
            carrier[tnode] = qubit
            if end == len(path) - 1:
                trace.append(TraceEvent("directive", (tnode,), bits=2))
    pairs = {t: (anchors[t], carrier[t]) for t in others}
    for t, (anchor, remote) in pairs.items():
        if state.graph.neighbors(anchor) != frozenset({remote}):
            raise ExecutionError(f"resource pair for {t!r} is not a clean pair")
        if state.node_of(remote) != t:
            raise ExecutionError(f"resource pair half for {t!r} ended up elsewhere")
    report = RunReport(
        epr_pairs=transfers,
        timesteps=schedule.timesteps,
        classical_bits=sum(ev.bits for ev in trace),
        root_memory_qubits=peak_root,
        resource_qubits=2 * len(others),
        trace=trace,
    )
    return pairs, report


def distribute_via_resource(state: NetworkState, request: DistributionRequest,
                            root: NodeId, pairs: dict) -> RunReport:
    """Distribute a target graph through pre-shared pairs: one timestep flat.

    No network link is touched — every transfer consumes one resource pair
    with purely local operations plus classical messages — so all transfers
    share a single timestep regardless of the target graph.
    """
    from .network import verify_target

    pairs = dict(pairs)
    copy_map = make_local_copy(state, request.target, root)
    node_of_vertex = dict(request.assignment)
    trace: list[TraceEvent] = []
    transfers = 0
    used = 2 * len(pairs)
    peak_root = len(state.qubits_at(root))
    remote_targets = [v for v in sorted(request.target.vertices)
                      if node_of_vertex[v] != root]
    for v in sorted(request.target.vertices):
        if node_of_vertex[v] == root:
            trace.append(TraceEvent("directive", (root,), bits=2))
    if remote_targets:
        state.advance_timestep()
    for v in remote_targets:
        node = node_of_vertex[v]
        if node not in pairs:
            raise ExecutionError(f"no resource pair reaches node {node!r}")
        anchor, remote = pairs.pop(node)
        try:
            connection_transfer(state, copy_map[v], anchor, remote)
        except ValueError as exc:
            raise ExecutionError(f"resource transfer to {node!r}: {exc}") from exc
        transfers += 1
        trace.append(TraceEvent("measure_report", (node, 0), bits=2))
        trace.append(TraceEvent("directive", (node,), bits=2))
    if not verify_target(state, request.target, request.assignment):
        raise ExecutionError("delivered state does not realize the request")
    return RunReport(
        epr_pairs=transfers,
        timesteps=1 if remote_targets else 0,
        classical_bits=sum(ev.bits for ev in trace),
        root_memory_qubits=peak_root,
        resource_qubits=used,
        trace=trace,
    )


def warn_if_rounds_exceed(schedule: Schedule, k: int) -> None:
    """Flow plans promise per-link usage k; log when packing needs more rounds."""
    if schedule.timesteps > k:
        logger.warning(
            "schedule needs %d rounds though max link usage is %d",
            schedule.timesteps, k,
        )
