"""Graph-state distribution over quantum networks: simulator, planner, oracle."""

from .graphstate import GraphState
from .network import (
    LocalityError,
    NetworkState,
    NetworkTopology,
    load_topology,
    verify_target,
)
from .distribution import (
    DistributionPlan,
    DistributionRequest,
    ExecutionError,
    RunReport,
    Schedule,
    build_resource_state,
    center_root,
    connection_transfer,
    distribute_via_resource,
    epr_bound,
    execute,
    make_local_copy,
    make_schedule,
    plan_shortest,
)
from .edcg import EdcgPlan, build_edcg_plan, edcg_cost, edcg_order, steiner_tree
from .flow import (
    FlowInstance,
    FlowResult,
    decompose_flow,
    max_flow,
    min_saturating_k,
    minimize_completion_time,
)
from .oracle import (
    StateVector,
    build_graph_state,
    certification_report,
    lc_equivalent,
    measure_pauli,
    verify_graphical_rule,
    verify_teleport_transfer,
    verify_transfer_sequence,
)
from .scenario import (
    ScenarioConfig,
    compare_scenario,
    emit_report,
    optimize_scenario,
    run_scenario,
)
from .topogen import generate_topology

__all__ = [
    "GraphState",
    "LocalityError",
    "NetworkState",
    "NetworkTopology",
    "load_topology",
    "verify_target",
    "DistributionPlan",
    "DistributionRequest",
    "ExecutionError",
    "RunReport",
    "Schedule",
    "build_resource_state",
    "center_root",
    "connection_transfer",
    "distribute_via_resource",
    "epr_bound",
    "execute",
    "make_local_copy",
    "make_schedule",
    "plan_shortest",
    "EdcgPlan",
    "build_edcg_plan",
    "edcg_cost",
    "edcg_order",
    "steiner_tree",
    "FlowInstance",
    "FlowResult",
    "decompose_flow",
    "max_flow",
    "min_saturating_k",
    "minimize_completion_time",
    "StateVector",
    "build_graph_state",
    "certification_report",
    "lc_equivalent",
    "measure_pauli",
    "verify_graphical_rule",
    "verify_teleport_transfer",
    "verify_transfer_sequence",
    "ScenarioConfig",
    "compare_scenario",
    "emit_report",
    "optimize_scenario",
    "run_scenario",
    "generate_topology",
    "__version__",
]

__version__ = "0.1.0"
