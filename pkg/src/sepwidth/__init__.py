"""Separation number versus treewidth, computed exactly on small graphs.

Width parameters, tangles, W-clouds and the flow-based cloud-or-skewed
dichotomy, with verifiers for every object the routines return.
"""

from .audit import AuditReport, AuditStep, audit_constants, audit_final_step, audit_refinement
from .clouds import (
    STRONG,
    TAME,
    CloudParams,
    CloudReport,
    WCloud,
    check_cloud,
    check_skewed,
    trim_to_strongly_tame,
)
from .confluent import confluent_round, is_confluent, support_to_cloud
from .dichotomy import (
    DichotomyResult,
    tame_cloud_or_skewed,
    witness_from_json,
    witness_to_dict,
    witness_to_json,
)
from .errors import CapabilityError, ContractError, GraphValidationError, ParseError
from .experiment import ratio_experiment, report_to_csv, report_to_svg
from .flows import (
    FlowAssignment,
    FlowNetwork,
    build_auxiliary_network,
    cut_to_separation,
    flow_to_demand_flow,
    max_flow_min_cut,
)
from .generators import FamilySpec, SplitMix64, atlas_graphs, generate, parse_family
from .graph import (
    Digraph,
    GSeparation,
    Graph,
    Separation,
    Subgraph,
    check_g_separation,
    check_separation,
    components,
    format_edge_list,
    induced_subgraph,
    parse_edge_list,
    separation_to_g_separation,
)
from .rational import format_rational, parse_rational
from .tangles import (
    TangleCandidate,
    enumerate_g_separations,
    find_tangle,
    tangle_number_exact,
    verify_tangle,
)
from .width import (
    WidthResult,
    elimination_width,
    min_balanced_separation,
    separation_number_exact,
    treewidth_exact,
    treewidth_upper_minfill,
)

__version__ = "0.1.0"

__all__ = [
    "atlas_graphs",
    "audit_constants",
    "audit_final_step",
    "audit_refinement",
    "AuditReport",
    "AuditStep",
    "build_auxiliary_network",
    "CapabilityError",
    "check_cloud",
    "check_g_separation",
    "check_separation",
    "check_skewed",
    "CloudParams",
    "CloudReport",
    "components",
    "confluent_round",
    "ContractError",
    "cut_to_separation",
    "DichotomyResult",
    "Digraph",
    "elimination_width",
    "enumerate_g_separations",
    "FamilySpec",
    "find_tangle",
    "flow_to_demand_flow",
    "FlowAssignment",
    "FlowNetwork",
    "format_edge_list",
    "format_rational",
    "generate",
    "Graph",
    "GraphValidationError",
    "GSeparation",
    "induced_subgraph",
    "is_confluent",
    "max_flow_min_cut",
    "min_balanced_separation",
    "parse_edge_list",
    "parse_family",
    "parse_rational",
    "ParseError",
    "ratio_experiment",
    "report_to_csv",
    "report_to_svg",
    "Separation",
    "separation_number_exact",
    "separation_to_g_separation",
    "SplitMix64",
    "STRONG",
    "Subgraph",
    "support_to_cloud",
    "TAME",
    "tame_cloud_or_skewed",
    "tangle_number_exact",
    "TangleCandidate",
    "treewidth_exact",
    "treewidth_upper_minfill",
    "trim_to_strongly_tame",
    "verify_tangle",
    "WCloud",
    "WidthResult",
    "witness_from_json",
    "witness_to_dict",
    "witness_to_json",
]
