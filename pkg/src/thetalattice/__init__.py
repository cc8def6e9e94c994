"""3D regular bipartite lattices with no 6-cycles and only-central 4-cycles:
construction by signed 2-lifts over a voltage base graph, exact small-subgraph
census, order-6 monomer-dimer coefficient, and exact straight-line embedding.
"""

from .census import CensusReport, brute_force_census, census, classify_c4, count_c4, count_c6, count_theta222, voltage_census
from .certify import (
    ConstraintSet,
    certify,
    constraint_count_formula,
    constraint_cycles,
    search_signings,
    verify_certificate,
)
from .embed import Try, find_good_try, is_good_try, partition_roles, sample_try
from .entropy import (
    LatticeSummary,
    central_counts,
    d6_coefficient,
    lattice_report,
    min_degree_for_kappa,
)
from .graphs import (
    LabeledGraph,
    Role,
    Signing,
    VertexLabel,
    build_root_unit_graph,
    central_copies,
    central_subgraph,
    two_lift,
    validate,
)
from .voltage import (
    BaseGraph,
    LiftCertificate,
    VoltageAssignment,
    build_base_graph,
    derived_torus,
    full_unit_graph,
    max_connected_stages,
    voltage_group_generated,
)

__all__ = [
    "BaseGraph",
    "CensusReport",
    "ConstraintSet",
    "LabeledGraph",
    "LatticeSummary",
    "LiftCertificate",
    "Role",
    "Signing",
    "Try",
    "VertexLabel",
    "VoltageAssignment",
    "brute_force_census",
    "build_base_graph",
    "build_root_unit_graph",
    "census",
    "central_copies",
    "central_counts",
    "central_subgraph",
    "certify",
    "classify_c4",
    "constraint_count_formula",
    "constraint_cycles",
    "count_c4",
    "count_c6",
    "count_theta222",
    "d6_coefficient",
    "derived_torus",
    "find_good_try",
    "full_unit_graph",
    "is_good_try",
    "lattice_report",
    "max_connected_stages",
    "min_degree_for_kappa",
    "partition_roles",
    "sample_try",
    "search_signings",
    "two_lift",
    "validate",
    "verify_certificate",
    "voltage_census",
    "voltage_group_generated",
]
