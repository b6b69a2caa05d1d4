"""Lower bounds for binary polynomial optimization via signed certificates.

The package certifies binary non-negativity of NNS polynomials in
polynomial time through a max-flow/min-cut reduction, represents the
certified cone by a flow-based extended LP formulation, and assembles two
hierarchies of LP relaxations (standard and Lovász signed relaxations)
whose bounds increase level by level and reach the exact binary optimum at
the last level.
"""

from .polynomials import (
    AFFINE,
    GENERAL,
    NNS,
    NPS,
    NS,
    PS,
    CapExceededError,
    Polynomial,
    SignedDecomposition,
    SignedSupport,
    ambient_decomposition,
    brute_force_min,
    classify,
    decompose,
    evaluate,
    format_polynomial,
    is_submodular,
    parse_polynomial,
    signed_support,
    within,
)
from .mincut import (
    CutResult,
    FlowNetwork,
    NotNNSError,
    ReducedForm,
    build_network,
    dot_dump,
    max_flow_min_cut,
    minimize_nns,
    reduce,
    separate,
)
from .partition import PartitionTree, build_partition_tree
from .extensions import (
    ExtensionSet,
    Selector,
    all_standard_selectors,
    apply_selector,
    lovasz_selector_from_order,
    relaxed_lovasz_set,
    verify_exact,
)
from .lpmodel import LpModel, write_mps
from .simplex import LpSolution, solve, solve_cutting_plane
from .relax import (
    NonnegBlock,
    RelaxationCertificate,
    build_level_relaxation,
    build_nm_membership,
    build_signed_reformulation,
    emit_nonneg_block,
    extract_certificate,
    num_levels,
    sherali_adams_1,
    solve_relaxation,
)
from .maxcut import Graph, maxcut_to_bpo, parse_rudy, serialize_rudy
from .experiment import RunReport, run_experiment, summarize_reports

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
