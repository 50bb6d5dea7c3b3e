"""Certified equal-length cycle and path decompositions of hypercubes."""
from .base import BaseProvider, search_hamiltonian_decomposition
from .compose import (
    combine_splittable,
    product_by_anchoring,
    product_by_spanning,
    self_product_copy,
    self_product_grid,
)
from .construct import (
    ConstructionPlan,
    TableRow,
    base_hamiltonian,
    binary_decomposition,
    enumerate_parameters,
    general_decomposition,
    longest_cycle_decomposition,
    materialize,
    path_decomposition,
    plan_cbgen,
    plan_main,
    plan_paths,
    plan_operations,
    power_cube_decomposition,
)
from .cube_graph import CubeEdge, CubeSpec, concat_label, edge_count, enumerate_edges, split_label
from .cycles import (
    Cycle,
    RepresentedCycle,
    is_distance_regular,
    representing_gaps,
    split_cycle_into_paths,
    validate_cycle_in_cube,
)
from .deco_model import SplitDecomposition, TorusSpec, check_structure
from .errors import BaseUnavailable, BudgetExceeded, DecompositionError, ParameterError, StructureError
from .fileformat import DecompositionFile, read_decomposition, write_decomposition
from .torus_wiggle import (
    SubdividedTorus,
    WiggleParams,
    allows_k_wiggle,
    anchored_product,
    k_wiggle_subdivided,
    k_wiggle_torus,
    underlying_torus,
)
from .verify import Report, brute_force_small_oracle, verify_certificate, verify_decomposition

__all__ = [name for name in dir() if not name.startswith("_")]
