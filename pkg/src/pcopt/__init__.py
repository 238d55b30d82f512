"""Optimal proper-connection recolorings of monochromatic connected graphs."""
from .analysis import (
    StructureReport,
    all_max_independent_sets,
    alpha_minimal_reduce,
    components_after_center_removal,
    independence_number,
    matching_number,
    min_max_degree_spanning_tree,
    minimum_alpha_subgraph,
    structure_report,
    unique_max_degree,
)
from .constructor import (
    alpha2_construct,
    alpha3_construct,
    check_par_property,
    conjecture_probe,
    construct_plan,
    find_exception_matching,
    key_lemma_construct,
    main_theorem_construct,
    proper_tree_edge_coloring,
    remark1_construct,
)
from .errors import CapExceeded, DisconnectedGraphError, GraphFormatError, InternalError
from .graph import EdgeColoring, Graph, components, generate, induced_subgraph, parse_graph, write_graph
from .oracle import SolveResult, alpha_bound, batch_formula_check, exact_pc_opt
from .plan import ColoringPlan
from .verifier import VerifyReport, exists_pc_path, is_proper_path, is_properly_connected, plan_cost

__version__ = "0.1.0"
