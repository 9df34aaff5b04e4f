"""Adjacency flows du/dt = ±Au on finite graphs, line graphs and integer lattices."""

__version__ = "0.1.0"

from .errors import AdjflowError, DimensionError, EdgeListError, GraphError, OverflowGuardError
from .graph import (
    Graph,
    IncidenceMatrix,
    LineGraphMap,
    adjacency_matrix,
    degree_of_line_vertex,
    from_edge_list,
    incidence,
    is_bipartite,
    line_graph,
    line_graph_edge_count,
    minus_two_multiplicity_formula,
    to_edge_list,
)
from .spectral import EigenDecomposition, SymMatrix, eigenprojector, expm_sym, operator_norm, sym_eigen
from .dynamics import (
    EvolutionReport,
    automorphism_commutes,
    domination_check,
    evolve,
    perron_vector,
    positivity_report,
    rescaled_limit,
)
from .weighted import (
    WeightedLineSystem,
    line_weighted_adjacency,
    weighted_adjacency_general,
    weighted_degree,
    weighted_line_system,
)
from .lattice import LatticeSpec, bessel_i, truncation_compare, z_kernel, zn_kernel
from .detect import (
    CycleReport,
    detect_cycle_structure,
    even_cycle_eigenvector,
    hamiltonian_necessary,
    minus_two_eigenspace,
)
from .extensions import (
    GeneralizedLineSystem,
    generalized_line_graph,
    generalized_multiplicity,
    nonsym_apply,
    p_apply,
    p_energy,
)
