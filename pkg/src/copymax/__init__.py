"""copymax: exact subgraph counting and pair-mass optimization for extremal
copy-count bounds over sparse, K33-free graph classes."""

from .graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edge_blowup,
    edge_blowup_map,
    from_graph6,
    graph_from_json,
    graph_to_json,
    icosahedron_graph,
    make_graph,
    matching_graph,
    path_graph,
    star_graph,
    to_graph6,
)
from .counting import (
    CopyEnumeration,
    automorphism_count,
    automorphisms,
    count_copies,
    count_cycle_copies,
    count_path_copies,
    edge_orbits,
    enumerate_copies,
    is_edge_transitive,
    is_isomorphic,
)
from .classes import (
    check_codegree_bound,
    check_codegree_product_bound,
    check_even_path_bound,
    is_planar,
    max_subgraph_density,
    sparse_k33_free,
)
from .mass import (
    EdgeMass,
    blowup_functional,
    blowup_functional_gradient,
    graph_weight,
    mass_from_json,
    mass_to_json,
    path_functional,
    path_functional_gradient,
    single_pair_mass,
    support_graph,
    uniform_edge_mass,
    vertex_mass,
)
from .objectives import BlowupObjective, PathObjective
from .optimize import (
    OptimizerConfig,
    OptResult,
    certified_optimum,
    check_mass_bounds,
    check_regularity,
    edgetrans_lower,
    kkt_residual,
    largek_threshold,
    maximize,
    support_bound,
)
from .oracle import (
    GridSpec,
    enumerate_graphs,
    exhaustive_extremal,
    grid_maximize,
    verify_cross_pair_bound,
    verify_cyclic_quartic_bound,
    verify_cyclic_two_coloring,
    verify_square_pair_bound,
)
from .bounds import (
    BoundTable,
    ConstructionSpec,
    Target,
    biclique_target,
    blowup_target,
    bound_table,
    build_lower_bound_graph,
    cycle_target,
    default_construction,
    lower_bound_count,
    parse_target,
    path_target,
    triangle_blowup_c6_count,
    triangle_blowup_p7_count,
    upper_bound_value,
)

__version__ = "0.1.0"
