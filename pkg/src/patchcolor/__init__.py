"""Precoloring extension for planar near-Eulerian triangulations.

The library decides whether a 4-coloring of the outer face of a plane
triangulated patch extends to the whole graph, via homomorphisms to the
dappled triangular grid, a single-hexagon reduction to bipartite
3-precoloring extension, and a shortcut characterization for patch
extensions of near-quadrangulations, all cross-checked by a brute-force
oracle.
"""

from .errors import (
    GraphError,
    ImproperColoring,
    InternalFaceNotTriangle,
    InvalidCertificate,
    NotBipartite,
    NotNearEulerian,
    NotNearQuadrangulation,
    NotNullHomotopic,
    NotTwoConnected,
    NotViable,
    OuterBoundaryNotCycle,
    StructuralError,
)
from .grid import (
    Hexagon,
    STEPS,
    build_homomorphism,
    check_viability,
    edge_delta,
    grid_adjacent,
    grid_color,
    grid_hue,
    hexagon_retraction,
    sigma,
    step_neighbor,
    walk_delta,
)
from .plane import (
    COLORS,
    DappledPatch,
    HuedPatch,
    Patch,
    PlaneGraph,
    compute_hues,
    cut_along_edge,
    is_near_eulerian,
    is_near_quadrangulation,
    is_odd_patch,
    patch_extension,
    trace_faces,
    validate_patch,
)
from .quad import build_patch_from_cycle, decide_quad, extend_quad, find_shortcut
from .single_hexagon import (
    SingleHexagonCertificate,
    ThreeColoringInstance,
    decide_single_hexagon,
    find_hexagon,
    lift_coloring,
    reduce_to_bipartite,
    solve_3precoloring,
)
from .oracle import (
    enumerate_small_instances,
    gen_grid_window,
    gen_near_quadrangulation,
    gen_viable_cycle_coloring,
    oracle_extend_4,
)
from .walks import (
    ClosedWalk,
    combine,
    face_combination,
    is_null_homotopic,
    necessary_condition_general,
    necessary_condition_quad,
    null_homotopic_on,
    one_step_retraction,
    openings,
    split_retract_equal,
    topological_retract,
    topological_retract_closed,
)

__version__ = "0.1.0"
