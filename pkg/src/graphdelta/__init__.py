"""Exact Gromov hyperbolicity of finite metric graphs and their minors.

Lengths inside the metric core are integers in eighth-units (an edge has
length 8); hyperbolicity constants are returned as exact fractions of a unit.
"""

from .errors import (
    BudgetExceeded,
    CutEdge,
    Disconnected,
    EmptyGraph,
    GraphError,
    InvalidPoint,
    InvalidSpec,
    LoopContraction,
    MinorSequenceError,
    NotProperCycles,
    ParseError,
    SideNotGeodesic,
    SimpleModeViolation,
    WouldDisconnect,
)
from .metric_graph import (
    UNIT,
    GeodesicPath,
    GraphPoint,
    GridSpec,
    MetricGraph,
    Mode,
    build_graph,
    enumerate_geodesics,
    format_graph,
    grid_points,
    is_tree,
    parse_graph_text,
    point_distance,
    vertex_distance_matrix,
)
from .hyperbolicity import (
    DeltaReport,
    EnumerationOptions,
    GeodesicTriangle,
    Method,
    compute_delta,
    delta_cactus,
    delta_exact,
    delta_four_point,
    delta_via_blocks,
    triangle_thinness,
)
from .minors import (
    BoundChain,
    CactusProfile,
    ContractionResult,
    MinorOp,
    TDecomposition,
    apply_minor_sequence,
    blocks,
    cactus_profile,
    contract_edge,
    cycles3_through_edge,
    delete_edge,
    h_map,
    is_cut_edge,
    is_cut_vertex,
)
from .generators import (
    FamilySpec,
    all_connected,
    all_connected_multigraphs,
    complete,
    cycle,
    diamond,
    generate,
    path,
    random_connected,
    theta,
    wheel,
)
from .verification import (
    CheckReport,
    SweepSummary,
    check_contraction_delta_bounds,
    check_contraction_distance_bounds,
    check_deletion_delta_bounds,
    exhaustive_verify,
    nonmonotonicity_witnesses,
    recheck,
)

__version__ = "0.1.0"
