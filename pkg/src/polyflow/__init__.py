"""polyflow: exact straight-line flow on polysquare surfaces and mazes."""

from .exactnum import MixedFieldError, QuadRat, parse_quadrat, square_free_split
from .contfrac import (
    ContinuedFraction,
    Convergents,
    PropertyAReport,
    cf_expand,
    check_property_A,
    from_digits,
    make_theorem_slope,
)
from .surface import Street, Surface, Transition
from .region import (
    Region,
    build_rectangle,
    build_snake_region,
    build_strip,
    build_wind_tree,
    build_wind_tree_config,
)
from .builders import (
    build_cube,
    build_gapwall,
    build_l_surface,
    build_named,
    build_torus,
    four_copy,
    named_menu,
    unfold_rotations,
    voxel_surface,
)
from .generators import (
    MazeProfile,
    PROVIDERS,
    growth_probe,
    provide,
    verify_maze_bound,
)
from .store import load_surface, save_surface, surface_from_doc, surface_to_doc
from .flow import (
    BilliardResult,
    Event,
    PhasePoint,
    ProjectedInterval,
    TraceResult,
    billiard_point,
    fast_trace,
    project_interval,
    retrace_back,
    trace,
    trace_billiard,
)
from .cylinders import (
    Cylinder,
    LStripSpec,
    RhombusCorrespondence,
    StripReport,
    TowerQuery,
    bounces_back,
    cylinder_decompose,
    decompose_scope,
    map_slope,
    rhombus_maze,
    strip_region,
    strip_street_analysis,
    tower_exit,
)
from .analysis import (
    DensityReport,
    EscapeReport,
    complete_periodicity_probe,
    cover_time,
    escape_rate,
    grid_cover_time,
    restricted_diameter,
    search_periodic_direction,
    torus_cover_demo,
)
from .shortline import (
    CensusReport,
    ChainSegment,
    DetourCrossing,
    DigitParityWarning,
    EdgeInterval,
    ShortlineChain,
    Trajectory,
    UnitType,
    ancestor_units,
    build_chain,
    classify_units,
    corner_cut_census,
    detour_decompose,
    free_gap_report,
    max_free_interval,
    qualifying_levels,
    shortline_slope,
)

__version__ = "0.1.0"
