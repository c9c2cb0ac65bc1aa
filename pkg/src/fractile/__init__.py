"""Discrete self-similar tree fractals, aTAM simulation, window movies,
and splice-based refutation."""

from .fractal import (
    Bridge,
    CensusStats,
    Generator,
    Pier,
    PierAnchor,
    TAXONOMY_DOUBLE,
    TAXONOMY_ORTHOGONAL,
    TAXONOMY_PARALLEL,
    TAXONOMY_REAL,
    bridge_counts,
    bridges,
    census,
    format_generator,
    free_point_east,
    free_point_north,
    free_point_northeast,
    is_tree_fractal_generator,
    parse_generator,
    piers,
    random_valid_generator,
    scale,
    select_pier_anchor,
    stage,
    stage_property,
)
from .grid import (
    DIRECTIONS,
    Direction,
    Extents,
    connected_components,
    d_free,
    extents,
    free_directions,
    grid_edges,
    is_connected,
    is_tree,
    neighbors,
    shortest_path,
    translate,
)
from .movies import (
    BondFormingSubmovie,
    GlueEvent,
    SpliceError,
    WindowMovie,
    bond_forming,
    format_movie,
    match_up_to_translation,
    record_movie,
    splice,
    submovie_matches,
)
from .refuter import (
    NoMatchReport,
    RefutationConfig,
    SpliceCertificate,
    SubmovieGroup,
    alignment_offset,
    format_certificate,
    format_no_match,
    glue_line_bound,
    refute,
)
from .render import check_cell_budget, format_grid, render_svg
from .systems import (
    PIER_LABELS_STAGED,
    PIER_LABELS_UNIFORM,
    tree_edge_system,
)
from .tiles import (
    Assembly,
    AssemblySequence,
    Box,
    DEFAULT_MAX_STEPS,
    Glue,
    LexicographicPolicy,
    NULL_GLUE,
    ReplayError,
    SeededUniformPolicy,
    SequenceEvent,
    StrictCheck,
    TileSystem,
    TileType,
    VERDICT_INCOMPLETE_OK,
    VERDICT_VIOLATION,
    attachment_strength,
    binding_graph,
    bond_strength,
    check_strict_self_assembly,
    clipped_frontier,
    format_tile_system,
    frontier,
    glues_bind,
    is_tau_stable,
    parse_tile_system,
    replay,
    run,
)
from .windows import (
    ClosedWindow,
    WindowSpec,
    boundary_contacts,
    closed_window,
    enclosure_bound_ok,
    enclosure_margin,
    encloses,
    free_sides,
    inside_of,
    partition,
    translation,
    translation_between,
    window_inside,
)

__version__ = "0.1.0"

__all__ = [
    "Assembly",
    "AssemblySequence",
    "BondFormingSubmovie",
    "Box",
    "Bridge",
    "CensusStats",
    "ClosedWindow",
    "DEFAULT_MAX_STEPS",
    "DIRECTIONS",
    "Direction",
    "Extents",
    "Generator",
    "Glue",
    "GlueEvent",
    "LexicographicPolicy",
    "NULL_GLUE",
    "NoMatchReport",
    "PIER_LABELS_STAGED",
    "PIER_LABELS_UNIFORM",
    "Pier",
    "PierAnchor",
    "RefutationConfig",
    "ReplayError",
    "SeededUniformPolicy",
    "SequenceEvent",
    "SpliceCertificate",
    "SpliceError",
    "StrictCheck",
    "SubmovieGroup",
    "TAXONOMY_DOUBLE",
    "TAXONOMY_ORTHOGONAL",
    "TAXONOMY_PARALLEL",
    "TAXONOMY_REAL",
    "TileSystem",
    "TileType",
    "VERDICT_INCOMPLETE_OK",
    "VERDICT_VIOLATION",
    "WindowMovie",
    "WindowSpec",
    "alignment_offset",
    "attachment_strength",
    "binding_graph",
    "bond_forming",
    "bond_strength",
    "boundary_contacts",
    "bridge_counts",
    "bridges",
    "census",
    "check_cell_budget",
    "check_strict_self_assembly",
    "clipped_frontier",
    "closed_window",
    "connected_components",
    "d_free",
    "enclosure_bound_ok",
    "enclosure_margin",
    "encloses",
    "extents",
    "format_certificate",
    "format_generator",
    "format_grid",
    "format_movie",
    "format_no_match",
    "format_tile_system",
    "free_directions",
    "free_point_east",
    "free_point_north",
    "free_point_northeast",
    "free_sides",
    "frontier",
    "glue_line_bound",
    "glues_bind",
    "grid_edges",
    "inside_of",
    "is_connected",
    "is_tau_stable",
    "is_tree",
    "is_tree_fractal_generator",
    "match_up_to_translation",
    "neighbors",
    "parse_generator",
    "parse_tile_system",
    "partition",
    "piers",
    "random_valid_generator",
    "record_movie",
    "refute",
    "render_svg",
    "replay",
    "run",
    "scale",
    "select_pier_anchor",
    "shortest_path",
    "splice",
    "stage",
    "stage_property",
    "submovie_matches",
    "translate",
    "translation",
    "translation_between",
    "tree_edge_system",
    "window_inside",
]
