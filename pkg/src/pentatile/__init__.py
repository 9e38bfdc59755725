"""Pentagons with four equal edges and B + D + E = 360, the rhombic tilings
they decorate, and an independent validator for the results."""

from .errors import (
    AngleMismatchError,
    ChiralityConflictError,
    DocumentError,
    DomainError,
    GeometricNonexistenceError,
    InternalConsistencyError,
    MixedThetaError,
    NoHoleError,
    NoUnitAtCenterError,
    PentatileError,
    PreconditionError,
    SchemaVersionError,
    UnsupportedHoleError,
)
from .generators import (
    belt_patch,
    decorate_patch,
    fill_hole,
    flip_unit,
    hole_rosette,
    star_hexagon,
    subdivide,
    wedge_rotational,
    zonogon_rosette,
)
from .geometry import (
    AngleSet,
    PentagonParams,
    PentagonShape,
    ShapeClass,
    angles_from_params,
    classify,
    delta_angle,
    edge_e,
    equilateral_theta,
    pentagon_area,
    realize,
)
from .io import read_document, write_document
from .model import PentagonTiling, PlacedRhombus, Prototype, RhombicPatch, Tile
from .render import RenderStyle, render_svg
from .rhombus import (
    Chirality,
    Conflict,
    EdgeDecoration,
    PentagonPair,
    RhombusProto,
    assign_chirality,
    canonical_pair,
    compatible,
    edge_decorations,
    rhombus_proto,
)
from .tables import emit_tables
from .validate import (
    ValidationReport,
    VertexFan,
    check_coverage,
    check_edge_to_edge,
    check_overlaps,
    hole_boundary,
    reflection_symmetry,
    rotational_symmetry,
    validate,
    vertex_fans,
)

__version__ = "0.1.0"
