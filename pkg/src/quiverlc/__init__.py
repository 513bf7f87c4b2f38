"""Light cone and round trip distances on quivers, bounded windows of the
translation quiver, and strongly locally finite sections."""

from .core import (
    Diagnostic,
    LazyQuiver,
    LocalFinitenessReport,
    Quiver,
    QuiverParseError,
    UnknownVertexError,
    VertexId,
    check_lazy_consistency,
    connected_components,
    induced_subquiver,
    is_acyclic,
    is_connected,
    is_locally_finite,
    is_path_finite,
    load_quiver,
    opposite,
    parse_quiver,
    serialize_quiver,
    vertex_sort_key,
    vertex_token,
)
from .distances import (
    BudgetExhaustedError,
    ExtDistance,
    SphereReport,
    bounded_sphere,
    left_distances,
    left_lightcone_distance_q,
    left_lightcone_distance_zq,
    left_lightcone_zq,
    left_sphere,
    lightcone_distance_q,
    lightcone_distance_zq,
    lightcone_distance_zq_oracle,
    right_distances,
    right_lightcone_zq,
    right_sphere,
    roundtrip_distance_q,
    roundtrip_distance_zq,
    roundtrip_sphere,
)
from .families import FAMILY_NAMES, family
from .paths import (
    PathCount,
    count_paths_to_shift,
    count_paths_zq,
    count_sectional_paths_zq,
    enumerate_paths_zq,
)
from .render import RenderSpec, emit_dot, render
from .sections import (
    ClassificationReport,
    CyclicQuiverError,
    DisconnectedScopeError,
    InvalidSectionError,
    Section,
    SectionReport,
    SLFReport,
    build_section,
    classify,
    is_strongly_locally_finite,
    lightcone_section,
    probe_strongly_locally_finite,
    scope_boundary,
    section_quiver,
    section_slf_probe,
    verify_section,
)
from .zq import (
    Slab,
    Window,
    WindowTooSmallError,
    ZVertex,
    arrow_multiplicity,
    embed,
    format_zvertex,
    in_neighbors,
    out_neighbors,
    parse_zvertex,
    slab,
    translate,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhaustedError",
    "ClassificationReport",
    "CyclicQuiverError",
    "Diagnostic",
    "DisconnectedScopeError",
    "ExtDistance",
    "FAMILY_NAMES",
    "InvalidSectionError",
    "LazyQuiver",
    "LocalFinitenessReport",
    "PathCount",
    "Quiver",
    "QuiverParseError",
    "RenderSpec",
    "Section",
    "SectionReport",
    "SLFReport",
    "Slab",
    "SphereReport",
    "UnknownVertexError",
    "VertexId",
    "Window",
    "WindowTooSmallError",
    "ZVertex",
    "arrow_multiplicity",
    "bounded_sphere",
    "build_section",
    "check_lazy_consistency",
    "classify",
    "connected_components",
    "count_paths_to_shift",
    "count_paths_zq",
    "count_sectional_paths_zq",
    "embed",
    "emit_dot",
    "enumerate_paths_zq",
    "family",
    "format_zvertex",
    "in_neighbors",
    "induced_subquiver",
    "is_acyclic",
    "is_connected",
    "is_locally_finite",
    "is_path_finite",
    "is_strongly_locally_finite",
    "left_distances",
    "left_lightcone_distance_q",
    "left_lightcone_distance_zq",
    "left_lightcone_zq",
    "left_sphere",
    "lightcone_distance_q",
    "lightcone_distance_zq",
    "lightcone_distance_zq_oracle",
    "lightcone_section",
    "load_quiver",
    "opposite",
    "out_neighbors",
    "parse_quiver",
    "parse_zvertex",
    "probe_strongly_locally_finite",
    "render",
    "right_distances",
    "right_lightcone_zq",
    "right_sphere",
    "roundtrip_distance_q",
    "roundtrip_distance_zq",
    "roundtrip_sphere",
    "scope_boundary",
    "section_quiver",
    "section_slf_probe",
    "serialize_quiver",
    "slab",
    "translate",
    "verify_section",
    "vertex_sort_key",
    "vertex_token",
]
