"""Nested completely regular binary codes and their coset graphs."""

from .field import (
    FieldContext,
    GF2Ext,
    QuadPair,
    build_field_context,
    quad_det,
    quad_sum,
)
from .codes import (
    LinearCode,
    build_base_code,
    build_chain,
    count_codes_at_level,
    count_full_chains,
    dual_spectrum,
    extend_code,
    load_code,
    save_code,
)
from .regularity import (
    CosetTable,
    IntersectionArray,
    coset_weight_distribution,
    cria_array,
    enumerate_cosets,
    extended_cria_array,
    verify_completely_regular,
    verify_design,
    verify_extended_array,
    verify_mu_identity,
    verify_uniformly_packed,
)
from .transitivity import (
    certify_transitivity,
    conjecture_report,
    extended_orbits,
    orbits_on_cosets,
)
from .graphs import (
    CosetGraph,
    all_distances,
    build_coset_graph,
    check_antipodal,
    check_distance_regular,
    export_graph,
    fold,
    verify_cover,
)

__version__ = "0.1.0"

__all__ = [
    "FieldContext",
    "GF2Ext",
    "QuadPair",
    "build_field_context",
    "quad_det",
    "quad_sum",
    "LinearCode",
    "build_base_code",
    "build_chain",
    "count_codes_at_level",
    "count_full_chains",
    "dual_spectrum",
    "extend_code",
    "load_code",
    "save_code",
    "CosetTable",
    "IntersectionArray",
    "coset_weight_distribution",
    "cria_array",
    "enumerate_cosets",
    "extended_cria_array",
    "verify_completely_regular",
    "verify_design",
    "verify_extended_array",
    "verify_mu_identity",
    "verify_uniformly_packed",
    "certify_transitivity",
    "conjecture_report",
    "extended_orbits",
    "orbits_on_cosets",
    "CosetGraph",
    "all_distances",
    "build_coset_graph",
    "check_antipodal",
    "check_distance_regular",
    "export_graph",
    "fold",
    "verify_cover",
]
