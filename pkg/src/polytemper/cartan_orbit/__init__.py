"""Cartan projections, orbit enumeration and growth estimates."""

from .ball import DEFAULT_MEMORY_CAP, OrbitSample, chamber_matrix, enumerate_ball, format_word, product_ball, write_samples_csv
from .elements import (
    GroupElement,
    cartan_projection,
    chamber_in_root_system,
    iwasawa_a_part_sl2,
    log_singular_values,
    parse_entry,
    product_sl2_element,
    sl2_cartan_u,
    sl_element,
)
from .growth import (
    GrowthEstimate,
    LimitConeStats,
    critical_exponent,
    default_window,
    directional_growth,
    limit_cone_stats,
    sentinel,
)
from .oracles import completeness_radius, sl2z_matrices, sl2z_norm_ball

__all__ = [
    "DEFAULT_MEMORY_CAP", "OrbitSample", "chamber_matrix", "enumerate_ball", "format_word", "product_ball",
    "write_samples_csv", "GroupElement", "cartan_projection", "chamber_in_root_system",
    "iwasawa_a_part_sl2", "log_singular_values", "parse_entry", "product_sl2_element",
    "sl2_cartan_u", "sl_element", "GrowthEstimate", "LimitConeStats", "critical_exponent",
    "default_window", "directional_growth", "limit_cone_stats", "sentinel",
    "completeness_radius", "sl2z_matrices", "sl2z_norm_ball",
]
