"""Exact-linear-algebra engine for nilpotent preprojective-algebra modules."""

from .module import (
    Arrow,
    ModuleMap,
    PModule,
    Submodule,
    arrows_into,
    arrows_of,
    arrows_out_of,
    direct_power,
    direct_sum,
    preimage_submodule,
    quotient,
    reverse_arrow,
    semisimple,
    simple,
    soc_chain,
    soc_i,
    socle_dims,
    top_i_dim,
    zero_module,
)
from .functors import sigma, sigma_on_map, sigma_star, sigma_star_on_map, sigma_star_word, sigma_word
from .families import (
    hat_graph,
    k_minus,
    m_module,
    n_hat,
    n_module,
    restrict_to_unprimed,
    semisimple_primed,
    v_dim_weight,
    v_module,
    weight_to_root,
)
from .hom import (
    find_injective_hom,
    find_iso,
    find_surjective_hom,
    hom_space,
    is_iso,
    random_hom,
    retry_budget,
)
from .injectives import injective_module
from .strata import build_filtered, eps_mod, eps_star_mod, extract_datum, random_extension

__all__ = [
    "Arrow",
    "ModuleMap",
    "PModule",
    "Submodule",
    "arrows_into",
    "arrows_of",
    "arrows_out_of",
    "build_filtered",
    "direct_power",
    "direct_sum",
    "eps_mod",
    "eps_star_mod",
    "extract_datum",
    "find_injective_hom",
    "find_iso",
    "find_surjective_hom",
    "hat_graph",
    "hom_space",
    "injective_module",
    "is_iso",
    "k_minus",
    "m_module",
    "n_hat",
    "n_module",
    "preimage_submodule",
    "quotient",
    "random_extension",
    "random_hom",
    "restrict_to_unprimed",
    "retry_budget",
    "reverse_arrow",
    "semisimple",
    "semisimple_primed",
    "sigma",
    "sigma_on_map",
    "sigma_star",
    "sigma_star_on_map",
    "sigma_star_word",
    "sigma_word",
    "simple",
    "soc_chain",
    "soc_i",
    "socle_dims",
    "top_i_dim",
    "v_dim_weight",
    "v_module",
    "weight_to_root",
    "zero_module",
]
