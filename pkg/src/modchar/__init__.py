"""Characters of simple modules in characteristic p, computed from tilting characters."""

from .charring import Character, char_add, char_mul, char_scale, dim, frobenius_twist, highest_weight
from .errors import (
    CharacterError,
    ConsistencyError,
    ModcharError,
    NotGoodFiltrationError,
    RootSystemError,
    TiltingDataError,
    UnsupportedWeightError,
)
from .pipeline import PipelineContext, choose_r, gamma1_set
from .rootsystem import (
    RootSystem,
    build_root_system,
    decompose_pr,
    dominance_leq,
    dominant_weights_below,
    dual_weight,
    make_dominant,
    pairing_alpha0,
)
from .tilting import (
    a1_tilting_provider,
    composite_provider,
    file_provider_load,
    lowest_alcove_provider,
)
from .weylchar import nabla_character, nabla_decompose, weyl_dim

__version__ = "0.1.0"

__all__ = [
    "Character", "char_add", "char_mul", "char_scale", "dim", "frobenius_twist", "highest_weight",
    "CharacterError", "ConsistencyError", "ModcharError", "NotGoodFiltrationError",
    "RootSystemError", "TiltingDataError", "UnsupportedWeightError",
    "PipelineContext", "choose_r", "gamma1_set",
    "RootSystem", "build_root_system", "decompose_pr", "dominance_leq", "dominant_weights_below",
    "dual_weight", "make_dominant", "pairing_alpha0",
    "a1_tilting_provider", "composite_provider", "file_provider_load", "lowest_alcove_provider",
    "nabla_character", "nabla_decompose", "weyl_dim",
]
