"""One-block codes: surjectivity, degree, magic symbols and closing (re-exported)."""

from .closing import (  # noqa: F401
    ClosingReport,
    fiber_of_point,
    is_left_closing,
    is_right_closing,
    pair_graph,
    reverse_code,
)
from .codes import (  # noqa: F401
    DegreeReport,
    FactorCheck,
    OneBlockCode,
    Recoding,
    apply_code,
    compose,
    degree_star,
    dstar_profile,
    find_magic_symbol,
    identity_code,
    is_almost_invertible,
    is_factor_onto,
    make_code,
    recode_to_magic_symbol,
    require_factor,
)
