"""Real numbers as infinite decimals, with left-to-right arithmetic."""

from .exact_scaled import ScaledDecimal, add_exact, cmp_exact, digit_at, mul_exact, sub_exact, truncate
from .decimal_stream import (
    DEFAULT_FUEL,
    ONE,
    ZERO,
    Backing,
    DecimalReal,
    DomainError,
    Undetermined,
    as_algorithmic,
    cmp_with_fuel,
    digit_outcome,
    from_digits,
    from_fraction,
    from_periodic,
    from_rational,
    from_scaled,
    from_truncations,
    shift,
    sign_with_fuel,
)
from .arithmetic import add, div, product_bound, product_constant, mul, negate, product_scale, reciprocal, sub
from .constructions import (
    CauchyInput,
    ConstructionError,
    DedekindCut,
    cantor_pair,
    cantor_unpair,
    from_cauchy,
    from_dedekind,
    glb_finite,
)
from .arclength import arc_angle, circle_arc_length, pi_real
from .computable import carry_stats, e_real, sqrt_rational, sqrt_real

__version__ = "0.1.0"

__all__ = [
    "ScaledDecimal", "add_exact", "sub_exact", "mul_exact", "truncate", "digit_at", "cmp_exact",
    "DEFAULT_FUEL", "ZERO", "ONE", "Backing", "DecimalReal", "DomainError", "Undetermined",
    "as_algorithmic", "cmp_with_fuel", "digit_outcome", "from_digits", "from_fraction", "from_periodic",
    "from_rational", "from_scaled", "from_truncations", "shift", "sign_with_fuel",
    "add", "sub", "negate", "mul", "reciprocal", "div", "product_scale", "product_constant", "product_bound",
    "CauchyInput", "ConstructionError", "DedekindCut", "cantor_pair", "cantor_unpair", "from_cauchy",
    "from_dedekind", "glb_finite",
    "arc_angle", "circle_arc_length", "pi_real",
    "carry_stats", "e_real", "sqrt_rational", "sqrt_real",
]
