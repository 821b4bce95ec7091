"""Lommel functions s_{mu,nu}(z): evaluation, parameter regions and real zeros."""

from .errors import (
    ConvergenceError,
    DomainError,
    LommelLabError,
    NotInBracketedRegion,
    ParameterError,
)
from .lommel import (
    EvalRoute,
    LommelParams,
    a_const,
    aux_U,
    aux_V,
    evaluate,
    kernel_f,
    kernel_f_complement,
    kernel_f_derivative,
    lommel_asymptotic,
    lommel_cosine_integral,
    lommel_entire,
    lommel_series,
    lommel_sine_integral,
    theta_combination,
)
from .quadrature import QuadResult, integrate_singular
from .specfun import HypTriple, SeriesResult, gamma, hyp1f2, hyp2f1, hyp2f1_at_half, rgamma
from .zeros import (
    HurwitzInput,
    KernelProfile,
    LPClass,
    RegionClass,
    ZeroRecord,
    asymptotic_zero,
    brackets_for,
    find_zeros,
    hurwitz_count,
    kernel_monotonicity,
    lp_plus_region,
    region_classify,
    sign_scan_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "QuadResult",
    "integrate_singular",
    "HypTriple",
    "SeriesResult",
    "gamma",
    "hyp1f2",
    "hyp2f1",
    "hyp2f1_at_half",
    "rgamma",
    "ConvergenceError",
    "DomainError",
    "LommelLabError",
    "NotInBracketedRegion",
    "ParameterError",
    "EvalRoute",
    "LommelParams",
    "a_const",
    "aux_U",
    "aux_V",
    "evaluate",
    "kernel_f",
    "kernel_f_complement",
    "kernel_f_derivative",
    "lommel_asymptotic",
    "lommel_cosine_integral",
    "lommel_entire",
    "lommel_series",
    "lommel_sine_integral",
    "theta_combination",
    "HurwitzInput",
    "KernelProfile",
    "LPClass",
    "RegionClass",
    "ZeroRecord",
    "asymptotic_zero",
    "brackets_for",
    "find_zeros",
    "hurwitz_count",
    "kernel_monotonicity",
    "lp_plus_region",
    "region_classify",
    "sign_scan_oracle",
]
