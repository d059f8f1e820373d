"""Commuting permutation tuples counted by joint orbits, with their asymptotics."""

from .enumeration import (
    CountTable,
    IntegralityError,
    brute_force_table,
    commuting_tuple_count,
    count_table,
    dirichlet_coeff,
    log_gf,
)
from .constants import constants_bundle, correction_poly, eval_correction
from .logconcavity import scan, upsilon
from .saddle import QuadratureError, estimate, solve, validate_saddle
from .series import RationalSeries, SeriesError
from .special import MP, k_ell, stieltjes, zeta, zeta_deriv
from .zfunctions import (
    AsymptoticExpansion,
    ZSpec,
    c_coeff,
    eval_expansion,
    h,
    h_inverse,
    staircase_expansion,
    residue_expansion,
    z_direct,
    z_staircase,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticExpansion",
    "CountTable",
    "IntegralityError",
    "MP",
    "QuadratureError",
    "RationalSeries",
    "SeriesError",
    "ZSpec",
    "brute_force_table",
    "c_coeff",
    "commuting_tuple_count",
    "constants_bundle",
    "correction_poly",
    "count_table",
    "dirichlet_coeff",
    "estimate",
    "eval_correction",
    "eval_expansion",
    "h",
    "h_inverse",
    "k_ell",
    "log_gf",
    "scan",
    "solve",
    "staircase_expansion",
    "stieltjes",
    "residue_expansion",
    "upsilon",
    "validate_saddle",
    "z_direct",
    "z_staircase",
    "zeta",
    "zeta_deriv",
]
