"""Ideals generated by a-fold products of linear forms, their free
resolutions, and the second-order Orlik-Terao presentation.

All arithmetic is exact over the rationals.
"""

from .arrangement import (
    Arrangement,
    Circuit3,
    Flat2,
    circuits3,
    essentialize,
    is_generic3,
    load_arrangement,
    min_distance,
    p_of_arrangement,
    parse_arrangement,
    random_arrangement,
    rank,
    rank2_flats,
    reduced_support,
)
from .exactalg import LinearForm, ParseError, Polynomial, Ring, parse_linear_form, parse_polynomial
from .fold_ideals import FoldIdeal, check_power_identity, colon_step_check, fold_ideal
from .groebner import (
    Budget,
    BudgetExceeded,
    Ideal,
    buchberger,
    colon,
    eliminate,
    hilbert_function,
    intersect,
    krull_dimension,
    normal_form,
    saturate,
)
from .resolution import BettiTable, FreeResolution, minimal_free_resolution, syzygies

__version__ = "0.1.0"
