"""Exact q-series toolkit for Wronskians of Virasoro minimal-model characters,
their quotient modular forms F_k, and supersingular j-invariants mod p."""

from .characters import central_charge, character, character_family, conformal_weight, \
    leading_exponent, partition_count
from .errors import (AgwsError, FalsificationError, IndeterminatePivotError,
                     InsufficientPrecisionError, LatticeError, NonIntegralError,
                     NonInvertibleError, NotModularError, ParameterError, PrecisionError)
from .modforms import E2, E4, E6, delta, divisor_polynomial, eisenstein, eta_power, \
    express_in_basis, j_invariant
from .qexp import QExp, euler_product, restricted_product, theta_monomial
from .realroots import conjecture_check, count_real_roots_in
from .supersingular import deligne_ss_locus, hasse_ss_locus, verify_sslcong
from .verdict import Verdict
from .wronskian import Vanishing, f_k, gen_wronskian, is_vanishing_k, wronskian_W, \
    wronskian_Wprime

__version__ = "0.1.0"

__all__ = [
    "central_charge",
    "character",
    "character_family",
    "conformal_weight",
    "leading_exponent",
    "partition_count",
    "AgwsError",
    "FalsificationError",
    "IndeterminatePivotError",
    "InsufficientPrecisionError",
    "LatticeError",
    "NonIntegralError",
    "NonInvertibleError",
    "NotModularError",
    "ParameterError",
    "PrecisionError",
    "E2",
    "E4",
    "E6",
    "delta",
    "divisor_polynomial",
    "eisenstein",
    "eta_power",
    "express_in_basis",
    "j_invariant",
    "QExp",
    "euler_product",
    "restricted_product",
    "theta_monomial",
    "conjecture_check",
    "count_real_roots_in",
    "deligne_ss_locus",
    "hasse_ss_locus",
    "verify_sslcong",
    "Verdict",
    "Vanishing",
    "f_k",
    "gen_wronskian",
    "is_vanishing_k",
    "wronskian_W",
    "wronskian_Wprime",
]
