"""Exact arithmetic for the binary digit-sum series sum s2(n)/b^n and its
Fermat-reciprocal companion, with certified enclosures and empirical
irrationality-exponent estimates."""
from .diophantine import (
    ContinuedFraction,
    ConvergentTable,
    InsufficientPrefixError,
    MuEstimate,
    certified_cf_prefix,
    cf_of_rational,
    convergents,
    estimate_mu,
    estimate_mu_for_constant,
)
from .enclosure import Enclosure, Rational, format_rational, parse_rational
from .sequences import f_difference, f_multiplicative, f_series_oracle, s2, v2
from .series import (
    eval_F,
    eval_S,
    fermat_number,
    fermat_reciprocal_sum,
    formal_identity_check,
    liouville_partial,
    verify_relation,
)

__version__ = "0.1.0"
