"""Freeness of valuation rings over their associated orders for near
one-dimensional elementary abelian extensions, decided by digit combinatorics."""
from .assoc_order import (FreeGenerator, OrderData, free_generator_check, in_associated_order, w_condition,
                          membership_oracle, order_data)
from .criteria import (ConverseWitness, CriterionReport, Divisibility, EquivalenceReport,
                       converse_search, divisibility_test, equivalence_report, freeness, h_value,
                       in_S_q, miyata_condition, prime_powers_up_to)
from .digits import PrimePower, binomial_nonzero_mod_p, digit_leq, digits, from_digits, residue
from .errors import (ConsistencyError, CoprimalityError, MonotonicityError, NormalizationError,
                     RangeError, ScaffoldError)
from .extension import (ExtensionParams, RamificationData, RhoAction, d_value, epsilon_threshold,
                        error_term_admissible, psi_action_on_rho, psi_mult, ramification_breaks,
                        rho_valuation, validate_params)

__version__ = "0.1.0"
