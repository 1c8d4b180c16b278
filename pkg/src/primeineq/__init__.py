"""Exact verification of primorial-style inequalities over prime values of
integer polynomials: sieve-backed prime tables, exhaustive bounded
enumeration, product-vs-power comparisons with an exact fallback, greedy
coprime product sequences, and the residue chain that reverses the
inequality.
"""

from .errors import (EnumerabilityError, InputError, OutOfRangeError,
                     ParseError, ResourceLimitError, SearchBudgetError)
from .inequalities import (DEFAULT_LOG_MARGIN, Ordering, VerificationReport,
                           compare_product_power, max_bonse_exponent,
                           ordering_stream, theta_equivalence_check,
                           verify_inequality)
from .polynomials import (DEFAULT_POINT_BUDGET, HypothesisReport, IntPoly,
                          PrimeValueSequence, check_hypotheses,
                          enumerate_prime_values, fixed_divisor,
                          iter_value_points, parse_poly)
from .primes import (PrimeTable, ThetaValue, build_table, euler_phi,
                     is_prime, load_table, save_table,
                     requires_probable_prime)
from .sequences import (CoprimeProductSequence, CounterexampleSequence,
                        SimultaneousPrimePoint, TotativeWitness,
                        build_coprime_products, build_counterexample_sequence,
                        check_prime_lower_bound, enumerate_simultaneous_points,
                        find_totative_value, max_coprime_subset_size,
                        verify_coprime_product_inequality,
                        verify_reverse_inequality)

__version__ = "0.1.0"

__all__ = [
    "EnumerabilityError", "InputError", "OutOfRangeError", "ParseError",
    "ResourceLimitError", "SearchBudgetError",
    "DEFAULT_LOG_MARGIN", "Ordering", "VerificationReport",
    "compare_product_power", "max_bonse_exponent", "ordering_stream",
    "theta_equivalence_check", "verify_inequality",
    "DEFAULT_POINT_BUDGET", "HypothesisReport", "IntPoly",
    "PrimeValueSequence", "check_hypotheses", "enumerate_prime_values",
    "fixed_divisor", "iter_value_points", "parse_poly",
    "PrimeTable", "ThetaValue", "build_table", "euler_phi", "is_prime",
    "load_table", "save_table", "requires_probable_prime",
    "CoprimeProductSequence", "CounterexampleSequence",
    "SimultaneousPrimePoint", "TotativeWitness", "build_coprime_products",
    "build_counterexample_sequence", "check_prime_lower_bound",
    "enumerate_simultaneous_points", "find_totative_value",
    "max_coprime_subset_size", "verify_coprime_product_inequality",
    "verify_reverse_inequality",
    "__version__",
]
