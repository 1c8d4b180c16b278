"""Exact verification of product-versus-power inequalities over ascending
integer sequences.

The central question: for which n does the product of the first n terms
exceed the (n+1)-th term raised to a power k?  For the sequence of all
primes and k = 1 this is the classical primorial inequality (true from
n = 2); k = 2 and 3 give the Bonse-type strengthenings.  Comparisons are
exact: a fast log-domain prefilter decides only when the gap is safely
larger than floating-point error, and everything near the boundary falls
back to arbitrary-precision integer arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import log

from .errors import InputError, OutOfRangeError
from .primes import PrimeTable

# Safety margin for the natural-log prefilter.  A compensated sum of 10^6
# logarithms carries error around 1e-9, so a gap beyond 1e-6 is decisive;
# anything closer is re-checked exactly.
DEFAULT_LOG_MARGIN = 1e-6


class Ordering(str, enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def _check_sequence(values) -> list:
    vals = list(values)
    prev = 1
    for i, v in enumerate(vals):
        if not isinstance(v, int) or v <= 1:
            raise InputError(f"sequence entries must be integers > 1, "
                             f"got {v!r} at position {i}")
        if v <= prev:
            raise InputError(f"sequence must be strictly ascending, "
                             f"got {prev} before {v}")
        prev = v
    return vals


def compare_product_power(seq, n: int, k: int = 1,
                          margin: float = DEFAULT_LOG_MARGIN) -> Ordering:
    """Exact ordering of (product of the first n entries) vs seq[n]^k.

    Entries must be strictly ascending integers > 1.  The log prefilter
    decides only when |log-gap| > margin; pass margin=math.inf to force the
    arbitrary-precision path.
    """
    vals = _check_sequence(seq)
    if n < 1 or k < 1:
        raise InputError(f"n and k must be positive, got n={n}, k={k}")
    if n + 1 > len(vals):
        raise OutOfRangeError(
            f"n={n} needs {n + 1} sequence entries, only {len(vals)} given")
    lhs_log = math.fsum(map(log, vals[:n]))
    rhs_log = k * log(vals[n])
    gap = lhs_log - rhs_log
    if gap > margin:
        return Ordering.GREATER
    if gap < -margin:
        return Ordering.LESS
    lhs = math.prod(vals[:n])
    rhs = vals[n] ** k
    if lhs > rhs:
        return Ordering.GREATER
    if lhs < rhs:
        return Ordering.LESS
    return Ordering.EQUAL


def _exact_ordering(lhs: int, rhs: int) -> Ordering:
    if lhs > rhs:
        return Ordering.GREATER
    if lhs < rhs:
        return Ordering.LESS
    return Ordering.EQUAL


def ordering_stream(values, exponent: int = 1,
                    margin: float = DEFAULT_LOG_MARGIN):
    """Yield (n, ordering, lhs_log, rhs_log) for n = 1 .. len(values)-1 in
    one forward pass.

    The running log-sum uses Kahan compensation so the accumulated error
    stays orders of magnitude below the prefilter margin even over 10^6
    terms.  With margin=math.inf an exact running product is maintained
    instead, turning every comparison into big-integer arithmetic.
    """
    always_exact = math.isinf(margin)
    running = 0.0
    comp = 0.0
    product = 1
    for n in range(1, len(values)):
        x = log(values[n - 1])
        y = x - comp
        t = running + y
        comp = (t - running) - y
        running = t
        if always_exact:
            product *= values[n - 1]
        rhs_log = exponent * log(values[n])
        gap = running - rhs_log
        if always_exact:
            order = _exact_ordering(product, values[n] ** exponent)
        elif gap > margin:
            order = Ordering.GREATER
        elif gap < -margin:
            order = Ordering.LESS
        else:
            order = _exact_ordering(math.prod(values[:n]),
                                    values[n] ** exponent)
        yield n, order, running, rhs_log


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one inequality family over a range of n.

    violations lists every n in n_range (inclusive) where the comparison
    failed; empirical_threshold is the largest such n (0 when none), i.e. a
    lower-bound witness for the crossover constant within the verified
    range — never a claim about all n.
    """

    family: str
    bound: int
    n_range: tuple
    violations: tuple
    empirical_threshold: int
    exponent: int
    exhaustive: bool
    probabilistic_primality: bool
    sequence_prefix: tuple  # first <= 100 terms, decimal strings

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "bound": self.bound,
            "n_range": list(self.n_range),
            "violations": list(self.violations),
            "empirical_threshold": self.empirical_threshold,
            "exponent": self.exponent,
            "exhaustive": self.exhaustive,
            "probabilistic_primality": self.probabilistic_primality,
            "sequence_prefix": list(self.sequence_prefix),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            family=data["family"],
            bound=data["bound"],
            n_range=tuple(data["n_range"]),
            violations=tuple(data["violations"]),
            empirical_threshold=data["empirical_threshold"],
            exponent=data["exponent"],
            exhaustive=data["exhaustive"],
            probabilistic_primality=data["probabilistic_primality"],
            sequence_prefix=tuple(data["sequence_prefix"]),
        )


def _build_report(values, n_min, exponent, direction, margin, family, bound,
                  exhaustive, probabilistic_primality) -> VerificationReport:
    n_max = len(values) - 1
    violations = []
    for n, order, _, _ in ordering_stream(values, exponent, margin):
        if n < n_min:
            continue
        if order is not direction:
            violations.append(n)
    return VerificationReport(
        family=family,
        bound=bound,
        n_range=(n_min, n_max),
        violations=tuple(violations),
        empirical_threshold=max(violations, default=0),
        exponent=exponent,
        exhaustive=exhaustive,
        probabilistic_primality=probabilistic_primality,
        sequence_prefix=tuple(str(v) for v in values[:100]),
    )


def verify_inequality(seq, n_min: int = 1, exponent: int = 1, *,
                      direction: Ordering = Ordering.GREATER,
                      margin: float = DEFAULT_LOG_MARGIN,
                      family: str | None = None,
                      bound: int | None = None,
                      exhaustive: bool | None = None,
                      probabilistic_primality: bool = False
                      ) -> VerificationReport:
    """Check product-vs-power for every n from n_min to len(seq)-1.

    seq is either a PrimeValueSequence (family, bound and the exhaustive
    flag are taken from it) or a plain ascending list of integers > 1, in
    which case the keyword metadata fills the report.  A violation is any n
    where the exact ordering differs from `direction` (strictly greater by
    default; sequences built to reverse the inequality are checked with
    Ordering.LESS).
    """
    if hasattr(seq, "values") and hasattr(seq, "poly"):
        values = _check_sequence(seq.values)
        family = str(seq.poly) if family is None else family
        bound = seq.bound if bound is None else bound
        exhaustive = seq.exhaustive if exhaustive is None else exhaustive
    else:
        values = _check_sequence(seq)
        family = "sequence" if family is None else family
        bound = (values[-1] if values else 0) if bound is None else bound
        exhaustive = False if exhaustive is None else exhaustive
    if n_min < 1:
        raise InputError(f"n_min must be >= 1, got {n_min}")
    if exponent < 1:
        raise InputError(f"exponent must be >= 1, got {exponent}")
    # the forward check is only informative with at least two comparable n
    # from n_min on; the reverse direction is useful down to a single check
    min_len = n_min + 2 if direction is Ordering.GREATER else n_min + 1
    if len(values) < min_len:
        raise InputError(f"sequence too short: {len(values)} entries, "
                         f"need at least {min_len} for n_min={n_min}")
    return _build_report(values, n_min, exponent, direction, margin, family,
                         bound, exhaustive, probabilistic_primality)


def max_bonse_exponent(seq, n: int) -> int:
    """Largest k >= 0 with (product of first n entries) > seq[n]^k.

    Zero means even the plain inequality fails.  A log-domain estimate
    seeds the answer and exact big-integer comparisons settle it.
    """
    vals = _check_sequence(seq)
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if n + 1 > len(vals):
        raise OutOfRangeError(
            f"n={n} needs {n + 1} sequence entries, only {len(vals)} given")
    product = math.prod(vals[:n])
    base = vals[n]
    k = max(int(math.fsum(map(log, vals[:n])) / log(base)) - 2, 0)
    while base ** k >= product and k > 0:
        k -= 1
    while product > base ** (k + 1):
        k += 1
    return k


def theta_equivalence_check(table: PrimeTable, n: int) -> bool:
    """Self-test agreement bit: does (theta(p_n) > ln p_{n+1}) match the
    exact product comparison?  The two statements are mathematically the
    same, so False would expose a defect in either path."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if n + 1 > table.count:
        raise OutOfRangeError(
            f"theta equivalence at n={n} needs {n + 1} primes, table up to "
            f"{table.limit} holds {table.count}")
    p_n = table.nth_prime(n)
    p_next = table.nth_prime(n + 1)
    theta_holds = table.theta(p_n).value > log(p_next)
    # same decision rule as compare_product_power, but on the table's own
    # prime prefix (already validated), keeping exhaustive self-test sweeps
    # over all n <= 10^4 fast
    prefix = table.primes[:n]
    gap = math.fsum(map(log, prefix)) - log(p_next)
    if gap > DEFAULT_LOG_MARGIN:
        exact_holds = True
    elif gap < -DEFAULT_LOG_MARGIN:
        exact_holds = False
    else:
        exact_holds = math.prod(prefix) > p_next
    return theta_holds == exact_holds
