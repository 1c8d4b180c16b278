"""Constructive sequences around the product inequalities: simultaneous
prime points of polynomial systems, greedy pairwise-coprime product
sequences, the least-prime-residue chain that reverses the inequality, and
small exhaustive oracles for the coprime-subset and prime-lower-bound
facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .errors import InputError, OutOfRangeError, SearchBudgetError
from .inequalities import Ordering, VerificationReport, verify_inequality
from .polynomials import (DEFAULT_POINT_BUDGET, IntPoly,
                          enumerate_prime_values, iter_value_points)
from .primes import PrimeTable, is_prime, requires_probable_prime

DEFAULT_COUNTEREXAMPLE_SEARCH = 10 ** 6


# --- simultaneous prime points and coprime products ------------------------

@dataclass(frozen=True)
class SimultaneousPrimePoint:
    """An argument tuple where every polynomial of a system is prime.

    norm_sq is the exact integer sum of squares of the values, the default
    ranking key (Euclidean order needs no square roots on integers).
    """

    point: tuple
    values: tuple
    norm_sq: int


def enumerate_simultaneous_points(system, bound: int, table: PrimeTable, *,
                                  norm: str = "sumsq",
                                  point_budget: int = DEFAULT_POINT_BUDGET):
    """All points where every polynomial of the system takes a prime value
    <= bound, sorted by (norm, values, point).

    norm "sumsq" ranks by the sum of squared values; "max" by the largest
    value.  Both store the exact sum of squares in norm_sq; only the sort
    order changes, and ties break identically.
    """
    if norm not in ("sumsq", "max"):
        raise InputError(f"norm must be 'sumsq' or 'max', got {norm!r}")
    if bound > table.limit:
        raise OutOfRangeError(
            f"bound {bound} exceeds the prime table limit {table.limit}")
    points = []
    for point, values in iter_value_points(system, bound, point_budget):
        if all(v >= 2 and v in table for v in values):
            points.append(SimultaneousPrimePoint(
                point=point, values=values,
                norm_sq=sum(v * v for v in values)))
    if norm == "sumsq":
        points.sort(key=lambda p: (p.norm_sq, p.values, p.point))
    else:
        points.sort(key=lambda p: (max(p.values), p.values, p.point))
    return points


@dataclass(frozen=True)
class CoprimeProductSequence:
    """Greedy pairwise-coprime subsequence of value products.

    Walking the ranked simultaneous prime points, a point is kept iff the
    product of its values shares no factor with any previously kept
    product; the first point is always kept.  chosen_points[j] attains
    products[j].
    """

    products: tuple
    chosen_points: tuple
    system: tuple | None = None
    bound: int | None = None
    exhaustive: bool = True

    def __len__(self):
        return len(self.products)

    def to_json_dict(self) -> dict:
        return {
            "system": None if self.system is None
            else [str(p) for p in self.system],
            "bound": self.bound,
            "products": [str(b) for b in self.products],
            "chosen_points": [list(p) for p in self.chosen_points],
            "exhaustive": self.exhaustive,
        }


def build_coprime_products(points, *, system=None, bound=None,
                           exhaustive=True) -> CoprimeProductSequence:
    """Run the greedy coprimality filter over ranked prime points.

    Keeping a point iff its value product is coprime to the running product
    of everything already kept is equivalent to pairwise coprimality with
    each kept product, so the output is pairwise coprime by construction.
    """
    products = []
    chosen = []
    accumulated = 1
    for pt in points:
        candidate = prod(pt.values)
        if gcd(candidate, accumulated) == 1:
            products.append(candidate)
            chosen.append(pt.point)
            accumulated *= candidate
    return CoprimeProductSequence(
        products=tuple(products), chosen_points=tuple(chosen),
        system=None if system is None else tuple(system), bound=bound,
        exhaustive=exhaustive)


def coprime_product_family(seq: CoprimeProductSequence) -> str:
    if seq.system is None:
        return "coprime-products"
    return "coprime-products(" + ",".join(str(p) for p in seq.system) + ")"


def verify_coprime_product_inequality(seq: CoprimeProductSequence,
                                      n_min: int = 1) -> VerificationReport:
    """Product-vs-next check over the coprime product sequence; empirical
    evidence that the inequality eventually holds, never proof."""
    return verify_inequality(
        list(seq.products), n_min=n_min, exponent=1,
        family=coprime_product_family(seq),
        bound=seq.bound if seq.bound is not None else 0,
        exhaustive=seq.exhaustive)


# --- exhaustive coprime-subset oracle --------------------------------------

MAX_COPRIME_ORACLE = 60


def max_coprime_subset_size(n: int) -> int:
    """Exact maximum size of a pairwise-coprime subset of {2..n}.

    Backtracking over prime-factor bitmasks: kept elements must use
    disjoint prime sets, so branches are cut when even claiming one unused
    prime per remaining slot cannot beat the best found.  Practical
    through n = 60; the answer there matches the prime count pi(n).
    """
    if n < 2 or n > MAX_COPRIME_ORACLE:
        raise OutOfRangeError(
            f"oracle handles 2 <= n <= {MAX_COPRIME_ORACLE}, got {n}")
    primes = [p for p in range(2, n + 1) if is_prime(p)]
    index = {p: i for i, p in enumerate(primes)}
    masks = []
    for m in range(2, n + 1):
        mask = 0
        r = m
        for p in primes:
            if p * p > r:
                break
            while r % p == 0:
                mask |= 1 << index[p]
                r //= p
        if r > 1:
            mask |= 1 << index[r]
        masks.append(mask)

    best = 0

    def search(i: int, used: int, size: int):
        nonlocal best
        if size > best:
            best = size
        remaining = len(masks) - i
        if size + remaining <= best:
            return
        # each further element needs at least one prime not yet claimed
        free_primes = len(primes) - bin(used).count("1")
        if size + free_primes <= best:
            return
        for j in range(i, len(masks)):
            if masks[j] & used:
                continue
            search(j + 1, used | masks[j], size + 1)

    search(0, 0, 0)
    return best


# --- prime lower bound for coprime ascending sequences ---------------------

def check_prime_lower_bound(seq, table: PrimeTable):
    """For a strictly increasing pairwise-coprime sequence of integers > 1,
    test p_i <= seq[i-1] for every i (p_i the i-th prime).

    Returns (True, None) or (False, first failing 1-based index).  A False
    here would contradict the supporting fact, so it flags a defect in the
    caller's sequence or in this library.  Non-coprime input is rejected
    with the offending pair.
    """
    vals = list(seq)
    if len(vals) == 0:
        raise InputError("empty sequence")
    prev = 1
    for v in vals:
        if not isinstance(v, int) or v <= 1:
            raise InputError(f"entries must be integers > 1, got {v!r}")
        if v <= prev:
            raise InputError(
                f"sequence must be strictly increasing, got {prev} then {v}")
        prev = v
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            g = gcd(vals[i], vals[j])
            if g != 1:
                raise InputError(
                    f"entries {vals[i]} and {vals[j]} share the factor {g}")
    if table.count < len(vals):
        raise OutOfRangeError(
            f"need the first {len(vals)} primes, table up to {table.limit} "
            f"holds {table.count}")
    for i, v in enumerate(vals, start=1):
        if table.nth_prime(i) > v:
            return False, i
    return True, None


# --- totatives among polynomial prime values -------------------------------

@dataclass(frozen=True)
class TotativeWitness:
    point: tuple
    value: int


def find_totative_value(poly: IntPoly, m: int, table: PrimeTable,
                        point_budget: int = DEFAULT_POINT_BUDGET):
    """Least prime value of poly that is <= m and coprime to m.

    Returns a TotativeWitness or None.  Because enumeration up to m is
    exhaustive, None is a definitive negative for the whole range, not a
    search-budget artifact.
    """
    if m < 1:
        raise InputError(f"m must be positive, got {m}")
    if m > table.limit:
        raise OutOfRangeError(
            f"m {m} exceeds the prime table limit {table.limit}")
    seq = enumerate_prime_values(poly, m, table, point_budget)
    for value, point in zip(seq.values, seq.witness_points):
        if gcd(value, m) == 1:
            return TotativeWitness(point=point, value=value)
    return None


# --- the reversing sequence ------------------------------------------------

@dataclass(frozen=True)
class CounterexampleSequence:
    """2, 3, then repeatedly the least prime congruent to 1 modulo the
    product of all previous terms.

    Each new term exceeds that product, so the product of the first n terms
    stays strictly below term n+1 for every n — the product inequality
    reverses along the whole sequence.  probabilistic_primality records
    whether any candidate reached the probable-prime regime (>= 2^64).
    """

    terms: tuple
    probabilistic_primality: bool

    def __len__(self):
        return len(self.terms)

    def to_json_dict(self) -> dict:
        return {
            "terms": [str(t) for t in self.terms],
            "probabilistic_primality": self.probabilistic_primality,
        }


def build_counterexample_sequence(count: int,
                                  max_search: int = DEFAULT_COUNTEREXAMPLE_SEARCH
                                  ) -> CounterexampleSequence:
    """First `count` terms of the reversing sequence.

    Term n (n >= 3) is k*M + 1 for the least k in 1..max_search making it
    prime, M the product of terms 1..n-1.  Dirichlet guarantees such a
    prime exists; if k runs past max_search a SearchBudgetError carries the
    partial sequence in its `partial` attribute.
    """
    if count < 1:
        raise InputError(f"count must be >= 1, got {count}")
    if max_search < 1:
        raise InputError(f"max_search must be >= 1, got {max_search}")
    terms = [2, 3][:count]
    probabilistic = False
    while len(terms) < count:
        modulus = prod(terms)
        for k in range(1, max_search + 1):
            candidate = k * modulus + 1
            if requires_probable_prime(candidate):
                probabilistic = True
            if is_prime(candidate):
                terms.append(candidate)
                break
        else:
            raise SearchBudgetError(
                f"no prime of the form k*{modulus}+1 with k <= {max_search}",
                partial=CounterexampleSequence(tuple(terms), probabilistic))
    return CounterexampleSequence(tuple(terms), probabilistic)


def verify_reverse_inequality(seq: CounterexampleSequence
                              ) -> VerificationReport:
    """Exact check that the product of the first n terms stays below term
    n+1 for every available n; zero violations is forced by construction."""
    if len(seq.terms) < 2:
        raise InputError("need at least 2 terms to compare")
    return verify_inequality(
        list(seq.terms), n_min=1, exponent=1, direction=Ordering.LESS,
        family="counterexample-sequence", bound=0, exhaustive=True,
        probabilistic_primality=seq.probabilistic_primality)
