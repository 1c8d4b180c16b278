"""Integer polynomials over positive-integer points, and exhaustive
enumeration of their prime values.

A polynomial here maps N^k to Z (arguments start at 1).  Enumeration up to a
bound is only exhaustive when the polynomial is monotone in every coordinate,
so construction enforces that every non-constant coefficient is positive;
only the constant term may be negative.  That covers the linear progressions
a+b*x and the classic multivariate prime-producing forms while making the
per-axis scan cutoffs sound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import (EnumerabilityError, InputError, OutOfRangeError,
                     ParseError, ResourceLimitError)
from .primes import PrimeTable

DEFAULT_POINT_BUDGET = 10 ** 9

_VAR_NAMES = ("x", "y", "z")


def _mono_str(exps, coeff) -> str:
    names = _VAR_NAMES if len(exps) <= 3 else tuple(
        f"x{i + 1}" for i in range(len(exps)))
    parts = []
    if abs(coeff) != 1 or not any(exps):
        parts.append(str(abs(coeff)))
    for j, e in enumerate(exps):
        if e == 1:
            parts.append(names[j])
        elif e > 1:
            parts.append(f"{names[j]}^{e}")
    return "*".join(parts)


class IntPoly:
    """Multivariable polynomial with integer coefficients.

    terms maps exponent tuples (one entry per variable) to nonzero
    coefficients.  Instances are immutable; equality and hashing follow the
    canonical term set.
    """

    __slots__ = ("arity", "terms", "_sorted")

    def __init__(self, arity: int, terms):
        if arity < 1:
            raise InputError(f"arity must be >= 1, got {arity}")
        merged: dict = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != arity:
                raise InputError(
                    f"exponent tuple {exps} does not match arity {arity}")
            if any(e < 0 for e in exps):
                raise InputError(f"negative exponent in {exps}")
            merged[exps] = merged.get(exps, 0) + coeff
        merged = {e: c for e, c in merged.items() if c != 0}
        if not any(any(e) for e in merged):
            raise InputError("polynomial must have a non-constant term")
        for exps, coeff in merged.items():
            if any(exps) and coeff < 0:
                raise EnumerabilityError(
                    f"non-constant term {_mono_str(exps, coeff)} has a negative "
                    "coefficient; prime values could not be enumerated "
                    "exhaustively")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "terms", merged)
        # graded-lex: total degree first, then leftmost-variable-heaviest
        object.__setattr__(self, "_sorted", tuple(
            sorted(merged.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    def __eq__(self, other):
        return (isinstance(other, IntPoly) and self.arity == other.arity
                and self._sorted == other._sorted)

    def __hash__(self):
        return hash((self.arity, self._sorted))

    def __str__(self):
        out = []
        for exps, coeff in self._sorted:
            mono = _mono_str(exps, coeff)
            if not out:
                out.append(mono if coeff > 0 else f"-{mono}")
            else:
                out.append(f"+{mono}" if coeff > 0 else f"-{mono}")
        return "".join(out)

    def __repr__(self):
        return f"IntPoly({self!s})"

    @property
    def total_degree(self) -> int:
        return max(sum(e) for e in self.terms)

    def variables_used(self):
        """Indices of variables that actually appear."""
        used = set()
        for exps in self.terms:
            used.update(j for j, e in enumerate(exps) if e)
        return used

    def eval(self, point) -> int:
        """Exact value at a tuple of positive integers."""
        if len(point) != self.arity:
            raise InputError(
                f"point {point} has arity {len(point)}, polynomial needs "
                f"{self.arity}")
        if any(v < 1 for v in point):
            raise InputError(f"arguments must be >= 1, got {point}")
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(point, exps):
                if e:
                    term *= v ** e
            total += term
        return total


# --- parsing ---------------------------------------------------------------

_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*^":
            tokens.append(("op", c, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif c in _VAR_INDEX:
            if c == "x" and i + 1 < n and text[i + 1] in "123456789":
                tokens.append(("var", int(text[i + 1]) - 1, i))
                i += 2
            else:
                tokens.append(("var", _VAR_INDEX[c], i))
                i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    return tokens


def parse_poly(text: str) -> IntPoly:
    """Parse a polynomial like "6*x+1", "x^2+y^2+1", or "x^3+2*y^3".

    Grammar: terms joined by + or -, each term a '*'-separated product of
    integers and variables (x, y, z or x1..x9), variables optionally raised
    with '^'.  Implicit multiplication is not accepted.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", 0)
    monomials = []  # (coeff, {var: exp})
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None, len(text))

    def parse_factor(coeff, exps):
        nonlocal pos
        kind, value, at = peek()
        if kind == "int":
            pos += 1
            kind2, value2, at2 = peek()
            if kind2 == "op" and value2 == "^":
                raise ParseError("'^' applies to variables only", at2)
            return coeff * value, exps
        if kind == "var":
            pos += 1
            kind2, value2, _ = peek()
            if kind2 == "op" and value2 == "^":
                pos += 1
                kind3, value3, at3 = peek()
                if kind3 != "int":
                    raise ParseError("expected integer exponent after '^'", at3)
                pos += 1
                exp = value3
            else:
                exp = 1
            exps = dict(exps)
            exps[value] = exps.get(value, 0) + exp
            return coeff, exps
        raise ParseError("expected a number or variable", at)

    def parse_term(sign):
        nonlocal pos
        coeff, exps = parse_factor(sign, {})
        while True:
            kind, value, at = peek()
            if kind == "op" and value == "*":
                pos += 1
                coeff, exps = parse_factor(coeff, exps)
            elif kind in ("int", "var"):
                raise ParseError("missing operator (implicit multiplication "
                                 "is not allowed)", at)
            else:
                return coeff, exps

    sign = 1
    kind, value, _ = peek()
    if kind == "op" and value in "+-":
        sign = -1 if value == "-" else 1
        pos += 1
    monomials.append(parse_term(sign))
    while pos < len(tokens):
        kind, value, at = peek()
        if kind == "op" and value in "+-":
            pos += 1
            monomials.append(parse_term(-1 if value == "-" else 1))
        else:
            raise ParseError("expected '+' or '-' between terms", at)

    arity = 1
    for _, exps in monomials:
        for var, e in exps.items():
            if e:
                arity = max(arity, var + 1)
    terms: dict = {}
    for coeff, exps in monomials:
        key = tuple(exps.get(j, 0) for j in range(arity))
        terms[key] = terms.get(key, 0) + coeff
    return IntPoly(arity, terms)


# --- hypothesis screening --------------------------------------------------

@dataclass(frozen=True)
class HypothesisReport:
    """Screening result for the univariate prime-representation hypotheses:
    positive leading coefficient, no common divisor of all values, and
    irreducibility (decided exactly only up to degree 3)."""

    positive_leading: bool
    fixed_divisor: int
    irreducibility: str  # "irreducible" | "reducible" | "unknown"
    admissible: bool


def fixed_divisor(poly: IntPoly) -> int:
    """Greatest integer dividing every value of the polynomial.

    The gcd over the box {1..D+1}^k (D the total degree) already equals the
    gcd over all integer points, because values repeat mod m with period m in
    each coordinate and any m dividing all values satisfies m <= the box gcd.
    """
    d = poly.total_degree
    g = 0
    for point in itertools.product(range(1, d + 2), repeat=poly.arity):
        g = gcd(g, poly.eval(point))
        if g == 1:
            return 1
    return g if g else 1


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _has_rational_root(coeffs) -> bool:
    # coeffs[i] is the coefficient of x^i
    if coeffs[0] == 0:
        return True  # root at 0
    deg = len(coeffs) - 1
    for q in _divisors(coeffs[deg]):
        for p in _divisors(coeffs[0]):
            for sp in (p, -p):
                # evaluate at sp/q, cleared of denominators
                val = sum(c * sp ** i * q ** (deg - i)
                          for i, c in enumerate(coeffs))
                if val == 0:
                    return True
    return False


def check_hypotheses(poly: IntPoly) -> HypothesisReport:
    """Screen a univariate polynomial for the prime-representation hypotheses."""
    if poly.arity != 1:
        raise InputError("hypothesis screening is defined for univariate "
                         f"polynomials, got arity {poly.arity}")
    deg = poly.total_degree
    coeffs = [poly.terms.get((i,), 0) for i in range(deg + 1)]
    positive_leading = coeffs[deg] > 0
    fd = fixed_divisor(poly)
    if deg == 1:
        irreducibility = "irreducible"
    elif deg == 2:
        disc = coeffs[1] ** 2 - 4 * coeffs[2] * coeffs[0]
        square = disc >= 0 and isqrt(disc) ** 2 == disc
        irreducibility = "reducible" if square else "irreducible"
    elif deg == 3:
        irreducibility = "reducible" if _has_rational_root(coeffs) else "irreducible"
    else:
        irreducibility = "unknown"
    admissible = positive_leading and fd == 1 and irreducibility != "reducible"
    return HypothesisReport(positive_leading, fd, irreducibility, admissible)


# --- bounded enumeration ---------------------------------------------------

@dataclass(frozen=True)
class PrimeValueSequence:
    """The distinct primes <= bound attained by a polynomial, ascending.

    witness_points[i] is the lexicographically least argument tuple with
    poly(point) == values[i].  exhaustive means every attainable prime up to
    the bound is present, which the scan guarantees by construction.
    """

    poly: IntPoly
    bound: int
    values: tuple
    witness_points: tuple
    exhaustive: bool

    def __len__(self):
        return len(self.values)


def _axis_value(poly: IntPoly, axis: int, t: int) -> int:
    # value at (1, .., t, .., 1) with t in position `axis`
    total = 0
    for exps, coeff in poly.terms.items():
        total += coeff * t ** exps[axis]
    return total


def _axis_limit(polys, axis: int, bound: int) -> int:
    """Largest t such that every polynomial stays <= bound at
    (1,..,t,..,1); the monotone coordinates make this a sound cutoff."""
    constrained = [p for p in polys if axis in p.variables_used()]
    if not constrained:
        return 1
    if any(_axis_value(p, axis, 1) > bound for p in constrained):
        return 0
    hi = 1
    while all(_axis_value(p, axis, hi * 2) <= bound for p in constrained):
        hi *= 2
    lo = hi  # value at hi known good, at 2*hi known bad
    hi = hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if all(_axis_value(p, axis, mid) <= bound for p in constrained):
            lo = mid
        else:
            hi = mid
    return lo


def _substitute_first(terms, t: int):
    out: dict = {}
    for exps, coeff in terms.items():
        c = coeff * t ** exps[0] if exps[0] else coeff
        key = exps[1:]
        out[key] = out.get(key, 0) + c
    return out


def iter_value_points(system, bound: int,
                      point_budget: int = DEFAULT_POINT_BUDGET):
    """Yield (point, values) in lexicographic point order for every point of
    N^k where all polynomials of the system are <= bound.

    All polynomials must share one arity.  Raises ResourceLimitError when the
    bounding box holds more than point_budget points.
    """
    if not system:
        raise InputError("empty polynomial system")
    arity = system[0].arity
    if any(p.arity != arity for p in system):
        raise InputError("system members have mismatched arities: "
                         + ", ".join(str(p.arity) for p in system))
    limits = [_axis_limit(system, j, bound) for j in range(arity)]
    if any(m == 0 for m in limits):
        return
    box = 1
    for m in limits:
        box *= m
    if box > point_budget:
        raise ResourceLimitError(
            f"scan box of {box} points exceeds the budget of {point_budget}")

    term_lists = [p.terms for p in system]

    def scan(prefix, remaining, depth):
        limit = limits[depth]
        if depth == arity - 1:
            # innermost axis: values are nondecreasing in t, so stop at the
            # first t where some polynomial overshoots
            flat = [tuple((e[0], c) for e, c in terms.items())
                    for terms in remaining]
            for t in range(1, limit + 1):
                values = []
                ok = True
                for terms in flat:
                    v = 0
                    for e, c in terms:
                        v += c * t ** e if e else c
                    if v > bound:
                        ok = False
                        break
                    values.append(v)
                if not ok:
                    break
                yield prefix + (t,), tuple(values)
            return
        for t in range(1, limit + 1):
            subbed = [_substitute_first(terms, t) for terms in remaining]
            # minimum over the remaining axes is the all-ones point
            if any(sum(terms.values()) > bound for terms in subbed):
                break
            yield from scan(prefix + (t,), subbed, depth + 1)

    yield from scan((), term_lists, 0)


def enumerate_prime_values(poly: IntPoly, bound: int, table: PrimeTable,
                           point_budget: int = DEFAULT_POINT_BUDGET
                           ) -> PrimeValueSequence:
    """All distinct primes <= bound of the form poly(point), ascending."""
    if bound > table.limit:
        raise OutOfRangeError(
            f"bound {bound} exceeds the prime table limit {table.limit}")
    found: dict = {}
    for point, (value,) in iter_value_points([poly], bound, point_budget):
        if value >= 2 and value not in found and value in table:
            found[value] = point
    values = tuple(sorted(found))
    return PrimeValueSequence(
        poly=poly, bound=bound, values=values,
        witness_points=tuple(found[v] for v in values), exhaustive=True)
