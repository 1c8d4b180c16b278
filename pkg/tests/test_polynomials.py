"""Parsing, canonical printing, hypothesis screening, and bounded
enumeration of polynomial prime values."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primeineq import (EnumerabilityError, InputError, IntPoly,
                       OutOfRangeError, ParseError, ResourceLimitError,
                       check_hypotheses, enumerate_prime_values,
                       fixed_divisor, iter_value_points, parse_poly)


@st.composite
def int_polys(draw):
    arity = draw(st.integers(1, 3))
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        exps = tuple(draw(st.integers(0, 4)) for _ in range(arity))
        if any(exps):
            terms[exps] = draw(st.integers(1, 50))
    constant = draw(st.integers(-50, 50))
    if constant:
        terms[(0,) * arity] = constant
    if not any(any(e) for e in terms):
        terms[(1,) + (0,) * (arity - 1)] = draw(st.integers(1, 50))
    # printing keeps only the variables that occur, so a poly must use its
    # last axis to survive a text round trip with the same arity
    if not any(exps[arity - 1] for exps in terms):
        terms[(0,) * (arity - 1) + (1,)] = draw(st.integers(1, 50))
    return IntPoly(arity, terms)


def test_parse_examples():
    p = parse_poly("6*x+1")
    assert p.arity == 1
    assert p.terms == {(1,): 6, (0,): 1}
    assert str(p) == "6*x+1"
    assert str(parse_poly("x^2 + y^2 + 1")) == "x^2+y^2+1"
    assert str(parse_poly("x^3+2*y^3")) == "x^3+2*y^3"
    assert str(parse_poly("3*x-1")) == "3*x-1"


def test_canonical_print_graded_lex():
    # higher total degree first, then leftmost-heavy exponents
    assert str(parse_poly("1+y^2+x^2")) == "x^2+y^2+1"
    assert str(parse_poly("y^3+x^2*y+x")) == "x^2*y+y^3+x"
    assert str(parse_poly("x^2+y^4")) == "y^4+x^2"
    assert str(parse_poly("x*x*y+x")) == "x^2*y+x"


def test_parse_merges_terms_and_coefficients():
    assert parse_poly("x^2+x^2+1") == parse_poly("2*x^2+1")
    assert parse_poly("2*3*x+1*1") == parse_poly("6*x+1")
    assert parse_poly("-1+3*x") == parse_poly("3*x-1")
    assert parse_poly("y+x") == parse_poly("x+y")
    assert hash(parse_poly("6*x+1")) == hash(parse_poly("1+6*x"))


def test_indexed_variables_alias_letters():
    assert parse_poly("x1+1") == parse_poly("x+1")
    assert parse_poly("x1^2+x2^2+1") == parse_poly("x^2+y^2+1")
    assert parse_poly("x3+x2+x1") == parse_poly("x+y+z")
    assert parse_poly("x4+x").arity == 4


@given(int_polys())
@settings(max_examples=150)
def test_print_then_parse_round_trips(poly):
    assert parse_poly(str(poly)) == poly


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_poly("6*x+")
    assert exc.value.position == 4
    with pytest.raises(ParseError) as exc:
        parse_poly("2x")
    assert exc.value.position == 1


@pytest.mark.parametrize("text", [
    "", "5", "x+", "+", "x?1", "2x", "x y", "x^-2", "x^", "x^y",
    "2^3*x", "x**2", "*x", "x*", "x^2-y^2", "0*x+1",
])
def test_parse_rejections(text):
    with pytest.raises(InputError):
        parse_poly(text)


def test_enumerability_rejection_names_the_term():
    with pytest.raises(EnumerabilityError) as exc:
        parse_poly("x^2-y^2")
    assert "y^2" in str(exc.value)
    with pytest.raises(EnumerabilityError):
        IntPoly(1, {(1,): -3, (0,): 5})
    # negative constant stays legal
    parse_poly("3*x-1")
    IntPoly(2, {(1, 0): 1, (0, 1): 1, (0, 0): -7})


def test_constructor_validation():
    with pytest.raises(InputError):
        IntPoly(0, {})
    with pytest.raises(InputError):
        IntPoly(1, {(0,): 5})  # constant only
    with pytest.raises(InputError):
        IntPoly(2, {(1,): 1})  # exponent tuple of wrong length
    with pytest.raises(InputError):
        IntPoly(1, {(-1,): 1})
    with pytest.raises(InputError):
        IntPoly(1, {})


def test_eval_direct():
    p = parse_poly("x^2+y^2+1")
    assert p.eval((1, 1)) == 3
    assert p.eval((2, 3)) == 14
    assert parse_poly("3*x-1").eval((4,)) == 11
    assert parse_poly("x^3+2*y^3").eval((1, 1)) == 3


@given(int_polys(), st.data())
@settings(max_examples=150)
def test_eval_matches_term_expansion(poly, data):
    point = tuple(data.draw(st.integers(1, 9)) for _ in range(poly.arity))
    expected = sum(c * math.prod(v ** e for v, e in zip(point, exps))
                   for exps, c in poly.terms.items())
    assert poly.eval(point) == expected


def test_eval_validation():
    p = parse_poly("x+y")
    with pytest.raises(InputError):
        p.eval((1,))
    with pytest.raises(InputError):
        p.eval((0, 1))
    with pytest.raises(InputError):
        p.eval((1, -2))


def test_fixed_divisor_known_values():
    assert fixed_divisor(parse_poly("x^2+x+2")) == 2
    assert fixed_divisor(parse_poly("x^2+x")) == 2
    assert fixed_divisor(parse_poly("x^3+3*x^2+2*x")) == 6  # x(x+1)(x+2)
    assert fixed_divisor(parse_poly("6*x+1")) == 1
    assert fixed_divisor(parse_poly("3*x+3")) == 3
    assert fixed_divisor(parse_poly("x*y")) == 1
    assert fixed_divisor(parse_poly("x*y+x+y+1")) == 1  # (x+1)(y+1)


@given(int_polys())
@settings(max_examples=60)
def test_fixed_divisor_divides_sampled_values(poly):
    d = fixed_divisor(poly)
    assert d >= 1
    for point in itertools.islice(
            itertools.product(range(1, 5), repeat=poly.arity), 40):
        assert poly.eval(point) % d == 0


def test_check_hypotheses_linear_families():
    for text in ("6*x+1", "6*x-1", "3*x+1", "3*x-1", "4*x+1", "4*x-1"):
        report = check_hypotheses(parse_poly(text))
        assert report.positive_leading
        assert report.fixed_divisor == 1
        assert report.irreducibility == "irreducible"
        assert report.admissible


def test_check_hypotheses_screens():
    assert not check_hypotheses(parse_poly("x^2+x+2")).admissible
    assert check_hypotheses(parse_poly("x^2+x+2")).fixed_divisor == 2
    assert check_hypotheses(parse_poly("x^2+3*x+2")).irreducibility == "reducible"
    assert check_hypotheses(parse_poly("x^2+1")).irreducibility == "irreducible"
    assert check_hypotheses(parse_poly("x^3+x^2+x+1")).irreducibility == "reducible"
    assert check_hypotheses(parse_poly("x^3+2")).irreducibility == "irreducible"
    # degree >= 4 is screened, not decided
    report = check_hypotheses(parse_poly("x^4+1"))
    assert report.irreducibility == "unknown"
    assert report.admissible  # passes every decidable screen
    with pytest.raises(InputError):
        check_hypotheses(parse_poly("x+y"))


def test_enumerate_known_univariate(table):
    seq = enumerate_prime_values(parse_poly("3*x-1"), 12, table)
    assert seq.values == (2, 5, 11)
    assert seq.witness_points == ((1,), (2,), (4,))
    assert seq.exhaustive
    assert len(seq) == 3


def test_enumerate_known_multivariate(table):
    seq = enumerate_prime_values(parse_poly("x^2+y^2+1"), 20, table)
    assert seq.values == (3, 11, 19)
    assert seq.witness_points == ((1, 1), (1, 3), (3, 3))
    seq = enumerate_prime_values(parse_poly("x^2+y^4"), 40, table)
    assert seq.values == (2, 5, 17, 37)


def test_enumerate_matches_congruence_filter(small_table):
    primes = list(small_table.primes)
    for b in range(1, 11):
        for a in range(-5, 6):
            if math.gcd(a, b) != 1:
                continue
            poly = IntPoly(1, {(1,): b, (0,): a})
            seq = enumerate_prime_values(poly, 2000, small_table)
            expected = tuple(p for p in primes
                             if p <= 2000 and p % b == a % b and p >= a + b)
            assert seq.values == expected, (a, b)


def test_enumerate_witnesses_are_lex_least(table):
    poly = parse_poly("x^2+y^2+1")
    seq = enumerate_prime_values(poly, 200, table)
    best = {}
    for x in range(1, 15):
        for y in range(1, 15):
            v = poly.eval((x, y))
            if v <= 200 and v in table:
                best.setdefault(v, (x, y))  # scan is already lex ordered
    for value, point in zip(seq.values, seq.witness_points):
        assert best[value] == point


def test_enumerate_bound_above_table_limit(small_table):
    with pytest.raises(OutOfRangeError):
        enumerate_prime_values(parse_poly("6*x+1"), 10 ** 5, small_table)


def test_enumerate_point_budget(table):
    with pytest.raises(ResourceLimitError):
        enumerate_prime_values(parse_poly("x+y+z"), 10 ** 6, table,
                               point_budget=1000)


def test_iter_value_points_box_is_complete():
    polys = [parse_poly("x^2+y^2+1")]
    got = {point for point, _ in iter_value_points(polys, 60)}
    expected = {(x, y) for x in range(1, 9) for y in range(1, 9)
                if x * x + y * y + 1 <= 60}
    assert got == expected


def test_iter_value_points_lex_order_and_values(table):
    pts = list(iter_value_points(
        [parse_poly("6*x-1"), parse_poly("6*x+1")], 101))
    assert pts[0] == ((1,), (5, 7))
    assert pts[-1] == ((16,), (95, 97))
    assert [p for p, _ in pts] == sorted(p for p, _ in pts)


def test_iter_value_points_arity_mismatch():
    with pytest.raises(InputError):
        list(iter_value_points([parse_poly("x+1"), parse_poly("x+y")], 10))
    with pytest.raises(InputError):
        list(iter_value_points([], 10))


def test_empty_enumeration_when_bound_too_small(table):
    seq = enumerate_prime_values(parse_poly("6*x+1"), 5, table)
    assert seq.values == ()
    assert seq.exhaustive
