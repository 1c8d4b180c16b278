"""Simultaneous prime points, greedy coprime products, the reversing
residue chain, and the small exhaustive oracles."""

import itertools
import math
import random

import pytest

from primeineq import (CounterexampleSequence, InputError, OutOfRangeError,
                       SearchBudgetError, TotativeWitness,
                       build_coprime_products, build_counterexample_sequence,
                       check_prime_lower_bound, enumerate_prime_values,
                       enumerate_simultaneous_points, find_totative_value,
                       max_coprime_subset_size, parse_poly,
                       verify_coprime_product_inequality,
                       verify_reverse_inequality)

TWIN = [parse_poly("x"), parse_poly("x+2")]


def test_points_twin_system(table):
    points = enumerate_simultaneous_points(TWIN, 20, table)
    assert [p.point for p in points] == [(3,), (5,), (11,), (17,)]
    assert [p.values for p in points] == [(3, 5), (5, 7), (11, 13), (17, 19)]
    assert [p.norm_sq for p in points] == [34, 74, 290, 650]


def test_points_single_poly_reduces_to_primes(table):
    points = enumerate_simultaneous_points([parse_poly("x")], 10, table)
    assert [p.values for p in points] == [(2,), (3,), (5,), (7,)]


def test_points_consecutive_integers(table):
    points = enumerate_simultaneous_points(
        [parse_poly("x"), parse_poly("x+1")], 50, table)
    assert [p.point for p in points] == [(2,)]
    assert points[0].values == (2, 3)


def test_points_are_norm_sorted(table):
    points = enumerate_simultaneous_points(
        [parse_poly("x+y"), parse_poly("x+2*y")], 60, table)
    norms = [p.norm_sq for p in points]
    assert norms == sorted(norms)
    for p in points:
        assert p.norm_sq == sum(v * v for v in p.values)
        assert all(v in table for v in p.values)


def test_points_max_norm_variant(table):
    default = enumerate_simultaneous_points(TWIN, 10 ** 4, table)
    by_max = enumerate_simultaneous_points(TWIN, 10 ** 4, table, norm="max")
    # the twin values grow together, so both rankings coincide here
    assert [p.point for p in by_max] == [p.point for p in default]
    with pytest.raises(InputError):
        enumerate_simultaneous_points(TWIN, 100, table, norm="euclidean")


def test_points_bound_validation(small_table):
    with pytest.raises(OutOfRangeError):
        enumerate_simultaneous_points(TWIN, 10 ** 5, small_table)


def test_greedy_products_twin_example(table):
    points = enumerate_simultaneous_points(TWIN, 20, table)
    seq = build_coprime_products(points, system=TWIN, bound=20)
    assert seq.products == (15, 143, 323)
    assert seq.chosen_points == ((3,), (11,), (17,))
    # x=5 was skipped: gcd(5*7, 15) = 5


def test_greedy_products_single_system(table):
    points = enumerate_simultaneous_points([parse_poly("x")], 10, table)
    seq = build_coprime_products(points)
    assert seq.products == (2, 3, 5, 7)
    assert seq.system is None


def test_greedy_matches_pairwise_rule(table):
    points = enumerate_simultaneous_points(TWIN, 10 ** 4, table)
    seq = build_coprime_products(points, system=TWIN, bound=10 ** 4)
    assert len(seq.products) == 204
    # independent re-execution of the selection rule, pairwise this time
    kept = []
    for p in points:
        candidate = p.values[0] * p.values[1]
        if all(math.gcd(candidate, c) == 1 for c in kept):
            kept.append(candidate)
    assert list(seq.products) == kept
    for a, b in itertools.combinations(seq.products, 2):
        assert math.gcd(a, b) == 1


def test_coprime_product_report(table):
    points = enumerate_simultaneous_points(TWIN, 10 ** 4, table)
    seq = build_coprime_products(points, system=TWIN, bound=10 ** 4)
    report = verify_coprime_product_inequality(seq, n_min=1)
    assert report.family == "coprime-products(x,x+2)"
    assert report.violations == (1,)  # 15 < 143
    assert report.empirical_threshold == 1
    assert report.bound == 10 ** 4
    # 15 * 143 = 2145 > 323: fine from n = 2 on
    report = verify_coprime_product_inequality(seq, n_min=2)
    assert report.violations == ()


def test_coprime_product_report_too_short(table):
    points = enumerate_simultaneous_points(TWIN, 20, table)
    seq = build_coprime_products(points, system=TWIN, bound=20)
    with pytest.raises(InputError):
        verify_coprime_product_inequality(seq, n_min=2)  # needs 4 products


def test_coprime_products_serialization(table):
    points = enumerate_simultaneous_points(TWIN, 20, table)
    seq = build_coprime_products(points, system=TWIN, bound=20)
    doc = seq.to_json_dict()
    assert doc["products"] == ["15", "143", "323"]
    assert doc["system"] == ["x", "x+2"]
    assert doc["chosen_points"] == [[3], [11], [17]]


def _dumb_max_coprime(n):
    best = 0
    elems = list(range(2, n + 1))
    for mask in range(1 << len(elems)):
        chosen = [elems[i] for i in range(len(elems)) if mask >> i & 1]
        if len(chosen) <= best:
            continue
        if all(math.gcd(a, b) == 1
               for a, b in itertools.combinations(chosen, 2)):
            best = len(chosen)
    return best


def test_max_coprime_subset_known_values():
    assert max_coprime_subset_size(2) == 1
    assert max_coprime_subset_size(10) == 4   # e.g. {5, 7, 8, 9}
    assert max_coprime_subset_size(30) == 10


def test_max_coprime_subset_against_dumb_oracle():
    for n in range(2, 17):
        assert max_coprime_subset_size(n) == _dumb_max_coprime(n), n


def test_max_coprime_subset_range():
    with pytest.raises(OutOfRangeError):
        max_coprime_subset_size(1)
    with pytest.raises(OutOfRangeError):
        max_coprime_subset_size(61)


def test_prime_lower_bound_examples(table):
    assert check_prime_lower_bound([2, 3, 5, 7], table) == (True, None)
    assert check_prime_lower_bound([15, 143, 323], table) == (True, None)
    squares = [p * p for p in [2, 3, 5, 7, 11, 13]]
    assert check_prime_lower_bound(squares, table) == (True, None)


def test_prime_lower_bound_random_coprime_sequences(table):
    rng = random.Random(20260823)
    for _ in range(50):
        seq = []
        accumulated = 1
        value = 1
        while len(seq) < 12:
            value += rng.randrange(1, 50)
            if value > 10 ** 6:
                break
            if math.gcd(value, accumulated) == 1:
                seq.append(value)
                accumulated *= value
        ok, index = check_prime_lower_bound(seq, table)
        assert ok and index is None


def test_prime_lower_bound_validation(table, small_table):
    with pytest.raises(InputError) as exc:
        check_prime_lower_bound([2, 4], table)
    assert "2" in str(exc.value) and "4" in str(exc.value)
    with pytest.raises(InputError):
        check_prime_lower_bound([3, 2], table)
    with pytest.raises(InputError):
        check_prime_lower_bound([1, 2], table)
    with pytest.raises(InputError):
        check_prime_lower_bound([], table)
    # the first 1300 odd primes need more than pi(10^4) = 1229 table entries
    too_long = [small_table.nth_prime(i) for i in range(1, 1230)]
    with pytest.raises(OutOfRangeError):
        check_prime_lower_bound(too_long + [10007], small_table)


def test_totative_found(table):
    witness = find_totative_value(parse_poly("6*x+1"), 10, table)
    assert witness == TotativeWitness(point=(1,), value=7)


def test_totative_not_found_is_definitive(table):
    assert find_totative_value(parse_poly("6*x+1"), 7, table) is None
    assert find_totative_value(parse_poly("x"), 2, table) is None
    assert find_totative_value(parse_poly("x"), 1, table) is None


def test_totative_validation(small_table):
    with pytest.raises(InputError):
        find_totative_value(parse_poly("x"), 0, small_table)
    with pytest.raises(OutOfRangeError):
        find_totative_value(parse_poly("x"), 10 ** 5, small_table)


def test_totative_contradiction_bound(table):
    """When no prime value <= m is coprime to m, m must be at least the
    product of the values that blocked it — mirroring the argument that a
    finite totative-free range forces m to be impossibly large."""
    poly = parse_poly("6*x+1")
    seq = enumerate_prime_values(poly, 10 ** 4, table)
    values = list(seq.values)
    sampled = random.Random(7).sample(range(7, 10 ** 4), 60)
    for m in range(7, 10 ** 4 + 1):
        prefix = [v for v in values if v <= m]
        found = next((v for v in prefix if math.gcd(v, m) == 1), None)
        if found is None:
            assert m >= math.prod(prefix)
        if m in sampled:
            witness = find_totative_value(poly, m, table)
            if found is None:
                assert witness is None
            else:
                assert witness is not None and witness.value == found


def test_counterexample_known_terms():
    seq = build_counterexample_sequence(7)
    assert seq.terms == (2, 3, 7, 43, 3613, 65250781, 5109197227031017)
    assert seq.probabilistic_primality is False
    assert len(seq) == 7


def test_counterexample_congruence_structure():
    seq = build_counterexample_sequence(6)
    for n in range(3, len(seq.terms) + 1):
        modulus = math.prod(seq.terms[:n - 1])
        assert seq.terms[n - 1] % modulus == 1
        assert seq.terms[n - 1] > modulus


def test_counterexample_probabilistic_flag_turns_on():
    # term 8 is found modulo a ~2^101 product, so candidates leave the
    # deterministic range and the flag must report it
    seq = build_counterexample_sequence(8)
    assert seq.probabilistic_primality is True
    assert verify_reverse_inequality(seq).probabilistic_primality is True


def test_counterexample_budget_exhaustion_keeps_partial():
    with pytest.raises(SearchBudgetError) as exc:
        build_counterexample_sequence(5, max_search=1)
    partial = exc.value.partial
    assert isinstance(partial, CounterexampleSequence)
    assert partial.terms == (2, 3, 7, 43)  # 1807 = 13 * 139 blocks k=1


def test_counterexample_small_counts():
    assert build_counterexample_sequence(1).terms == (2,)
    assert build_counterexample_sequence(2).terms == (2, 3)
    with pytest.raises(InputError):
        build_counterexample_sequence(0)
    with pytest.raises(InputError):
        build_counterexample_sequence(3, max_search=0)


def test_reverse_inequality_reports():
    seq = build_counterexample_sequence(6)
    report = verify_reverse_inequality(seq)
    assert report.family == "counterexample-sequence"
    assert report.violations == ()
    assert report.n_range == (1, 5)
    assert report.exhaustive
    assert report.sequence_prefix[:4] == ("2", "3", "7", "43")
    with pytest.raises(InputError):
        verify_reverse_inequality(build_counterexample_sequence(1))
    short = verify_reverse_inequality(build_counterexample_sequence(2))
    assert short.n_range == (1, 1) and short.violations == ()


def test_counterexample_serialization():
    seq = build_counterexample_sequence(5)
    doc = seq.to_json_dict()
    assert doc["terms"] == ["2", "3", "7", "43", "3613"]
    assert doc["probabilistic_primality"] is False
