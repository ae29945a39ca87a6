import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from regint.arith import Factorization, is_prime, phi_of, psi_of, v_of
from regint.density import (
    KINDS,
    evaluate_ratio,
    greedy_subseries,
    primes_upto,
    target_fraction,
    term,
)


def test_terms():
    assert term("psi_over_v", 2) == 0.5
    assert term("v_over_phi", 2) == 1.0
    assert term("v_over_phi", 5) == 0.25
    with pytest.raises(ValueError):
        term("sigma", 3)


@pytest.mark.parametrize(
    "kind,delta,limit,primes",
    [
        ("psi_over_v", 2.0, 100, [2, 3]),
        ("psi_over_v", 1.2, 100, [5]),
        ("v_over_phi", 2.0, 100, [2]),
    ],
)
def test_exact_hits(kind, delta, limit, primes):
    r = greedy_subseries(kind, delta, limit)
    assert r.selected_primes == primes
    assert r.error == 0.0
    assert r.exact_ratio == target_fraction(delta)
    assert r.log_product <= math.log(delta)


def test_psi_over_v_two_is_psi6_over_v6():
    assert Fraction(psi_of(6), v_of(6)) == 2


def test_near_identity_target():
    r = greedy_subseries("psi_over_v", 1.0 + 1e-9, 10)
    assert len(r.selected_primes) <= 1
    assert r.log_product <= math.log(1.0 + 1e-9)


def test_rejects_bad_targets():
    for d in (1.0, 0.5, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            greedy_subseries("psi_over_v", d, 100)
    with pytest.raises(ValueError):
        greedy_subseries("psi_over_v", 2.0, 1)


def test_limit_saturated():
    r = greedy_subseries("psi_over_v", 100.0, 10)
    assert r.selected_primes == [2, 3, 5, 7]
    assert r.limit_saturated and r.gap_bound is None


@pytest.mark.parametrize(
    "kind,primes,expected",
    [("psi_over_v", [], Fraction(1)), ("psi_over_v", [2, 3], Fraction(2)), ("v_over_phi", [3, 5], Fraction(15, 8))],
)
def test_evaluate_ratio_examples(kind, primes, expected):
    r = evaluate_ratio(kind, primes)
    assert r.exact == expected
    assert r.value == pytest.approx(float(expected), rel=1e-12)


def test_evaluate_ratio_cross_checks_core():
    m = Factorization.from_primes([2, 3])
    assert Fraction(psi_of(m), v_of(m)) == evaluate_ratio("psi_over_v", [2, 3]).exact
    m = Factorization.from_primes([3, 5])
    assert Fraction(v_of(m), phi_of(m)) == evaluate_ratio("v_over_phi", [3, 5]).exact == Fraction(15, 8)


def test_evaluate_ratio_width_and_validation():
    big = [int(p) for p in primes_upto(1000)[-20:]]
    r = evaluate_ratio("psi_over_v", big)
    assert r.exact is None
    assert r.log_value == pytest.approx(sum(math.log1p(1 / p) for p in big), rel=1e-12)
    with pytest.raises(ValueError):
        evaluate_ratio("psi_over_v", [3, 2])
    with pytest.raises(ValueError):
        evaluate_ratio("psi_over_v", [2, 4])


def _check_invariants(r):
    log_delta = math.log(r.delta)
    assert all(t <= log_delta for t in r.trace)
    assert r.log_product <= log_delta
    assert r.selected_primes == sorted(set(r.selected_primes))
    assert all(is_prime(p) for p in r.selected_primes)
    if r.exact_ratio is not None:
        if r.kind == "psi_over_v":
            expect = Fraction(math.prod(p + 1 for p in r.selected_primes), math.prod(r.selected_primes))
        else:
            expect = Fraction(math.prod(r.selected_primes), math.prod(p - 1 for p in r.selected_primes))
        assert r.exact_ratio == expect == evaluate_ratio(r.kind, r.selected_primes).exact
    if not r.limit_saturated:
        primes = primes_upto(r.prime_limit)
        last = r.selected_primes[-1] if r.selected_primes else 0
        skipped = int(primes[primes > last][-1])
        assert r.gap_bound == pytest.approx(math.log1p(term(r.kind, skipped)), rel=1e-15)
        assert log_delta - r.log_product <= r.gap_bound + 1e-15
        assert r.error <= r.achieved * math.expm1(r.gap_bound) + 1e-12


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(KINDS),
    st.floats(min_value=1.0001, max_value=12.0),
    st.sampled_from([50, 1000, 30000]),
)
def test_greedy_invariants(kind, delta, limit):
    _check_invariants(greedy_subseries(kind, delta, limit))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(KINDS), st.floats(min_value=1.001, max_value=8.0))
def test_monotone_refinement(kind, delta):
    errors = [greedy_subseries(kind, delta, lim).error for lim in (100, 1000, 10**4, 10**5)]
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_greedy_matches_naive_scan():
    # plain prime-by-prime loop with exact rationals as an independent route
    primes = [p for p in range(2, 400) if is_prime(p)]
    for kind in KINDS:
        for delta in (1.05, 1.3, 1.7, 2.5, 4.0):
            target, prod, chosen = target_fraction(delta), Fraction(1), []
            for p in primes:
                f = Fraction(p + 1, p) if kind == "psi_over_v" else Fraction(p, p - 1)
                if prod * f <= target:
                    prod *= f
                    chosen.append(p)
            assert greedy_subseries(kind, delta, 399).selected_primes == chosen, (kind, delta)


def test_density_random_targets():
    rng = random.Random(20240601)
    deltas = [rng.uniform(1.01, 10) for _ in range(100)]
    for kind in KINDS:
        for d in deltas:
            r = greedy_subseries(kind, d, 10**6)
            assert r.error <= 1e-4, (kind, d, r.error)
            assert all(t <= math.log(d) for t in r.trace)


def test_json_shape():
    d = greedy_subseries("v_over_phi", 3.0, 100).to_json()
    assert d["selected_primes"] == ["2", "3"]
    assert d["exact_ratio"] == {"num": "3", "den": "1"}
    assert d["prime_limit"] == "100" and d["limit_saturated"] is False
