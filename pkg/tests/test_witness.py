import json
import math
from fractions import Fraction

import pytest

from regint.arith import factorize, is_prime, reg_set, v_of
from regint.witness import (
    KINDS,
    SearchExhausted,
    WidthError,
    dirichlet_prime,
    find_witness,
    linnik_witness_liminf,
    linnik_witness_limsup,
    prop1_ascending_witness,
    prop1_descending_witness,
    prop3_gap_witness,
)

from conftest import trial_division_is_prime


def _least_prime_in_class(residue, modulus, start=None):
    term = residue % modulus if start is None else start
    while not trial_division_is_prime(term):
        term += modulus
    return term


@pytest.mark.parametrize("residue,modulus,expected", [(1, 6, 7), (1, 15, 31), (-1, 12, 11), (11, 12, 11)])
def test_dirichlet_examples(residue, modulus, expected):
    assert dirichlet_prime(residue, modulus, 100) == expected == _least_prime_in_class(residue, modulus)


def test_dirichlet_errors():
    with pytest.raises(ValueError):
        dirichlet_prime(2, 4, 100)
    with pytest.raises(ValueError):
        dirichlet_prime(1, 1, 100)
    with pytest.raises(SearchExhausted) as info:
        dirichlet_prime(1, 30030, 1)  # 1 is not prime
    assert info.value.steps == 1


@pytest.mark.parametrize(
    "primes,p,a",
    [([2, 3], 7, 1), ([3, 5], 31, 2), ([2, 3, 5], 31, 1)],
)
def test_prop1_ascending(primes, p, a):
    rep = prop1_ascending_witness(primes)
    assert rep.ok
    assert rep.witness_prime == p and rep.auxiliary["a"] == a
    assert v_of(p - 1) == p - 1  # squarefree p - 1 in these cases
    assert Fraction(v_of(p - 1), v_of(p)) == Fraction(p - 1, p) < 1


@pytest.mark.parametrize(
    "primes,q,b,modulus,v_next",
    [([2, 3], 11, 1, 12, 9), ([3, 5], 89, 2, 45, 70), ([2, 5], 19, 1, 20, 15)],
)
def test_prop1_descending(primes, q, b, modulus, v_next):
    rep = prop1_descending_witness(primes)
    assert rep.ok
    assert (rep.witness_prime, rep.auxiliary["b"], rep.modulus) == (q, b, modulus)
    assert v_of(q + 1) == v_next == len(reg_set(q + 1))
    assert Fraction(q, v_next) > 1


def test_prop1_rejects_bad_lists():
    for bad in ([], [2, 2], [2, 4]):
        with pytest.raises(ValueError):
            prop1_ascending_witness(bad)


@pytest.mark.parametrize("x,A,q,B,k", [(3, 6, 7, 1, 0), (5, 30, 31, 1, 0), (7, 210, 211, 1, 0)])
def test_liminf_examples(x, A, q, B, k):
    rep = linnik_witness_liminf(x)
    assert rep.ok
    assert (rep.auxiliary["A"], rep.witness_prime, rep.auxiliary["B"], rep.auxiliary["k"]) == (A, q, B, k)
    assert rep.modulus == A * A and q % (A * A) == (A + 1) % (A * A)


@pytest.mark.parametrize("x,A,q,v_next", [(3, 18, 17, 14), (5, 150, 149, 126)])
def test_limsup_examples(x, A, q, v_next):
    rep = linnik_witness_limsup(x)
    assert rep.ok
    assert (rep.auxiliary["A"], rep.witness_prime, rep.auxiliary["B"]) == (A, q, 1)
    assert v_of(q + 1) == v_next
    assert rep.check("V(q+1) <= q-1").passed


@pytest.mark.parametrize("x", [3, 5, 7, 11, 13])
def test_linnik_reports_reverify(x):
    lo = linnik_witness_liminf(x)
    q, A, B = lo.witness_prime, lo.auxiliary["A"], lo.auxiliary["B"]
    assert A == math.prod(p for p in range(2, x + 1) if trial_division_is_prime(p))
    assert is_prime(q) and q - 1 == A * B and math.gcd(A, B) == 1
    assert all(B % p for p in range(2, x + 1))
    lhs = Fraction(v_of(q), v_of(q - 1))
    rhs = Fraction(A * B + 1, A * B) * Fraction(A, v_of(A)) * Fraction(B, v_of(B))
    assert lhs == rhs > 1

    hi = linnik_witness_limsup(x)
    q, A, B = hi.witness_prime, hi.auxiliary["A"], hi.auxiliary["B"]
    pt = max(p for p in range(2, x + 1) if trial_division_is_prime(p))
    assert A % (pt * pt) == 0 and q + 1 == A * B
    assert not factorize(q + 1).squarefree
    assert v_of(q + 1) <= q - 1
    assert Fraction(v_of(A), A) == Fraction(pt * pt - pt + 1, pt * pt)


@pytest.mark.parametrize("x", [3, 5, 7, 11, 13])
def test_linnik_minimality(x):
    for rep in (linnik_witness_liminf(x), linnik_witness_limsup(x)):
        m, q = rep.modulus, rep.witness_prime
        assert _least_prime_in_class(rep.residue, m) == q


def test_linnik_width_refusal():
    with pytest.raises(WidthError):
        linnik_witness_liminf(47)
    with pytest.raises(WidthError):
        linnik_witness_limsup(29)
    with pytest.raises(ValueError):
        linnik_witness_liminf(2)


def test_linnik_exhaustion_is_not_a_claim():
    with pytest.raises(SearchExhausted) as info:
        linnik_witness_liminf(13, max_steps=1)  # 30031 = 59 * 509
    assert info.value.steps == 1


@pytest.mark.parametrize(
    "direction,p_min,p,neighbour_v,gap,bound",
    [("up", 100, 101, 63, 38, 26), ("down", 100, 103, 65, 38, 25), ("up", 5, 5, 3, 2, 2)],
)
def test_prop3_examples(direction, p_min, p, neighbour_v, gap, bound):
    rep = prop3_gap_witness(direction, p_min)
    assert rep.ok
    assert rep.witness_prime == p
    assert v_of(rep.auxiliary["neighbour"]) == neighbour_v
    assert rep.auxiliary["gap"] == gap >= bound


def test_prop3_minimal_and_growing():
    for direction, r in (("up", 1), ("down", 3)):
        gaps = []
        for p_min in (10, 10**2, 10**3, 10**4, 10**5):
            rep = prop3_gap_witness(direction, p_min)
            start = p_min + (r - p_min) % 4
            assert rep.witness_prime == _least_prime_in_class(r, 4, start)
            gaps.append(rep.auxiliary["gap"])
        assert all(a < b for a, b in zip(gaps, gaps[1:]))


def test_prop3_validation():
    with pytest.raises(ValueError):
        prop3_gap_witness("up", 4)
    with pytest.raises(ValueError):
        prop3_gap_witness("sideways", 10)


def test_report_json_shape():
    rep = find_witness("prop1_descending", [3, 5])
    text = json.dumps(rep.to_json())
    d = json.loads(text)
    assert set(d) == {"kind", "witness_prime", "modulus", "residue", "steps_tried", "auxiliary", "checks"}
    assert d["witness_prime"] == "89" and d["modulus"] == "45" and d["steps_tried"] == "2"
    for c in d["checks"]:
        assert set(c) == {"description", "lhs", "relation", "rhs", "pass"}
        assert c["pass"] is True
        assert isinstance(c["lhs"], str) and isinstance(c["rhs"], str)


def test_find_witness_dispatch():
    assert find_witness("prop2_liminf", 3).kind == "prop2_liminf"
    assert find_witness("prop3_down", 10).kind == "prop3_down"
    assert len(KINDS) == 6
    with pytest.raises(ValueError):
        find_witness("prop9", 3)
