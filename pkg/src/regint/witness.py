"""Prime witnesses for the oscillation of V(n+1)/V(n) and V(n+1) - V(n).

Each search walks an arithmetic progression for its least prime member and
then records every side condition as an exact :class:`Check`, so a report
can be audited without trusting the search.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import WORD, factorize, is_prime, v_of

DEFAULT_MAX_STEPS = 10**6

KINDS = (
    "prop1_ascending",
    "prop1_descending",
    "prop2_liminf",
    "prop2_limsup",
    "prop3_up",
    "prop3_down",
)

_RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
    "!=": operator.ne,
}


class SearchExhausted(LookupError):
    """No prime found within the step budget. Says nothing about existence."""

    def __init__(self, residue, modulus, steps):
        super().__init__(
            f"no prime = {residue} (mod {modulus}) among the first {steps} progression terms"
        )
        self.residue = residue
        self.modulus = modulus
        self.steps = steps


class WidthError(OverflowError):
    """The progression would leave the 64-bit working range."""


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return str(x)


@dataclass(frozen=True)
class Check:
    description: str
    lhs: object
    relation: str
    rhs: object

    @property
    def passed(self) -> bool:
        return bool(_RELATIONS[self.relation](self.lhs, self.rhs))

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "lhs": _fmt(self.lhs),
            "relation": self.relation,
            "rhs": _fmt(self.rhs),
            "pass": self.passed,
        }


@dataclass
class WitnessReport:
    kind: str
    witness_prime: int
    modulus: int
    residue: int
    steps_tried: int
    checks: list[Check] = field(default_factory=list)
    auxiliary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            self.witness_prime % self.modulus == self.residue % self.modulus
            and is_prime(self.witness_prime)
            and all(c.passed for c in self.checks)
        )

    def check(self, description: str) -> Check:
        for c in self.checks:
            if c.description == description:
                return c
        raise KeyError(description)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness_prime": str(self.witness_prime),
            "modulus": str(self.modulus),
            "residue": str(self.residue),
            "steps_tried": str(self.steps_tried),
            "auxiliary": {k: _fmt(v) for k, v in self.auxiliary.items()},
            "checks": [c.to_json() for c in self.checks],
        }


def _progression_prime(residue: int, modulus: int, max_steps: int,
                       start: int | None = None) -> tuple[int, int]:
    """Least prime in ``r, r + m, r + 2m, ...`` with ``r = residue mod m``.

    ``start`` (a member of the class) skips the terms below it. Returns the
    prime and the number of terms examined.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if modulus >= WORD:
        raise WidthError(f"modulus {modulus} does not fit in 64 bits")
    r = residue % modulus
    if math.gcd(r, modulus) != 1:
        raise ValueError(f"gcd({r}, {modulus}) != 1; the progression holds at most one prime")
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    term = r if start is None else start
    for step in range(1, max_steps + 1):
        if term >= WORD:
            raise WidthError(f"progression term {term} leaves the 64-bit range after {step - 1} steps")
        if is_prime(term):
            return term, step
        term += modulus
    raise SearchExhausted(r, modulus, max_steps)


def dirichlet_prime(residue: int, modulus: int, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """Least prime congruent to ``residue`` modulo ``modulus``.

    The search starts at the least non-negative representative of the
    residue class. Raises :class:`SearchExhausted` after ``max_steps`` terms.
    """
    return _progression_prime(residue, modulus, max_steps)[0]


def _check_prime_list(primes) -> list[int]:
    primes = [int(p) for p in primes]
    if not primes:
        raise ValueError("need at least one prime")
    if len(set(primes)) != len(primes):
        raise ValueError(f"primes must be distinct: {primes}")
    bad = [p for p in primes if not is_prime(p)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    return primes


def prop1_ascending_witness(primes, max_steps: int = DEFAULT_MAX_STEPS) -> WitnessReport:
    """Prime p = 1 + a*p1*...*pr, so that V(p-1) < V(p) and p - 1 lies in A."""
    primes = _check_prime_list(primes)
    prod = math.prod(primes)
    p, steps = _progression_prime(1, prod, max_steps)
    a = (p - 1) // prod
    vp, vprev = v_of(p), v_of(p - 1)
    rep = WitnessReport("prop1_ascending", p, prod, 1, steps)
    rep.auxiliary = {"primes": " ".join(map(str, primes)), "a": a, "product": prod}
    rep.checks = [
        Check("a >= 1", a, ">=", 1),
        Check("V(p) = p", vp, "=", p),
        Check("V(p-1) <= p-1", vprev, "<=", p - 1),
        Check("V(p-1)/V(p) < 1", Fraction(vprev, vp), "<", 1),
        Check("p-1 in A: V(p)/V(p-1) > 1", Fraction(vp, vprev), ">", 1),
    ]
    return rep


def prop1_descending_witness(primes, max_steps: int = DEFAULT_MAX_STEPS) -> WitnessReport:
    """Prime q = -1 + b*p1**2*p2*...*pr, so that V(q+1) < V(q) and q lies in B.

    ``p1`` is the first prime as listed.
    """
    primes = _check_prime_list(primes)
    p1, rest = primes[0], math.prod(primes[1:])
    modulus = p1 * p1 * rest
    q, steps = _progression_prime(-1, modulus, max_steps)
    b = (q + 1) // modulus
    bound = b * (p1 * p1 - p1 + 1) * rest
    vq, vnext = v_of(q), v_of(q + 1)
    rep = WitnessReport("prop1_descending", q, modulus, modulus - 1, steps)
    rep.auxiliary = {"primes": " ".join(map(str, primes)), "b": b, "bound": bound}
    rep.checks = [
        Check("b >= 1", b, ">=", 1),
        Check("V(q) = q", vq, "=", q),
        Check("V(q+1) <= b*V(p1^2*p2*...*pr)", vnext, "<=", b * v_of(modulus)),
        Check("V(q+1) <= b*(p1^2-p1+1)*p2*...*pr", vnext, "<=", bound),
        Check("(b*p1^2*p2*...*pr - 1)/(b*(p1^2-p1+1)*p2*...*pr) > 1", Fraction(q, bound), ">", 1),
        Check("q in B: V(q+1)/V(q) < 1", Fraction(vnext, vq), "<", 1),
    ]
    return rep


def _primes_upto(x: int) -> list[int]:
    return [p for p in range(2, x + 1) if is_prime(p)]


def _smallest_factor_upto(n: int, primes: list[int]) -> int:
    """Least listed prime dividing n, or 0 if none does."""
    for p in primes:
        if n % p == 0:
            return p
    return 0


def _modulus_for(a: int) -> int:
    sq = a * a
    if sq >= WORD:
        raise WidthError(f"A^2 = {sq} does not fit in 64 bits")
    return sq


def linnik_witness_liminf(x: int, max_steps: int = DEFAULT_MAX_STEPS) -> WitnessReport:
    """Least prime q = A + 1 (mod A^2) with A the primorial of x.

    Then q - 1 = A*B with B free of primes <= x, and
    V(q)/V(q-1) = (AB+1)/AB * A/V(A) * B/V(B) holds exactly.
    """
    if x < 3:
        raise ValueError(f"x must be >= 3, got {x}")
    small = _primes_upto(x)
    A = math.prod(small)
    mod = _modulus_for(A)
    q, steps = _progression_prime(A + 1, mod, max_steps)
    k = (q - A - 1) // mod
    B = (q - 1) // A
    vq, vprev = v_of(q), v_of(q - 1)
    vA, vB = v_of(A), v_of(B)
    ratio = Fraction(vq, vprev)
    f1, f2, f3 = Fraction(A * B + 1, A * B), Fraction(A, vA), Fraction(B, vB)

    rep = WitnessReport("prop2_liminf", q, mod, A + 1, steps)
    rep.auxiliary = {
        "x": x, "A": A, "B": B, "k": k,
        "V(q)/V(q-1)": ratio, "(AB+1)/AB": f1, "A/V(A)": f2, "B/V(B)": f3,
        "membership": "q-1 in A (stated as q in A under the shifted indexing)",
    }
    rep.checks = [
        Check("q - A - 1 = k*A^2", q - A - 1, "=", k * mod),
        Check("q - 1 = A*B", q - 1, "=", A * B),
        Check("B = 1 + k*A", B, "=", 1 + k * A),
        Check("gcd(A, B) = 1", math.gcd(A, B), "=", 1),
        Check("least prime <= x dividing B (0 = none)", _smallest_factor_upto(B, small), "=", 0),
        Check("V(q) = q", vq, "=", q),
        Check("V(q)/V(q-1) >= (AB+1)/AB", ratio, ">=", f1),
        Check("V(q)/V(q-1) > 1", ratio, ">", 1),
        Check("A/V(A) = 1", f2, "=", 1),
        Check("V(q)/V(q-1) = (AB+1)/AB * A/V(A) * B/V(B)", ratio, "=", f1 * f2 * f3),
    ]
    return rep


def linnik_witness_limsup(x: int, max_steps: int = DEFAULT_MAX_STEPS) -> WitnessReport:
    """Least prime q = A - 1 (mod A^2) with A = p_t * primorial(x), p_t the largest prime <= x.

    q + 1 = A*B is not squarefree, so V(q+1) <= q - 1 and q lies in B.
    """
    if x < 3:
        raise ValueError(f"x must be >= 3, got {x}")
    small = _primes_upto(x)
    pt = small[-1]
    A = pt * math.prod(small)
    mod = _modulus_for(A)
    q, steps = _progression_prime(A - 1, mod, max_steps)
    k = (q + 1 - A) // mod
    B = (q + 1) // A
    AB = A * B
    f_ab = factorize(AB)
    vq, vnext = v_of(q), v_of(f_ab)
    vA, vB = v_of(A), v_of(B)
    ratio = Fraction(vnext, vq)

    rep = WitnessReport("prop2_limsup", q, mod, A - 1, steps)
    rep.auxiliary = {
        "x": x, "A": A, "B": B, "k": k, "p_t": pt,
        "V(q+1)/V(q)": ratio, "V(A)/A": Fraction(vA, A), "V(B)/B": Fraction(vB, B),
        "AB/(AB-1)": Fraction(AB, AB - 1),
    }
    rep.checks = [
        Check("q + 1 - A = k*A^2", q + 1 - A, "=", k * mod),
        Check("q + 1 = A*B", q + 1, "=", AB),
        Check("B = 1 + k*A", B, "=", 1 + k * A),
        Check("gcd(A, B) = 1", math.gcd(A, B), "=", 1),
        Check("least prime <= x dividing B (0 = none)", _smallest_factor_upto(B, small), "=", 0),
        Check("AB squarefree", f_ab.squarefree, "=", False),
        Check("AB >= 8", AB, ">=", 8),
        Check("V(q) = q", vq, "=", q),
        Check("V(q+1) <= q-1", vnext, "<=", q - 1),
        Check("q in B: V(q+1)/V(q) < 1", ratio, "<", 1),
        Check("V(A)/A = (p_t^2-p_t+1)/p_t^2", Fraction(vA, A), "=", Fraction(pt * pt - pt + 1, pt * pt)),
        Check("V(q+1)/V(q) = V(A)/A * V(B)/B * AB/(AB-1)", ratio, "=",
              Fraction(vA, A) * Fraction(vB, B) * Fraction(AB, AB - 1)),
    ]
    return rep


def prop3_gap_witness(direction: str, p_min: int, max_steps: int = DEFAULT_MAX_STEPS) -> WitnessReport:
    """Least prime p >= p_min with p = 1 (mod 4) (up) or p = 3 (mod 4) (down).

    Uses V(n) <= 3n/4 for 4 | n: up gives V(p) - V(p-1) >= (p+3)/4,
    down gives V(p) - V(p+1) >= (p-3)/4.
    """
    if direction not in ("up", "down"):
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    if p_min < 5:
        raise ValueError(f"p_min must be >= 5, got {p_min}")
    residue = 1 if direction == "up" else 3
    start = p_min + (residue - p_min) % 4
    p, steps = _progression_prime(residue, 4, max_steps, start=start)
    vp = v_of(p)
    if direction == "up":
        nb, gap, bound = p - 1, vp - v_of(p - 1), Fraction(p + 3, 4)
    else:
        nb, gap, bound = p + 1, vp - v_of(p + 1), Fraction(p - 3, 4)
    vnb = v_of(nb)
    rep = WitnessReport(f"prop3_{direction}", p, 4, residue, steps)
    rep.auxiliary = {"p_min": p_min, "neighbour": nb, "gap": gap}
    rep.checks = [
        Check("p >= p_min", p, ">=", p_min),
        Check("neighbour mod 4", nb % 4, "=", 0),
        Check("V(p) = p", vp, "=", p),
        Check("V(neighbour) <= 3/4 * neighbour", Fraction(vnb), "<=", Fraction(3 * nb, 4)),
        Check("gap >= " + ("(p+3)/4" if direction == "up" else "(p-3)/4"), Fraction(gap), ">=", bound),
    ]
    return rep


def find_witness(kind: str, arg, max_steps: int = DEFAULT_MAX_STEPS) -> WitnessReport:
    """Dispatch on the report kind. ``arg`` is a prime list, x, or p_min."""
    if kind == "prop1_ascending":
        return prop1_ascending_witness(arg, max_steps)
    if kind == "prop1_descending":
        return prop1_descending_witness(arg, max_steps)
    if kind == "prop2_liminf":
        return linnik_witness_liminf(arg, max_steps)
    if kind == "prop2_limsup":
        return linnik_witness_limsup(arg, max_steps)
    if kind == "prop3_up":
        return prop3_gap_witness("up", arg, max_steps)
    if kind == "prop3_down":
        return prop3_gap_witness("down", arg, max_steps)
    raise ValueError(f"unknown witness kind {kind!r}; expected one of {', '.join(KINDS)}")
