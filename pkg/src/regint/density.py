"""Greedy prime subseries pushing psi(m)/V(m) or V(m)/phi(m) towards a target.

For squarefree m = p1*...*pr both ratios are products over the primes:
psi/V = prod(1 + 1/p) and V/phi = prod(1 + 1/(p-1)). The terms
log(1 + u_p) decrease to 0 and their sum diverges, so taking each prime in
turn whenever it still fits under log(delta) converges to delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .arith import WORD, is_prime
from .sieve import spf_sieve

KINDS = ("psi_over_v", "v_over_phi")
DEFAULT_PRIME_LIMIT = 10**6
# float comparisons closer than this fall back to exact rationals when available
_TIE_EPS = 1e-12
# stop tracking the exact running product beyond this many numerator bits
_EXACT_BITS = 4096


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def term(kind: str, p: int) -> float:
    """u_p: 1/p for psi_over_v, 1/(p-1) for v_over_phi."""
    _check_kind(kind)
    return 1.0 / p if kind == "psi_over_v" else 1.0 / (p - 1)


def _factor(kind: str, p: int) -> Fraction:
    return Fraction(p + 1, p) if kind == "psi_over_v" else Fraction(p, p - 1)


def _within_width(q: Fraction | None) -> Fraction | None:
    if q is None or q.numerator >= WORD or q.denominator >= WORD:
        return None
    return q


class RatioValue(NamedTuple):
    exact: Fraction | None
    log_value: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def evaluate_ratio(kind: str, primes) -> RatioValue:
    """The product of (1 + u_p) over ``primes``, exactly and in log space.

    ``exact`` is the reduced product, or None when its numerator or
    denominator needs more than 64 bits.
    """
    _check_kind(kind)
    primes = list(primes)
    if any(b <= a for a, b in zip(primes, primes[1:])):
        raise ValueError("primes must be strictly increasing")
    if not all(is_prime(p) for p in primes):
        raise ValueError("every entry must be prime")
    exact = math.prod((_factor(kind, p) for p in primes), start=Fraction(1))
    return RatioValue(_within_width(exact), math.fsum(math.log1p(term(kind, p)) for p in primes))


@dataclass
class DensityApproximation:
    kind: str
    delta: float
    selected_primes: list[int]
    log_product: float
    achieved: float
    error: float
    prime_limit: int
    gap_bound: float | None
    limit_saturated: bool
    exact_ratio: Fraction | None = None
    # log_product after each selection, for auditing the never-overshoot rule
    trace: list[float] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "delta": self.delta,
            "selected_primes": [str(p) for p in self.selected_primes],
            "log_product": self.log_product,
            "achieved": self.achieved,
            "error": self.error,
            "gap_bound": self.gap_bound,
            "prime_limit": str(self.prime_limit),
            "limit_saturated": self.limit_saturated,
            "exact_ratio": None if self.exact_ratio is None else {
                "num": str(self.exact_ratio.numerator),
                "den": str(self.exact_ratio.denominator),
            },
        }


_prime_cache: dict[int, np.ndarray] = {}


def primes_upto(limit: int) -> np.ndarray:
    if limit not in _prime_cache:
        if limit < 2:
            return np.zeros(0, dtype=np.int64)
        spf = spf_sieve(limit)
        idx = np.arange(len(spf))
        _prime_cache.clear()
        _prime_cache[limit] = idx[(spf == idx) & (idx >= 2)].astype(np.int64)
    return _prime_cache[limit]


def target_fraction(delta: float) -> Fraction:
    """Rational reading of delta via its shortest decimal form (1.2 -> 6/5)."""
    return Fraction(repr(float(delta)))


def greedy_subseries(kind: str, delta: float, prime_limit: int = DEFAULT_PRIME_LIMIT) -> DensityApproximation:
    """Scan primes up to ``prime_limit`` in order, keeping p iff the product stays <= delta.

    A prime that fills the remaining gap exactly is kept. Near-ties are
    decided with exact rationals while the running product stays small.
    """
    _check_kind(kind)
    if not delta > 1 or not math.isfinite(delta):
        raise ValueError(f"delta must be a finite real > 1, got {delta}")
    if prime_limit < 2:
        raise ValueError(f"prime_limit must be >= 2, got {prime_limit}")

    primes = primes_upto(prime_limit)
    u = 1.0 / primes if kind == "psi_over_v" else 1.0 / (primes - 1)
    logs = np.log1p(u)
    neg_logs = -logs  # increasing, for searchsorted
    log_delta = math.log(delta)
    target = target_fraction(delta)

    selected: list[int] = []
    trace: list[float] = []
    total, comp = 0.0, 0.0  # Neumaier compensated sum
    exact: Fraction | None = Fraction(1)
    i, count = 0, len(primes)
    while i < count:
        gap = log_delta - (total + comp)
        # first remaining prime whose term could fit
        i += int(np.searchsorted(neg_logs[i:], -(gap + _TIE_EPS), side="left"))
        if i >= count:
            break
        p, a = int(primes[i]), float(logs[i])
        if a <= gap - _TIE_EPS:
            take = True
        elif exact is not None:
            take = exact * _factor(kind, p) <= target
        else:
            take = a <= gap
        if take:
            t = total + a
            comp += (total - t) + a if abs(total) >= abs(a) else (a - t) + total
            total = t
            selected.append(p)
            if exact is not None:
                exact *= _factor(kind, p)
                if exact.numerator.bit_length() > _EXACT_BITS:
                    exact = None
            trace.append(min(total + comp, log_delta) if exact is not None and exact <= target
                         else total + comp)
        i += 1

    log_product = total + comp
    if exact is not None and exact <= target:
        log_product = min(log_product, log_delta)
    if exact is not None and exact == target:
        achieved, error = float(delta), 0.0
    else:
        achieved = math.exp(log_product)
        error = abs(achieved - delta)

    last = selected[-1] if selected else 0
    skipped = primes[primes > last]
    if skipped.size:
        gap_bound = float(math.log1p(term(kind, int(skipped[-1]))))
        saturated = False
    else:
        gap_bound, saturated = None, True
    return DensityApproximation(
        kind=kind,
        delta=float(delta),
        selected_primes=selected,
        log_product=log_product,
        achieved=achieved,
        error=error,
        prime_limit=prime_limit,
        gap_bound=gap_bound,
        limit_saturated=saturated,
        exact_ratio=_within_width(exact),
        trace=trace,
    )
