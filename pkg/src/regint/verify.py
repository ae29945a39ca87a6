"""Named verification suites, runnable from the command line.

Each suite returns a :class:`SuiteResult` holding one line per claim
checked. Limits scale the desk-scale thresholds proportionally.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numba import njit

from . import arith, density, sieve, witness


@dataclass
class SuiteResult:
    name: str
    lines: list[tuple[bool, str]] = field(default_factory=list)
    seconds: float = 0.0

    def add(self, ok: bool, text: str) -> bool:
        self.lines.append((bool(ok), text))
        return bool(ok)

    @property
    def passed(self) -> int:
        return sum(ok for ok, _ in self.lines)

    @property
    def failed(self) -> int:
        return len(self.lines) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


@njit(cache=True)
def _brute_counts(limit):
    # counts a in [1, n] with a*a*x = a (mod n) for some x in [0, n)
    out = np.zeros(limit + 1, np.int64)
    for n in range(1, limit + 1):
        c = 0
        for a in range(1, n + 1):
            step = a * a % n
            target = a % n
            y = 0
            for _ in range(n):
                if y == target:
                    c += 1
                    break
                y += step
                if y >= n:
                    y -= n
        out[n] = c
    return out


def brute_regular_counts(limit: int) -> np.ndarray:
    """``out[n]`` = number of regular residues mod n, by trying every x."""
    return _brute_counts(limit)


# Exact counts for the scan of [1, 10**5], fixed by a verified first run.
PINNED_A_COUNT = 66122
PINNED_B_COUNT = 33877
PINNED_EQUAL_POINTS = [3]


def suite_oracle(limit: int = 3000) -> SuiteResult:
    res = SuiteResult("oracle")
    counts = brute_regular_counts(limit)
    bad = [n for n in range(1, limit + 1) if arith.v_of(arith.factorize(n)) != counts[n]]
    res.add(not bad, f"V(n) equals the brute-force regular count for all n <= {limit}"
            + (f"; mismatches at {bad[:10]}" if bad else ""))
    return res


def suite_identities(limit: int = 10**6) -> SuiteResult:
    res = SuiteResult("identities")
    checked, violations = sieve.check_identities(2, limit)
    res.add(not violations, f"identity suite over [2, {limit}]: {checked} integers, "
            f"{len(violations)} violations" + (f" (first: {violations[0]})" if violations else ""))
    return res


def suite_prop1(limit: int = 10**5, samples: int = 1000, seed: int = 0) -> SuiteResult:
    res = SuiteResult("prop1")
    r = sieve.scan(1, limit)
    need = limit // 10
    res.add(r.a_count >= need, f"|A ∩ [1, {limit}]| = {r.a_count} >= {need}")
    res.add(r.b_count >= need, f"|B ∩ [1, {limit}]| = {r.b_count} >= {need}")
    res.add(r.trichotomy_holds(), "A, B and equal points partition the interval")
    res.add(not r.violations, f"{len(r.violations)} identity violations")
    if limit == 10**5:
        res.add((r.a_count, r.b_count, r.equal_points)
                == (PINNED_A_COUNT, PINNED_B_COUNT, PINNED_EQUAL_POINTS),
                f"pinned counts A={PINNED_A_COUNT} B={PINNED_B_COUNT} equal={PINNED_EQUAL_POINTS}")
    rng = random.Random(seed)
    a_set, b_set = set(r.a_members), set(r.b_members)
    bad = []
    for n in rng.sample(range(1, limit + 1), min(samples, limit)):
        ratio = arith.v_ratio(n)
        if (ratio > 1) != (n in a_set) or (ratio < 1) != (n in b_set):
            bad.append(n)
    res.add(not bad, f"{min(samples, limit)} random memberships re-verified by direct evaluation"
            + (f"; mismatches {bad[:10]}" if bad else ""))
    return res


def suite_submult(limit: int = 200) -> SuiteResult:
    res = SuiteResult("submult")
    v = [0] + [arith.v_of(n) for n in range(1, limit + 1)]
    sub_bad, mult_bad = [], []
    for m in range(1, limit + 1):
        for n in range(1, limit + 1):
            vmn = arith.v_of(m * n)
            if vmn > m * v[n]:
                sub_bad.append((m, n))
            if math.gcd(m, n) == 1 and vmn != v[m] * v[n]:
                mult_bad.append((m, n))
    res.add(not sub_bad, f"V(mn) <= m V(n) for 1 <= m, n <= {limit}"
            + (f"; fails at {sub_bad[:5]}" if sub_bad else ""))
    res.add(not mult_bad, f"V(mn) = V(m) V(n) for coprime m, n <= {limit}"
            + (f"; fails at {mult_bad[:5]}" if mult_bad else ""))
    return res


def suite_prop3(limit: int = 10**6) -> SuiteResult:
    res = SuiteResult("prop3")
    r = sieve.scan(1, limit - 1, keep_lists=False)
    need = limit // 10
    n_max, d_max = r.max_diff
    n_min, d_min = r.min_diff
    res.add(d_max >= need, f"max V(n+1)-V(n) over n < {limit} is {d_max} at n={n_max} (>= {need})")
    res.add(d_min <= -need, f"min V(n+1)-V(n) over n < {limit} is {d_min} at n={n_min} (<= -{need})")
    res.add(arith.v_of(n_max + 1) - arith.v_of(n_max) == d_max
            and arith.v_of(n_min + 1) - arith.v_of(n_min) == d_min,
            "extrema re-verified by factorization")
    for direction in ("up", "down"):
        seq = []
        for p_min in (10, 10**2, 10**3, 10**4, 10**5):
            rep = witness.prop3_gap_witness(direction, p_min)
            seq.append(rep.auxiliary["gap"])
            res.add(rep.ok, f"prop3_{direction} witness p={rep.witness_prime} for p_min={p_min}, "
                    f"gap {rep.auxiliary['gap']}")
        res.add(all(a < b for a, b in zip(seq, seq[1:])), f"{direction} gaps strictly increase: {seq}")
    return res


PROP1_SETS = ([2, 3], [3, 5], [2, 3, 5])
LINNIK_XS = (3, 5, 7, 11, 13)


def suite_witnesses(max_steps: int = witness.DEFAULT_MAX_STEPS) -> SuiteResult:
    res = SuiteResult("witnesses")
    for primes in PROP1_SETS:
        for fn in (witness.prop1_ascending_witness, witness.prop1_descending_witness):
            t = time.perf_counter()
            rep = fn(primes, max_steps)
            dt = time.perf_counter() - t
            res.add(rep.ok and dt < 30, f"{rep.kind} {primes}: prime {rep.witness_prime}, "
                    f"{len(rep.checks)} checks pass ({dt:.3f}s)")
    for x in LINNIK_XS:
        for fn in (witness.linnik_witness_liminf, witness.linnik_witness_limsup):
            t = time.perf_counter()
            rep = fn(x, max_steps)
            dt = time.perf_counter() - t
            free = rep.check("least prime <= x dividing B (0 = none)").passed
            ok = rep.ok and free and dt < 30
            if rep.kind == "prop2_liminf":
                ok = ok and rep.check("V(q)/V(q-1) = (AB+1)/AB * A/V(A) * B/V(B)").passed
            res.add(ok, f"{rep.kind} x={x}: q={rep.witness_prime}, B={rep.auxiliary['B']}, "
                    f"k={rep.auxiliary['k']} ({dt:.3f}s)")
    return res


DENSITY_TARGETS = (1.1, 1.41421356, 2.0, 3.0, 10.0)
EXACT_HITS = (
    ("psi_over_v", 2.0, [2, 3]),
    ("psi_over_v", 1.5, [2]),
    ("psi_over_v", 1.2, [5]),
    ("v_over_phi", 2.0, [2]),
)


def density_runs(prime_limit: int = 10**6):
    return [density.greedy_subseries(k, d, prime_limit) for k in density.KINDS for d in DENSITY_TARGETS]


def suite_density(prime_limit: int = 10**6, tol: float = 1e-4) -> SuiteResult:
    res = SuiteResult("density")
    for r in density_runs(prime_limit):
        never_over = all(t <= math.log(r.delta) for t in r.trace)
        res.add(r.error <= tol and never_over,
                f"{r.kind} delta={r.delta}: {len(r.selected_primes)} primes, error {r.error:.3e}"
                f" <= {tol:g}, never overshoots")
    for kind, d, primes in EXACT_HITS:
        r = density.greedy_subseries(kind, d, prime_limit)
        res.add(r.selected_primes == primes and r.error == 0.0
                and r.exact_ratio == density.target_fraction(d),
                f"{kind} delta={d}: exact hit {r.selected_primes}, error {r.error}")
    return res


def core_ratio(kind: str, primes) -> Fraction:
    f = arith.Factorization.from_primes(primes)
    if kind == "psi_over_v":
        return Fraction(arith.psi_of(f), arith.v_of(f))
    return Fraction(arith.v_of(f), arith.phi_of(f))


def suite_consistency(prime_limit: int = 10**6) -> SuiteResult:
    res = SuiteResult("consistency")
    for r in density_runs(prime_limit) + [density.greedy_subseries(k, d, prime_limit)
                                          for k, d, _ in EXACT_HITS]:
        if len(r.selected_primes) > 15:
            continue
        ev = density.evaluate_ratio(r.kind, r.selected_primes)
        core = core_ratio(r.kind, r.selected_primes)
        res.add(ev.exact is not None and ev.exact == core == r.exact_ratio,
                f"{r.kind} delta={r.delta}: evaluate_ratio = core ratio = {core}")
    return res


SUITES = {
    "oracle": suite_oracle,
    "identities": suite_identities,
    "prop1": suite_prop1,
    "submult": suite_submult,
    "prop3": suite_prop3,
    "witnesses": suite_witnesses,
    "density": suite_density,
    "consistency": suite_consistency,
}


def run_suite(name: str, limit: int | None = None) -> SuiteResult:
    fn = SUITES[name]
    t = time.perf_counter()
    # the first parameter of every suite is its size knob
    res = fn() if limit is None else fn(limit)
    res.seconds = time.perf_counter() - t
    return res
