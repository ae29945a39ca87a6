"""Batch evaluation of V, phi, psi and sigma over intervals.

A smallest-prime-factor table is built once; each n is then factored by
walking its SPF chain. The walk is vectorised over blocks of consecutive
integers so that ranges of 10**8 run in bounded memory.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .arith import ArithProfile

DEFAULT_SIEVE_CAP = 10**8
DEFAULT_LIST_THRESHOLD = 10**6
BLOCK = 1 << 18

CSV_HEADER = ("n", "V", "phi", "psi", "sigma", "squarefree")


def spf_sieve(limit: int, cap: int = DEFAULT_SIEVE_CAP) -> np.ndarray:
    """Smallest-prime-factor table ``t`` with ``t[n]`` the least prime dividing n.

    Entries 0 and 1 are 0. The table is uint32 (limit < 2**32) and read-only.
    """
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > cap:
        raise ValueError(f"sieve limit {limit} exceeds the cap {cap}")
    if limit >= 1 << 32:
        raise ValueError("sieve limit must be below 2**32")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p]:
            continue
        spf[p] = p
        tail = spf[p * p :: p]
        tail[tail == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    spf.flags.writeable = False
    return spf


class ProfileBlock(NamedTuple):
    """Column arrays for a run of consecutive integers."""

    n: np.ndarray
    v: np.ndarray
    phi: np.ndarray
    psi: np.ndarray
    sigma: np.ndarray
    squarefree: np.ndarray


def profile_block(lo: int, hi: int, spf: np.ndarray) -> ProfileBlock:
    """Profiles of every n in ``[lo, hi]`` as int64 columns."""
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    if hi >= len(spf):
        raise ValueError(f"hi={hi} is beyond the sieve limit {len(spf) - 1}")
    n = np.arange(lo, hi + 1, dtype=np.int64)
    size = len(n)
    v = np.ones(size, dtype=np.int64)
    phi = np.ones(size, dtype=np.int64)
    psi = np.ones(size, dtype=np.int64)
    sigma = np.ones(size, dtype=np.int64)
    sqf = np.ones(size, dtype=bool)

    rem = n.copy()
    idx = np.flatnonzero(rem > 1)
    while idx.size:
        r = rem[idx]
        p = spf[r].astype(np.int64)
        pk = p.copy()
        r //= p
        more = np.flatnonzero(spf[r] == p)
        while more.size:
            r[more] //= p[more]
            pk[more] *= p[more]
            more = more[spf[r[more]] == p[more]]
        lower = pk // p
        v[idx] *= pk - lower + 1
        phi[idx] *= pk - lower
        psi[idx] *= lower * (p + 1)
        sigma[idx] *= (pk * p - 1) // (p - 1)
        sqf[idx] &= pk == p
        rem[idx] = r
        idx = idx[r > 1]
    return ProfileBlock(n, v, phi, psi, sigma, sqf)


def iter_blocks(lo: int, hi: int, spf: np.ndarray, block: int = BLOCK) -> Iterator[ProfileBlock]:
    for start in range(lo, hi + 1, block):
        yield profile_block(start, min(start + block - 1, hi), spf)


def _sieve_for(hi: int, spf: np.ndarray | None, cap: int) -> np.ndarray:
    if spf is not None and len(spf) > hi:
        return spf
    return spf_sieve(max(hi, 2), cap=cap)


def batch_profiles(
    lo: int, hi: int, spf: np.ndarray | None = None, cap: int = DEFAULT_SIEVE_CAP
) -> Iterator[ArithProfile]:
    """Yield one :class:`ArithProfile` per n in ``[lo, hi]``, in order."""
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    spf = _sieve_for(hi, spf, cap)
    for b in iter_blocks(lo, hi, spf):
        for row in zip(*(col.tolist() for col in b)):
            yield ArithProfile(*row)


def write_csv(profiles, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in profiles:
        writer.writerow(p.row())


def block_violations(b: ProfileBlock) -> list[str]:
    """Identity failures in a block; an empty list means every check held."""
    out = []
    n, v = b.n, b.v
    big = n > 1

    def report(mask, what):
        for k in np.flatnonzero(mask)[:20].tolist():
            out.append(f"n={int(n[k])}: {what}")

    report(big & ~(b.phi < v), "phi(n) < V(n) fails")
    report(~(v <= n), "V(n) <= n fails")
    report(~(n <= b.psi), "n <= psi(n) fails")
    report(~(n <= b.sigma), "n <= sigma(n) fails")
    report((v == n) != b.squarefree, "V(n) = n iff squarefree fails")
    report((n % 4 == 0) & ~(4 * v <= 3 * n), "V(n) <= 3n/4 for 4 | n fails")
    report(~b.squarefree & (n >= 8) & ~(v <= n - 2), "V(n) <= n - 2 for non-squarefree n >= 8 fails")
    return out


def check_identities(lo: int, hi: int, spf: np.ndarray | None = None,
                     cap: int = DEFAULT_SIEVE_CAP) -> tuple[int, list[str]]:
    """Run the identity suite over ``[lo, hi]``; returns (count checked, violations)."""
    spf = _sieve_for(hi, spf, cap)
    violations: list[str] = []
    for b in iter_blocks(lo, hi, spf):
        violations += block_violations(b)
    return hi - lo + 1, violations


@dataclass
class RangeScanResult:
    """Classification of n in ``[lo, hi]`` by the sign of V(n+1) - V(n)."""

    lo: int
    hi: int
    a_count: int = 0
    b_count: int = 0
    a_members: list[int] | None = None
    b_members: list[int] | None = None
    equal_points: list[int] = field(default_factory=list)
    max_diff: tuple[int, int] | None = None
    min_diff: tuple[int, int] | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def trichotomy_holds(self) -> bool:
        return self.a_count + self.b_count + len(self.equal_points) == self.size

    def to_json(self) -> dict:
        def ints(xs):
            return None if xs is None else [str(x) for x in xs]

        def pair(d):
            return None if d is None else {"n": str(d[0]), "diff": str(d[1])}

        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "a_count": str(self.a_count),
            "b_count": str(self.b_count),
            "equal_count": str(len(self.equal_points)),
            "a_members": ints(self.a_members),
            "b_members": ints(self.b_members),
            "equal_points": ints(self.equal_points),
            "max_diff": pair(self.max_diff),
            "min_diff": pair(self.min_diff),
            "violations": list(self.violations),
        }


def _better(new, old, sign):
    # smaller n wins ties; parts arrive in increasing n
    if old is None:
        return new
    if new is None:
        return old
    return new if sign * new[1] > sign * old[1] else old


def merge_scans(parts: list[RangeScanResult]) -> RangeScanResult:
    """Combine scans of adjacent intervals, given in increasing order."""
    parts = sorted(parts, key=lambda r: r.lo)
    for left, right in zip(parts, parts[1:]):
        if right.lo != left.hi + 1:
            raise ValueError("scan parts must tile a contiguous interval")
    keep_lists = all(p.a_members is not None for p in parts)
    out = RangeScanResult(parts[0].lo, parts[-1].hi)
    if keep_lists:
        out.a_members, out.b_members = [], []
    for p in parts:
        out.a_count += p.a_count
        out.b_count += p.b_count
        if keep_lists:
            out.a_members += p.a_members
            out.b_members += p.b_members
        out.equal_points += p.equal_points
        out.max_diff = _better(p.max_diff, out.max_diff, 1)
        out.min_diff = _better(p.min_diff, out.min_diff, -1)
        out.violations += p.violations
    return out


def _scan_serial(lo: int, hi: int, spf: np.ndarray, keep_lists: bool) -> RangeScanResult:
    res = RangeScanResult(lo, hi)
    if keep_lists:
        res.a_members, res.b_members = [], []
    for start in range(lo, hi + 1, BLOCK):
        stop = min(start + BLOCK - 1, hi)
        b = profile_block(start, stop + 1, spf)
        # last row only supplies V(stop + 1); its identities belong to the next block or hi + 1
        trimmed = ProfileBlock(*(col[:-1] for col in b))
        res.violations += block_violations(trimmed)
        n = trimmed.n
        diff = b.v[1:] - b.v[:-1]
        up, down, same = diff > 0, diff < 0, diff == 0
        res.a_count += int(up.sum())
        res.b_count += int(down.sum())
        if keep_lists:
            res.a_members += n[up].tolist()
            res.b_members += n[down].tolist()
        res.equal_points += n[same].tolist()
        k = int(np.argmax(diff))
        res.max_diff = _better((int(n[k]), int(diff[k])), res.max_diff, 1)
        k = int(np.argmin(diff))
        res.min_diff = _better((int(n[k]), int(diff[k])), res.min_diff, -1)
    return res


def scan(
    lo: int,
    hi: int,
    spf: np.ndarray | None = None,
    *,
    keep_lists: bool | None = None,
    list_threshold: int = DEFAULT_LIST_THRESHOLD,
    workers: int = 1,
    cap: int = DEFAULT_SIEVE_CAP,
) -> RangeScanResult:
    """Scan ``[lo, hi]`` for the sets A (V rises), B (V falls) and equal points.

    Membership lists are kept only when the interval has at most
    ``list_threshold`` elements unless ``keep_lists`` says otherwise.
    With ``workers > 1`` disjoint sub-intervals run on a thread pool and are
    merged; the result is identical to the serial scan.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    spf = _sieve_for(hi + 1, spf, cap)
    if keep_lists is None:
        keep_lists = hi - lo + 1 <= list_threshold
    if workers <= 1:
        return _scan_serial(lo, hi, spf, keep_lists)
    step = -(-(hi - lo + 1) // workers)
    bounds = [(s, min(s + step - 1, hi)) for s in range(lo, hi + 1, step)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda b: _scan_serial(b[0], b[1], spf, keep_lists), bounds))
    return merge_scans(parts)
