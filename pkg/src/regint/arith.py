"""Exact integer arithmetic for regular integers modulo n.

An integer ``a`` is regular (mod n) when ``a*a*x == a (mod n)`` has a
solution ``x``. The count V(n) of regular residues in ``[1, n]`` is
multiplicative with ``V(p**k) = p**k - p**(k-1) + 1``.

All inputs live in the 64-bit domain ``1 <= n < 2**64``; results that would
leave that domain raise :class:`OverflowError` rather than being returned.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

WORD = 1 << 64

# First twelve primes as Miller-Rabin bases: deterministic below 3.18e23.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_TRIAL_BOUND = 1000

DEFAULT_REG_CAP = 10**6


class OutOfDomain(ValueError):
    """An argument lies outside the supported 64-bit integer domain."""


def _check_word(n: int, name: str = "n") -> None:
    if not 0 <= n < WORD:
        raise OutOfDomain(f"{name}={n} is outside the 64-bit domain [0, 2**64)")


def _fits(value: int, what: str) -> int:
    if value >= WORD:
        raise OverflowError(f"{what} = {value} does not fit in 64 bits")
    return value


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; ``gcd(0, 0) == 0``."""
    return math.gcd(a, b)


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < 2**64``."""
    _check_word(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """``n`` with its prime-power decomposition, primes strictly increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        _check_word(self.n)
        if self.n < 1:
            raise OutOfDomain("a factorization needs n >= 1")
        prod, last = 1, 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValueError(f"bad factor entry ({p}, {e}) in factorization of {self.n}")
            prod *= p**e
            last = p
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    @classmethod
    def from_primes(cls, primes) -> "Factorization":
        """Factorization of a product of distinct primes (given in increasing order)."""
        return cls(math.prod(primes), tuple((p, 1) for p in primes))

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Factorization:
    """Prime factorization of ``1 <= n < 2**64``.

    Small factors come off by trial division; the cofactor is split with
    Brent's variant of Pollard rho and every prime certified by
    :func:`is_prime`.
    """
    _check_word(n)
    if n < 1:
        raise OutOfDomain("cannot factorize 0")
    counts: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    # 2,3,5-wheel over the remaining trial range
    d, steps, i = 7, (4, 2, 4, 2, 4, 6, 2, 6), 0
    while d <= _TRIAL_BOUND and d * d <= m:
        while m % d == 0:
            counts[d] = counts.get(d, 0) + 1
            m //= d
        d += steps[i]
        i = (i + 1) % 8
    if m > 1:
        rng = random.Random()
        stack = [m]
        while stack:
            k = stack.pop()
            if k == 1:
                continue
            if is_prime(k):
                counts[k] = counts.get(k, 0) + 1
                continue
            r = math.isqrt(k)
            if r * r == k:
                stack += [r, r]
                continue
            f = _pollard_brent(k, rng)
            stack += [f, k // f]
    return Factorization(n, tuple(sorted(counts.items())))


def _as_factorization(f) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def v_of(f: Factorization | int) -> int:
    """V(n): product of ``p**k - p**(k-1) + 1`` over the prime powers of n."""
    f = _as_factorization(f)
    out = 1
    for p, e in f:
        pk = p**e
        out *= pk - pk // p + 1
    return _fits(out, f"V({f.n})")


def phi_of(f: Factorization | int) -> int:
    """Euler's totient."""
    f = _as_factorization(f)
    out = 1
    for p, e in f:
        out *= p ** (e - 1) * (p - 1)
    return out


def psi_of(f: Factorization | int) -> int:
    """Dedekind psi, ``prod p**(k-1) * (p + 1)``."""
    f = _as_factorization(f)
    out = 1
    for p, e in f:
        out *= p ** (e - 1) * (p + 1)
    return _fits(out, f"psi({f.n})")


def sigma_of(f: Factorization | int) -> int:
    """Sum of divisors as a product of geometric sums."""
    f = _as_factorization(f)
    out = 1
    for p, e in f:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return _fits(out, f"sigma({f.n})")


def is_regular(a: int, n: int) -> bool:
    """True iff ``a*a*x == a (mod n)`` is solvable, for ``1 <= a <= n``.

    The congruence is solvable exactly when ``gcd(a*a, n)`` divides ``a``.
    ``a == n`` stands for the zero residue.
    """
    _check_word(n)
    if n < 1:
        raise OutOfDomain("modulus must be >= 1")
    if not 1 <= a <= n:
        raise ValueError(f"a={a} is outside [1, {n}]")
    return a % math.gcd(a * a, n) == 0


def is_regular_brute(a: int, n: int) -> bool:
    """Reference check trying every ``x`` in ``[0, n)``."""
    a2 = a * a % n
    target = a % n
    return any(a2 * x % n == target for x in range(n))


def reg_set(n: int, cap: int = DEFAULT_REG_CAP) -> list[int]:
    """Sorted regular residues in ``[1, n]``."""
    if n < 1:
        raise OutOfDomain("modulus must be >= 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds the enumeration cap {cap}")
    return [a for a in range(1, n + 1) if a % math.gcd(a * a, n) == 0]


@dataclass(frozen=True)
class ArithProfile:
    n: int
    v: int
    phi: int
    psi: int
    sigma: int
    squarefree: bool

    def row(self) -> tuple[int, int, int, int, int, int]:
        return (self.n, self.v, self.phi, self.psi, self.sigma, int(self.squarefree))


def profile(n: int | Factorization) -> ArithProfile:
    f = _as_factorization(n)
    return ArithProfile(f.n, v_of(f), phi_of(f), psi_of(f), sigma_of(f), f.squarefree)


def v_ratio(n: int) -> Fraction:
    """V(n+1)/V(n) as an exact rational."""
    return Fraction(v_of(n + 1), v_of(n))
