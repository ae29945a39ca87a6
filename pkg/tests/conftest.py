import math

import pytest

from regint.sieve import spf_sieve


def trial_division_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def trial_factor(n):
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return sorted(out.items())


def brute_regular(a, n):
    return any((a * a * x - a) % n == 0 for x in range(n))


@pytest.fixture(scope="session")
def spf_1e6():
    return spf_sieve(10**6 + 1)
