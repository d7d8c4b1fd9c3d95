"""Prime sieves and certified tail bounds for prime sums."""

from __future__ import annotations

import math

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (empty for n < 2)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def prime_power_tail_bound(P: int, s: int, n_primes: int | None = None) -> float:
    """Certified upper bound for sum_{p > P, p prime} p^(-s), s >= 2, P >= 17.

    Two valid bounds, we take the smaller:
      * integral bound over all integers: sum_{n > P} n^(-s) <= P^(1-s)/(s-1);
      * partial summation against pi(t) <= 1.26 t / ln t (Rosser-Schoenfeld),
        giving 1.26 s/((s-1) ln P) * P^(1-s) - pi(P) * P^(-s) when pi(P) is known.
    """
    if P < 17 or s < 2:
        raise ValueError("tail bound needs P >= 17 and s >= 2")
    integral = P ** (1.0 - s) / (s - 1.0)
    rs = 1.26 * s / ((s - 1.0) * math.log(P)) * P ** (1.0 - s)
    if n_primes is not None:
        rs -= n_primes * float(P) ** (-float(s))
    bound = max(0.0, min(integral, rs))
    if bound == 0.0:
        # P^(1-s) underflowed; the true tail is below the smallest normal float
        bound = 1e-300
    return bound


def squarefree_flags(n: int) -> np.ndarray:
    """Boolean array a of length n+1 with a[k] true iff k is squarefree (a[0] false)."""
    flags = np.ones(n + 1, dtype=bool)
    flags[0] = False
    for p in range(2, math.isqrt(n) + 1):
        flags[p * p :: p * p] = False
    return flags
