"""Rational-integer helpers: primality, factorization of norms, and sieves."""

from __future__ import annotations

import math
import random
from functools import lru_cache

import numpy as np
from sympy import isprime as _sympy_isprime

from heckeroot.errors import EffortBound, FactorizationLimit

TRIAL_BOUND = 10**6
RHO_ITERATIONS = 200_000
SIEVE_CAP = 10**8
# process-wide defaults for factorint, set from the run configuration
_defaults = {"seed": 0, "rho_iterations": RHO_ITERATIONS}


def configure(*, seed: int | None = None, rho_iterations: int | None = None) -> None:
    """Set the default rho seed and iteration cap used when callers pass None."""
    if seed is not None:
        _defaults["seed"] = seed
    if rho_iterations is not None:
        if rho_iterations <= 0:
            raise ValueError("rho_iterations must be positive")
        _defaults["rho_iterations"] = rho_iterations


def is_prime(n: int) -> bool:
    return n > 1 and bool(_sympy_isprime(n))


@lru_cache(maxsize=None)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(TRIAL_BOUND))


def _rho(n: int, rng: random.Random, max_iter: int) -> int | None:
    """Brent's variant of Pollard rho; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    for _ in range(8):
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        spent = 0
        while g == 1 and spent < max_iter:
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
            spent += r
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorint(n: int, *, seed: int | None = None, rho_iterations: int | None = None) -> dict[int, int]:
    """Factor a positive integer.

    Trial division by primes below 10**6, then Pollard-Brent rho on whatever
    composite cofactor remains.  The rho stage uses ``random.Random(seed)`` so
    results and failures are reproducible; exceeding ``rho_iterations`` raises
    :class:`FactorizationLimit`.  None means the value set by :func:`configure`.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    seed = _defaults["seed"] if seed is None else seed
    rho_iterations = _defaults["rho_iterations"] if rho_iterations is None else rho_iterations
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    rng = random.Random(seed)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _rho(m, rng, rho_iterations)
        if f is None:
            raise FactorizationLimit(f"could not split {m} within {rho_iterations} rho iterations")
        stack += [f, m // f]
    return dict(sorted(out.items()))


def sqrt_minus_one(p: int) -> int:
    """Smallest positive u with u*u = -1 (mod p), for a prime p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square modulo {p}")
    c = 2
    while pow(c, (p - 1) // 2, p) != p - 1:
        c += 1
    u = pow(c, (p - 1) // 4, p)
    return min(u, p - u)


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def segmented_primes(lo: int, hi: int, segment: int = 1 << 18):
    """Yield arrays of the primes in [lo, hi], one segment at a time."""
    if hi > SIEVE_CAP:
        raise EffortBound(f"sieve bound {hi} exceeds cap {SIEVE_CAP}")
    lo = max(lo, 2)
    base = primes_upto(math.isqrt(hi) + 1)
    for start in range(lo, hi + 1, segment):
        stop = min(start + segment, hi + 1)
        mark = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, (start + p - 1) // p * p)
            mark[first - start :: p] = False
        yield np.flatnonzero(mark).astype(np.int64) + start


def primes_in_progression(a: int, m: int, hi: int) -> np.ndarray:
    """Primes p <= hi with p = a (mod m), via the segmented sieve."""
    chunks = [seg[seg % m == a % m] for seg in segmented_primes(2, hi)]
    return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
