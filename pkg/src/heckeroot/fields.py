"""Small helpers for the residue fields F_p and F_q[t]/(t^2+1)."""

from __future__ import annotations

from functools import lru_cache

from sympy.ntheory import primitive_root

from heckeroot import primes


def fq2_mul(x: tuple[int, int], y: tuple[int, int], q: int) -> tuple[int, int]:
    a, b = x
    c, d = y
    return (a * c - b * d) % q, (a * d + b * c) % q


def fq2_pow(a: int, b: int, e: int, q: int) -> tuple[int, int]:
    """(a + b t)**e in F_q[t]/(t^2 + 1)."""
    ra, rb = 1, 0
    a, b = a % q, b % q
    while e:
        if e & 1:
            ra, rb = (ra * a - rb * b) % q, (ra * b + rb * a) % q
        a, b = (a * a - b * b) % q, (2 * a * b) % q
        e >>= 1
    return ra, rb


@lru_cache(maxsize=1024)
def fq2_primitive(q: int) -> tuple[int, int]:
    """Smallest generator a + b t of F_{q^2}^x, ordered by (b, a); q = 3 mod 4."""
    order = q * q - 1
    ps = list(primes.factorint(order))
    for b in range(q):
        for a in range(q):
            if a == 0 and b == 0:
                continue
            if all(fq2_pow(a, b, order // r, q) != (1, 0) for r in ps):
                return a, b
    raise AssertionError("no generator found")  # unreachable for prime q


@lru_cache(maxsize=1024)
def fp_primitive(p: int) -> int:
    return int(primitive_root(p))
