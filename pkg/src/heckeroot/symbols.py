"""Quartic residue symbols over Z[i] and the rational Jacobi symbol.

Symbol values are fourth roots of unity and are always carried as the exact
exponent k of i**k (see :class:`Mu4`); floats never enter here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy.external.gmpy import jacobi as _sympy_jacobi

from heckeroot.errors import (
    EvenInput,
    EvenModulus,
    NotCoprime,
    ReciprocityPreconditionViolated,
    ZeroInput,
)
from heckeroot.fields import fq2_pow
from heckeroot.gaussint import (
    GaussInt,
    IntLike,
    classify_prime,
    factor_primary,
    primary_associate,
)


@dataclass(frozen=True, slots=True)
class Mu4:
    """The fourth root of unity i**k, stored as k mod 4."""

    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "k", self.k % 4)

    def __mul__(self, other: Mu4) -> Mu4:
        return Mu4(self.k + other.k)

    def __truediv__(self, other: Mu4) -> Mu4:
        return Mu4(self.k - other.k)

    def __pow__(self, e: int) -> Mu4:
        return Mu4(self.k * e)

    def conj(self) -> Mu4:
        return Mu4(-self.k)

    def gauss(self) -> GaussInt:
        return (GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1))[self.k]

    def __complex__(self) -> complex:
        return (1 + 0j, 1j, -1 + 0j, -1j)[self.k]

    def angle(self) -> float:
        return cmath.phase(complex(self))

    def __str__(self) -> str:
        return ("1", "i", "-1", "-i")[self.k]


ONE4 = Mu4(0)


@lru_cache(maxsize=8192)
def _local_map(pi: GaussInt) -> tuple[str, int, int]:
    """(kind, r, u): r is the residue characteristic.

    For a degree-one prime the reduction O/pi -> F_r sends i to u, where
    pi.re + pi.im*u = 0 (mod r).  For degree two u is unused.
    """
    place = classify_prime(pi)
    if place.kind == "even":
        raise EvenModulus(f"{pi} lies above 2")
    r = place.residue_characteristic
    if place.kind == "degree_two":
        return ("degree_two", r, 0)
    u = (-pi.re * pow(pi.im, -1, r)) % r
    return ("degree_one", r, u)


def reduce_mod_prime(alpha: GaussInt, pi: GaussInt) -> int | tuple[int, int]:
    """Image of alpha in the residue field of pi (an int, or a pair for F_q[i])."""
    kind, r, u = _local_map(pi)
    if kind == "degree_one":
        return (alpha.re + alpha.im * u) % r
    return (alpha.re % r, alpha.im % r)


def quartic_symbol(alpha: IntLike, pi: GaussInt) -> Mu4:
    """(alpha/pi)_4 for an odd Gaussian prime pi, by modular exponentiation."""
    alpha = GaussInt.coerce(alpha)
    pi = GaussInt.coerce(pi)
    kind, r, u = _local_map(pi)
    if kind == "degree_one":
        t = (alpha.re + alpha.im * u) % r
        if t == 0:
            raise NotCoprime(f"{pi} divides {alpha}")
        val = pow(t, (r - 1) // 4, r)
        for k in range(4):
            if pow(u, k, r) == val:
                return Mu4(k)
    else:
        a, b = alpha.re % r, alpha.im % r
        if a == 0 and b == 0:
            raise NotCoprime(f"{pi} divides {alpha}")
        val = fq2_pow(a, b, (r * r - 1) // 4, r)
        table = {(1, 0): 0, (0, 1): 1, (r - 1, 0): 2, (0, r - 1): 3}
        if val in table:
            return Mu4(table[val])
    raise AssertionError("power is not a fourth root of unity")  # pi not prime


def _check_primary_modulus(beta: GaussInt) -> None:
    if not beta:
        raise ZeroInput("zero modulus")
    if not beta.is_odd():
        raise EvenModulus(f"{beta} is divisible by 1+i")
    if not beta.is_primary():
        raise ValueError(f"{beta} is not primary")


def quartic_symbol_composite(alpha: IntLike, beta: GaussInt) -> Mu4:
    """Multiplicative extension of the symbol to a primary odd modulus."""
    alpha = GaussInt.coerce(alpha)
    beta = GaussInt.coerce(beta)
    _check_primary_modulus(beta)
    out = ONE4
    for pi, e in factor_primary(beta).odd:
        out = out * quartic_symbol(alpha, pi) ** e
    return out


def unit_supplement(beta: GaussInt) -> Mu4:
    """(i/beta)_4 = i**((1-a)/2) for primary beta = a + bi."""
    return Mu4((1 - beta.re) // 2)


def one_plus_i_supplement(beta: GaussInt) -> Mu4:
    """((1+i)/beta)_4 = i**((a-1-b-b^2)/4) for primary beta = a + bi."""
    a, b = beta.re, beta.im
    return Mu4((a - 1 - b - b * b) // 4)


def reciprocity_sign(alpha: GaussInt, beta: GaussInt) -> Mu4:
    """(alpha/beta)_4 / (beta/alpha)_4 for coprime primary alpha, beta."""
    both = alpha.is_3_plus_2i_mod_4() and beta.is_3_plus_2i_mod_4()
    return Mu4(2 if both else 0)


def norm_reciprocity_sign(alpha: GaussInt, beta: GaussInt) -> Mu4:
    """(-1)**(((N alpha - 1)/4) * ((N beta - 1)/4)), the norm form of the same sign."""
    e = ((alpha.norm() - 1) // 4) * ((beta.norm() - 1) // 4)
    return Mu4(2 * (e % 2))


def _fast_chain(alpha: GaussInt, beta: GaussInt) -> Mu4:
    acc = ONE4
    one = GaussInt(1)
    while True:
        if beta == one:
            return acc
        alpha = alpha % beta
        if not alpha:
            raise ReciprocityPreconditionViolated("arguments are not coprime")
        # strip (1+i) factors, then the unit
        while not alpha.is_odd():
            acc = acc * one_plus_i_supplement(beta)
            alpha = alpha.exact_div(GaussInt(1, 1))
        u, alpha = primary_associate(alpha)
        # alpha_old = u^-1 * alpha_new, and u^-1 = i**(-index(u))
        acc = acc * unit_supplement(beta) ** (-_unit_index(u))
        if alpha == one:
            return acc
        if not alpha.is_primary() or not beta.is_primary() or alpha.is_unit():
            raise ReciprocityPreconditionViolated(f"bad pair {alpha}, {beta}")
        acc = acc * reciprocity_sign(alpha, beta)
        alpha, beta = beta, alpha


def _unit_index(u: GaussInt) -> int:
    return {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[(u.re, u.im)]


def quartic_symbol_fast(alpha: IntLike, beta: GaussInt) -> Mu4:
    """Same value as :func:`quartic_symbol_composite`, via reciprocity.

    Runs a Euclidean chain: reduce, strip units and powers of 1+i through the
    supplementary laws, flip with quartic reciprocity.  Any broken
    precondition along the way falls back to factoring the modulus.
    """
    alpha = GaussInt.coerce(alpha)
    beta = GaussInt.coerce(beta)
    _check_primary_modulus(beta)
    if not alpha:
        raise NotCoprime("0 is not coprime to anything but units")
    try:
        return _fast_chain(alpha, beta)
    except (ReciprocityPreconditionViolated, EvenInput, ZeroInput):
        return quartic_symbol_composite(alpha, beta)


def jacobi_symbol(a: int, n: int) -> int:
    """The Jacobi symbol (a/n) for odd n >= 1."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"Jacobi symbol needs an odd positive modulus, got {n}")
    if n == 1:
        return 1
    return int(_sympy_jacobi(a % n, n))


def mu4_from_complex(z: complex, tol: float = 1e-9) -> Mu4 | None:
    """Snap a complex number to the nearest fourth root of unity, if within tol."""
    k = round(cmath.phase(z) / (math.pi / 2)) % 4
    return Mu4(k) if abs(z - complex(Mu4(k))) < tol else None
