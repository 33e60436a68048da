"""Exact arithmetic in the Gaussian integers Z[i].

Elements are immutable :class:`GaussInt` values.  Besides ring arithmetic this
module provides Euclidean division, primary normalisation, unique
factorisation into primary primes, classification of prime places and the
(1+i)-adic digit expansion used by the reduction table at 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

from heckeroot import primes
from heckeroot.errors import EvenInput, NotPrime, ZeroInput

IntLike = Union[int, "GaussInt"]


@dataclass(frozen=True, slots=True)
class GaussInt:
    re: int
    im: int = 0

    @staticmethod
    def coerce(x: IntLike) -> GaussInt:
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return GaussInt(x, 0)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian integer")

    # ring operations
    def __add__(self, other: IntLike) -> GaussInt:
        o = GaussInt.coerce(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> GaussInt:
        o = GaussInt.coerce(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: IntLike) -> GaussInt:
        return GaussInt.coerce(other) - self

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: IntLike) -> GaussInt:
        o = GaussInt.coerce(other)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> GaussInt:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: IntLike) -> tuple[GaussInt, GaussInt]:
        b = GaussInt.coerce(other)
        n = b.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        # exact quotient is (self * conj(b)) / n; round each coordinate to
        # nearest, ties toward -inf
        num = self * b.conj()
        q = GaussInt(-((n - 2 * num.re) // (2 * n)), -((n - 2 * num.im) // (2 * n)))
        return q, self - q * b

    def __floordiv__(self, other: IntLike) -> GaussInt:
        return divmod(self, other)[0]

    def __mod__(self, other: IntLike) -> GaussInt:
        return divmod(self, other)[1]

    def exact_div(self, other: IntLike) -> GaussInt:
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: IntLike) -> bool:
        """True iff self | other."""
        if not self:
            return not GaussInt.coerce(other)
        return not (GaussInt.coerce(other) % self)

    def powmod(self, e: int, m: GaussInt) -> GaussInt:
        """self**e reduced modulo m by square-and-multiply with Euclidean remainders."""
        result, base = ONE % m, self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    # structure
    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_odd(self) -> bool:
        """True iff (1+i) does not divide self."""
        return (self.re + self.im) % 2 == 1

    def is_primary(self) -> bool:
        return (self.re % 4, self.im % 4) in ((1, 0), (3, 2))

    def is_3_plus_2i_mod_4(self) -> bool:
        return (self.re % 4, self.im % 4) == (3, 2)

    def associates(self) -> tuple[GaussInt, ...]:
        return tuple(u * self for u in UNITS)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm(), self.re, self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        a, b = self.re, self.im
        if b == 0:
            return str(a)
        ib = "i" if abs(b) == 1 else f"{abs(b)}i"
        if a == 0:
            return ib if b > 0 else "-" + ib
        return f"{a}{'+' if b > 0 else '-'}{ib}"

    def __repr__(self) -> str:
        return f"GaussInt({self.re}, {self.im})"

    @classmethod
    def parse(cls, text: str) -> GaussInt:
        """Parse "a+bi", "a-bi", "bi", "a", "i", "-i" (whitespace ignored)."""
        s = re.sub(r"\s+", "", str(text)).replace("j", "i")
        m = _PARSE.fullmatch(s)
        if not m or not s:
            raise ValueError(f"not a Gaussian integer: {text!r}")
        re_part, im_sign, im_digits, only_im = m.group("re", "isign", "idig", "only")
        if only_im is not None:
            return cls(0, _imag(m.group("osign"), only_im))
        a = int(re_part) if re_part else 0
        b = _imag(im_sign, im_digits) if im_sign is not None else 0
        return cls(a, b)


def _imag(sign: str | None, digits: str) -> int:
    v = int(digits) if digits else 1
    return -v if sign == "-" else v


_PARSE = re.compile(
    r"(?:(?P<osign>[+-]?)(?P<only>\d*)i)"
    r"|(?:(?P<re>[+-]?\d+)(?:(?P<isign>[+-])(?P<idig>\d*)i)?)"
)

ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
ONE_PLUS_I = GaussInt(1, 1)
UNITS = (ONE, I, GaussInt(-1, 0), GaussInt(0, -1))


def unit_exponent(u: GaussInt) -> int:
    """k with u = i**k for a unit u."""
    try:
        return UNITS.index(u)
    except ValueError:
        raise ValueError(f"{u} is not a unit") from None


def gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    while b:
        a, b = b, a % b
    return a


def xgcd(a: GaussInt, b: GaussInt) -> tuple[GaussInt, GaussInt, GaussInt]:
    """(g, s, t) with s*a + t*b = g, g a gcd of a and b."""
    s0, s1, t0, t1 = ONE, ZERO, ZERO, ONE
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def inverse_mod(a: GaussInt, m: GaussInt) -> GaussInt:
    g, s, _ = xgcd(a % m, m)
    if not g.is_unit():
        raise ValueError(f"{a} is not invertible modulo {m}")
    # s*a = g (mod m) with g a unit, so a^-1 = s * g^-1 = s * conj(g)
    return (s * g.conj()) % m


def primary_associate(alpha: GaussInt) -> tuple[GaussInt, GaussInt]:
    """Return (u, u*alpha) with u a unit and u*alpha = 1 mod 2(1+i)."""
    if not alpha:
        raise ZeroInput("0 has no primary associate")
    if not alpha.is_odd():
        raise EvenInput(f"{alpha} is divisible by 1+i")
    for u in UNITS:
        cand = u * alpha
        if cand.is_primary():
            return u, cand
    raise AssertionError("no primary associate")  # unreachable for odd alpha


@dataclass(frozen=True)
class PrimaryFactorization:
    """d = i**n_u * (1+i)**n_2 * prod(pi**e for pi, e in odd)."""

    n_u: int
    n_2: int
    odd: tuple[tuple[GaussInt, int], ...] = field(default=())

    def value(self) -> GaussInt:
        out = UNITS[self.n_u] * ONE_PLUS_I**self.n_2
        for pi, e in self.odd:
            out = out * pi**e
        return out

    def exponent(self, pi: GaussInt) -> int:
        for p, e in self.odd:
            if p == pi:
                return e
        return 0

    def is_fourth_power_free(self) -> bool:
        return self.n_2 < 4 and all(e < 4 for _, e in self.odd)

    def to_json(self) -> dict:
        return {
            "n_u": self.n_u,
            "n_2": self.n_2,
            "odd": [{"pi": str(p), "e": e} for p, e in self.odd],
        }

    @classmethod
    def from_json(cls, obj: dict) -> PrimaryFactorization:
        odd = tuple((GaussInt.parse(item["pi"]), int(item["e"])) for item in obj["odd"])
        return cls(int(obj["n_u"]), int(obj["n_2"]), odd)


@lru_cache(maxsize=4096)
def prime_above(p: int) -> GaussInt:
    """A primary Gaussian prime of norm p, for a rational prime p = 1 (mod 4).

    The conjugate of the returned prime is the other one above p.
    """
    u = primes.sqrt_minus_one(p)
    pi = gcd(GaussInt(p), GaussInt(u, 1))
    return primary_associate(pi)[1]


def _valuation(x: GaussInt, pi: GaussInt) -> tuple[int, GaussInt]:
    e = 0
    while True:
        q, r = divmod(x, pi)
        if r:
            return e, x
        x, e = q, e + 1


def factor_primary(d: GaussInt, *, seed: int | None = None) -> PrimaryFactorization:
    """Unique factorisation of d into a unit, a power of 1+i and primary odd primes.

    Keys of the odd part are ordered by (norm, re, im).
    """
    d = GaussInt.coerce(d)
    if not d:
        raise ZeroInput("cannot factor 0")
    rest = d
    n_2 = 0
    odd: list[tuple[GaussInt, int]] = []
    for p, e in primes.factorint(d.norm(), seed=seed).items():
        if p == 2:
            n_2, rest = _valuation(rest, ONE_PLUS_I)
        elif p % 4 == 3:
            q = GaussInt(-p)
            k, rest = _valuation(rest, q)
            odd.append((q, k))
        else:
            pi = prime_above(p)
            k, rest = _valuation(rest, pi)
            if k:
                odd.append((pi, k))
            if e - k:
                k2, rest = _valuation(rest, pi.conj())
                odd.append((pi.conj(), k2))
    odd.sort(key=lambda item: item[0].sort_key())
    return PrimaryFactorization(unit_exponent(rest), n_2, tuple(odd))


@dataclass(frozen=True)
class PrimeClass:
    """A finite prime place of Q(i) with its canonical generator."""

    kind: str  # "even", "degree_one" or "degree_two"
    generator: GaussInt
    residue_characteristic: int

    @property
    def norm(self) -> int:
        """Size of the residue field."""
        if self.kind == "degree_two":
            return self.residue_characteristic**2
        return self.residue_characteristic

    @property
    def is_odd(self) -> bool:
        return self.kind != "even"

    def __str__(self) -> str:
        return str(self.generator)


def classify_prime(pi: GaussInt) -> PrimeClass:
    pi = GaussInt.coerce(pi)
    n = pi.norm()
    if n <= 1:
        raise NotPrime(f"{pi} is zero or a unit")
    if n == 2:
        return PrimeClass("even", ONE_PLUS_I, 2)
    if primes.is_prime(n):
        # n = 2 handled above; a prime norm of an odd element is 1 mod 4
        return PrimeClass("degree_one", primary_associate(pi)[1], n)
    if pi.re == 0 or pi.im == 0:
        q = abs(pi.re + pi.im)
        if q % 4 == 3 and primes.is_prime(q):
            return PrimeClass("degree_two", GaussInt(-q), q)
    raise NotPrime(f"{pi} is not a Gaussian prime")


def place_of(pi: GaussInt) -> PrimeClass:
    return classify_prime(pi)


def odd_places(bound: int) -> list[PrimeClass]:
    """All odd prime places with residue field size <= bound, by (norm, re, im)."""
    out = []
    for p in primes.primes_upto(bound):
        p = int(p)
        if p % 4 == 1:
            pi = prime_above(p)
            out.append(PrimeClass("degree_one", pi, p))
            out.append(PrimeClass("degree_one", pi.conj(), p))
        elif p % 4 == 3 and p * p <= bound:
            out.append(PrimeClass("degree_two", GaussInt(-p), p))
    out.sort(key=lambda v: v.generator.sort_key())
    return out


def primary_primes_3_plus_2i(bound: int) -> Iterator[GaussInt]:
    """Primary degree-one primes congruent to 3+2i mod 4, by increasing norm."""
    for v in odd_places(bound):
        if v.kind == "degree_one" and v.generator.is_3_plus_2i_mod_4():
            yield v.generator


def expand_base_1pi(d: GaussInt, k: int) -> tuple[int, ...]:
    """Digits d_0..d_{k-1} in {0,1} with d = sum d_j (1+i)**j mod (1+i)**k."""
    d = GaussInt.coerce(d)
    if not d:
        raise ZeroInput("expansion of 0")
    if k < 1:
        raise ValueError("need at least one digit")
    digits = []
    x = d
    for _ in range(k):
        bit = (x.re + x.im) & 1
        digits.append(bit)
        x = (x - bit).exact_div(ONE_PLUS_I)
    return tuple(digits)
