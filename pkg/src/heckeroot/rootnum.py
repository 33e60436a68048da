"""Local and global root numbers of the Hecke character attached to E_d.

Two independent routes are provided for a bad odd place v:

* the closed form (``local_root_number``), which multiplies exact quartic
  symbols by a normalised Gauss sum, and
* the congruence-prime oracle (``local_root_oracle``), which picks a prime x
  satisfying a CRT system and evaluates chi at x directly.

Values are returned as :class:`RootNumber`, carrying a high-precision numeric
value and, when possible, an exact certificate

    w = i**zeta * prod_j (pi_j/|pi_j|)**(h_j/2)

with the principal branch arg(pi_j) in (-pi, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import mpmath

from heckeroot import primes
from heckeroot.curves import CurveClass
from heckeroot.errors import (
    EvenPlace,
    GoodReduction,
    NotCoprime,
    SearchExhausted,
    UnsupportedEvenBadReduction,
)
from heckeroot.fields import fp_primitive, fq2_mul, fq2_primitive
from heckeroot.gaussint import (
    ONE,
    ONE_PLUS_I,
    GaussInt,
    IntLike,
    PrimeClass,
    classify_prime,
    gcd,
    inverse_mod,
)
from heckeroot.symbols import Mu4, one_plus_i_supplement, quartic_symbol

DEFAULT_PRECISION = 30
SNAP_TOL = 1e-9
# residue fields larger than this use the exact degree-two evaluation below
GAUSS_ENUM_CAP = 40_000
ARCHIMEDEAN = "archimedean"

Place = Union[PrimeClass, GaussInt, str]


def _arg(pi: GaussInt) -> mpmath.mpf:
    return mpmath.atan2(pi.im, pi.re)


@dataclass(frozen=True)
class RootNumber:
    """A unit complex number with an optional exact certificate.

    ``zeta`` is the exponent of i, or None when the value could not be
    snapped to a known coset.  ``angles`` lists (pi, h) pairs meaning the
    factor exp(i*h*arg(pi)/2).
    """

    numeric: mpmath.mpc
    zeta: int | None = None
    angles: tuple[tuple[GaussInt, int], ...] = ()
    method: str = "formula"
    place: str = ""
    kind: str = ""
    precision: int = DEFAULT_PRECISION

    @property
    def certified(self) -> bool:
        return self.zeta is not None

    @property
    def certificate(self) -> tuple[int, tuple[tuple[GaussInt, int], ...]] | None:
        if self.zeta is None:
            return None
        return (self.zeta % 4, self.angles)

    def certificate_value(self) -> mpmath.mpc:
        if self.zeta is None:
            raise ValueError("no certificate")
        with mpmath.workdps(self.precision):
            return exact_value(self.zeta, self.angles)

    def same_certificate(self, other: RootNumber) -> bool:
        return self.certified and self.certificate == other.certificate

    def __complex__(self) -> complex:
        return complex(self.numeric)

    def _combine(self, other: RootNumber, sign: int) -> RootNumber:
        with mpmath.workdps(max(self.precision, other.precision)):
            num = self.numeric * other.numeric if sign > 0 else self.numeric / other.numeric
        if self.zeta is None or other.zeta is None:
            zeta, angles = None, ()
        else:
            zeta = (self.zeta + sign * other.zeta) % 4
            angles = merge_angles(self.angles, other.angles, sign)
        return RootNumber(num, zeta, angles, "product", precision=max(self.precision, other.precision))

    def __mul__(self, other: RootNumber) -> RootNumber:
        return self._combine(other, 1)

    def __truediv__(self, other: RootNumber) -> RootNumber:
        return self._combine(other, -1)

    def to_json(self) -> dict:
        z = complex(self.numeric)
        return {
            "place": self.place,
            "kind": self.kind,
            "w_re": mpmath.nstr(self.numeric.real, self.precision),
            "w_im": mpmath.nstr(self.numeric.imag, self.precision),
            "zeta_exponent": self.zeta,
            "angles": [{"pi": str(p), "half_exponent": h} for p, h in self.angles],
            "method": self.method,
            "precision": self.precision,
            "abs_error": float(abs(abs(z) - 1)),
        }

    def describe(self) -> str:
        if self.zeta is None:
            return f"{complex(self.numeric):.12f} (unsnapped)"
        parts = [str(Mu4(self.zeta))]
        for p, h in self.angles:
            parts.append(f"(({p})/|{p}|)^({h}/2)")
        return " * ".join(parts)


def merge_angles(a, b, sign):
    acc: dict[GaussInt, int] = {}
    for p, h in a:
        acc[p] = acc.get(p, 0) + h
    for p, h in b:
        acc[p] = acc.get(p, 0) + sign * h
    return tuple(sorted(((p, h) for p, h in acc.items() if h), key=lambda t: t[0].sort_key()))


def exact_value(zeta: int, angles) -> mpmath.mpc:
    """i**zeta * prod exp(i h arg(pi)/2) at the current mpmath precision."""
    theta = mpmath.mpf(0)
    for p, h in angles:
        theta += h * _arg(p) / 2
    return mpmath.mpc(complex(Mu4(zeta))) * mpmath.expj(theta)


def snap(value: mpmath.mpc, angles, tol: float = SNAP_TOL) -> int | None:
    """The k with |value - i**k * base| < tol, base given by ``angles``; else None."""
    base = exact_value(0, angles)
    r = value / base
    for k in range(4):
        if abs(r - mpmath.mpc(complex(Mu4(k)))) < tol:
            return k
    return None


# ---------------------------------------------------------------- places


def as_place(v: Place) -> PrimeClass | str:
    if isinstance(v, str):
        if v.lower() in (ARCHIMEDEAN, "inf", "infinity"):
            return ARCHIMEDEAN
        v = GaussInt.parse(v)
    if isinstance(v, PrimeClass):
        return v
    return classify_prime(GaussInt.coerce(v))


def as_curve(d: IntLike | CurveClass) -> CurveClass:
    return d if isinstance(d, CurveClass) else CurveClass.from_d(d)


# ---------------------------------------------------------------- congruences


@dataclass(frozen=True)
class CongruenceSystem:
    """x = residue (mod modulus) for each pair; moduli pairwise coprime."""

    congruences: tuple[tuple[GaussInt, GaussInt], ...]
    primary: bool = True

    def __post_init__(self):
        mods = [m for m, _ in self.congruences]
        for i, a in enumerate(mods):
            if not a:
                raise ValueError("zero modulus")
            for b in mods[i + 1 :]:
                if not gcd(a, b).is_unit():
                    raise NotCoprime(f"moduli {a} and {b} are not coprime")

    def modulus(self) -> GaussInt:
        m = ONE
        for mod, _ in self.congruences:
            m = m * mod
        return m

    def solve(self) -> tuple[GaussInt, GaussInt]:
        """(x0, M) with the solution set x0 + M Z[i]."""
        big = self.modulus()
        x = GaussInt(0)
        for mod, res in self.congruences:
            rest = big.exact_div(mod)
            x = x + res * rest * inverse_mod(rest, mod)
        return x % big, big

    def satisfied_by(self, x: GaussInt) -> bool:
        return all(mod.divides(x - res) for mod, res in self.congruences)


def _is_gaussian_prime(x: GaussInt) -> bool:
    n = x.norm()
    if primes.is_prime(n):
        return True
    if x.re == 0 or x.im == 0:
        q = abs(x.re + x.im)
        return q % 4 == 3 and primes.is_prime(q)
    return False


def _scan_key(x: GaussInt) -> tuple[int, float]:
    theta = math.atan2(x.im, x.re)
    return (x.norm(), theta if theta >= 0 else theta + 2 * math.pi)


def find_prime_congruent(system: CongruenceSystem, norm_bound: int | None = None) -> GaussInt:
    """The first prime solution of ``system``, scanning by (norm, argument in [0, 2pi)).

    The default bound is 10**8 times the norm of the combined modulus.
    """
    x0, big = system.solve()
    mnorm = big.norm()
    if norm_bound is None:
        norm_bound = 10**8 * mnorm
    mabs = math.sqrt(mnorm)
    lo, hi = -1, 16 * mnorm
    while True:
        hi = min(hi, norm_bound)
        radius = (math.isqrt(hi) + 1 + math.sqrt(x0.norm())) / mabs + 1
        r = int(radius) + 1
        cands = []
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                x = x0 + big * GaussInt(a, b)
                if lo < x.norm() <= hi:
                    cands.append(x)
        cands.sort(key=_scan_key)
        for x in cands:
            if system.primary and not x.is_primary():
                continue
            if _is_gaussian_prime(x):
                return x
        if hi >= norm_bound:
            raise SearchExhausted(f"no prime solution with norm <= {norm_bound}")
        lo, hi = hi, hi * 4


# ---------------------------------------------------------------- Gauss sums


@lru_cache(maxsize=512)
def _class_sums_degree_one(pi: GaussInt, dps: int) -> tuple[mpmath.mpc, ...]:
    """S_k = sum of e(y/p) over y in F_p^x with (y/pi)_4 = i**k."""
    p = pi.norm()
    g = fp_primitive(p)
    kg = quartic_symbol(g, pi).k
    with mpmath.workdps(dps + 10):
        buckets = [[] for _ in range(4)]
        y = 1
        for j in range(p - 1):
            buckets[(j * kg) % 4].append(mpmath.expjpi(mpmath.mpf(2 * y) / p))
            y = y * g % p
        return tuple(mpmath.fsum(b) for b in buckets)


@lru_cache(maxsize=512)
def _class_sums_degree_two(q: int, dps: int) -> tuple[mpmath.mpc, ...]:
    """S_k = sum of e(2 re(x)/q) over x in F_{q^2}^x with (x/-q)_4 = i**k."""
    gam = fq2_primitive(q)
    kg = quartic_symbol(GaussInt(*gam), GaussInt(-q)).k
    counts = [[0] * q for _ in range(4)]
    x = (1, 0)
    for j in range(q * q - 1):
        counts[(j * kg) % 4][x[0]] += 1
        x = fq2_mul(x, gam, q)
    with mpmath.workdps(dps + 10):
        roots = [mpmath.expjpi(mpmath.mpf(4 * a) / q) for a in range(q)]
        return tuple(mpmath.fsum(c * z for c, z in zip(cnt, roots)) for cnt in counts)


def _gauss_parts(place: PrimeClass, n: int, precision: int) -> mpmath.mpc:
    if place.kind == "degree_one":
        sums = _class_sums_degree_one(place.generator, precision)
        scale = mpmath.sqrt(place.norm)
    else:
        sums = _class_sums_degree_two(place.residue_characteristic, precision)
        scale = mpmath.mpf(place.residue_characteristic)
    with mpmath.workdps(precision + 10):
        total = mpmath.fsum(mpmath.mpc(complex(Mu4(-k * n))) * s for k, s in enumerate(sums))
        return total / scale


def gauss_sum(d: IntLike | CurveClass, v: Place, precision: int = DEFAULT_PRECISION) -> mpmath.mpc:
    """Normalised Gauss sum of the local character at a bad odd place.

    The local character on units is eps(x) = conj((x/pi)_4 ** n), n = v(d),
    and the additive character is x -> e(tr(x)/r) with r the residue
    characteristic (so beta = p or q).
    """
    c = as_curve(d)
    place = as_place(v)
    if place == ARCHIMEDEAN or not place.is_odd:
        raise EvenPlace("Gauss sums are defined here only at odd places")
    n = c.valuation(place)
    if n == 0:
        raise GoodReduction(f"{place} does not divide d = {c.d}")
    with mpmath.workdps(precision):
        return +_gauss_parts(place, n, precision)


def gauss_sum_angles(place: PrimeClass, n: int) -> tuple[tuple[GaussInt, int], ...]:
    """The coset base of the Gauss sum: (pi/|pi|)**(s/2), s = n - 2 at degree one."""
    if place.kind == "degree_one" and n % 2 == 1:
        return ((place.generator, n - 2),)
    return ()


def degree_two_gauss_exact(q: int, n: int) -> Mu4:
    """Exact value of the Gauss sum at the inert place -q with v(d) = n.

    eps is trivial on F_q^x (rational numerators have symbol 1), so writing
    x = a(1 + c t) for a != 0 collapses the sum to q * eps(t), i.e.
    G = eps(i) = conj((i/-q)_4) ** n.
    """
    return quartic_symbol(GaussInt(0, 1), GaussInt(-q)).conj() ** n


def gauss_sum_certificate(d, v: Place, precision: int = DEFAULT_PRECISION):
    """(G, zeta or None, angles) for the Gauss sum at a bad odd place.

    Inert places with q^2 above GAUSS_ENUM_CAP use :func:`degree_two_gauss_exact`
    instead of enumerating F_{q^2}.
    """
    c = as_curve(d)
    place = as_place(v)
    n = c.valuation(place)
    if place.kind == "degree_two" and place.norm > GAUSS_ENUM_CAP and n:
        k = degree_two_gauss_exact(place.residue_characteristic, n).k
        with mpmath.workdps(precision):
            return exact_value(k, ()), k, ()
    g = gauss_sum(c, place, precision)
    angles = gauss_sum_angles(place, n)
    with mpmath.workdps(precision):
        return g, snap(g, angles), angles


# ---------------------------------------------------------------- local root numbers


def _eta_exponent(pi: GaussInt, n: int) -> int:
    return 2 * n if pi.is_3_plus_2i_mod_4() else 0


def epsilon_at_one_plus_i(c: CurveClass) -> Mu4:
    """prod over odd bad places w of conj(((1+i)/pi_w)_4 ** v_w(d))."""
    out = Mu4(0)
    for pi, e in c.fact.odd:
        out = out * one_plus_i_supplement(pi).conj() ** e
    return out


def local_root_number(
    d: IntLike | CurveClass, v: Place, precision: int = DEFAULT_PRECISION
) -> RootNumber:
    c = as_curve(d)
    place = as_place(v)
    if place == ARCHIMEDEAN:
        return RootNumber(mpmath.mpc(0, -1), 3, (), "archimedean", ARCHIMEDEAN, ARCHIMEDEAN, precision)
    label, kind = str(place), place.kind
    if kind == "even":
        if not c.good_at_two:
            raise UnsupportedEvenBadReduction(
                f"E_{c.d} has reduction type {c.kodaira} at 1+i; the local root number there is not computed"
            )
        # w_2 = (chi((1+i)O) / |chi((1+i)O)|)^2 with chi((1+i)O) = eps(1+i) (1+i)
        zeta = (2 * epsilon_at_one_plus_i(c).k + 1) % 4
        with mpmath.workdps(precision):
            num = exact_value(zeta, ())
        return RootNumber(num, zeta, (), "good-even", label, kind, precision)
    n = c.valuation(place)
    if n == 0:
        return RootNumber(mpmath.mpc(1), 0, (), "good-odd", label, kind, precision)
    pi = place.generator
    rest = c.d.exact_div(pi**n)
    g, gk, gangles = gauss_sum_certificate(c, place, precision)
    if kind == "degree_one":
        modulus = pi**n
        inv = inverse_mod(pi.conj(), modulus)
        k = _eta_exponent(pi, n) - quartic_symbol(rest, pi).k - n * quartic_symbol(inv, pi).k
        angles = merge_angles(((pi, 2),), gangles, 1)
        unit_angles = ((pi, 2),)
    else:
        k = 2 - quartic_symbol(rest, pi).k
        angles = ()
        unit_angles = ()
    with mpmath.workdps(precision):
        num = exact_value(k, unit_angles) * g
        zeta = None if gk is None else (k + gk) % 4
    return RootNumber(num, zeta, angles if zeta is not None else (), "formula", label, kind, precision)


def oracle_system(c: CurveClass, place: PrimeClass) -> CongruenceSystem:
    """The CRT system whose prime solution x gives w_v through chi(x)."""
    n = c.valuation(place)
    pi = place.generator
    if place.kind == "degree_one":
        anchor = pi
        local = (pi**n, inverse_mod(pi.conj(), pi**n))
    else:
        q = place.residue_characteristic
        anchor = GaussInt(-q)
        local = (GaussInt(q) ** n, GaussInt(-1))
    congr = [(GaussInt(16), anchor % 16)]
    for other, _ in c.fact.odd:
        if other != pi:
            congr.append((other, anchor % other))
    congr.append(local)
    return CongruenceSystem(tuple(congr), primary=True)


def local_root_oracle(
    d: IntLike | CurveClass,
    v: Place,
    precision: int = DEFAULT_PRECISION,
    norm_bound: int | None = None,
) -> mpmath.mpc:
    """w_v by the prime-of-congruence route, independent of the closed form."""
    c = as_curve(d)
    place = as_place(v)
    if place == ARCHIMEDEAN or not place.is_odd:
        raise EvenPlace("the oracle handles bad odd places only")
    if c.valuation(place) == 0:
        raise GoodReduction(f"{place} does not divide d = {c.d}")
    x = find_prime_congruent(oracle_system(c, place), norm_bound)
    eps = quartic_symbol(c.d, x).conj()
    g = gauss_sum_certificate(c, place, precision)[0]
    with mpmath.workdps(precision):
        if place.kind == "degree_one":
            unit = exact_value(eps.k, ((place.generator, 2),))
        else:
            unit = exact_value(eps.k + 2, ())
        return unit * g


def local_root_numbers(d, precision: int = DEFAULT_PRECISION, *, include_even: bool = True):
    """All nontrivial local factors: archimedean, each bad odd place, and 1+i when good."""
    c = as_curve(d)
    out = [local_root_number(c, ARCHIMEDEAN, precision)]
    out += [local_root_number(c, v, precision) for v in c.bad_places()]
    if include_even and c.good_at_two:
        out.append(local_root_number(c, ONE_PLUS_I, precision))
    return out


def global_root_ratio(d: IntLike | CurveClass, precision: int = DEFAULT_PRECISION) -> RootNumber:
    """w(chi)/w_2(chi) = -i times the product of the odd local root numbers."""
    c = as_curve(d)
    w = local_root_number(c, ARCHIMEDEAN, precision)
    for v in c.bad_places():
        w = w * local_root_number(c, v, precision)
    return RootNumber(w.numeric, w.zeta, w.angles, "global-ratio", str(c.d), "global", precision)


def global_root_number(d: IntLike | CurveClass, precision: int = DEFAULT_PRECISION) -> RootNumber:
    """The full w(chi); only available when E_d has good reduction at 1+i."""
    c = as_curve(d)
    w = global_root_ratio(c, precision) * local_root_number(c, ONE_PLUS_I, precision)
    return RootNumber(w.numeric, w.zeta, w.angles, "global", str(c.d), "global", precision)
