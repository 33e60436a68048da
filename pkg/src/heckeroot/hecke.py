"""The Hecke character of E_d at good odd primes, checked against point counts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from heckeroot.errors import BadReduction, EffortBound
from heckeroot.fields import fq2_pow
from heckeroot.gaussint import GaussInt, IntLike, PrimeClass, classify_prime
from heckeroot.symbols import quartic_symbol

POINT_COUNT_CAP = 10**6


@dataclass(frozen=True)
class HeckeValue:
    place: PrimeClass
    value: GaussInt

    def to_json(self) -> dict:
        return {"place": str(self.place), "kind": self.place.kind, "chi": str(self.value)}


def _as_place(place: PrimeClass | IntLike) -> PrimeClass:
    if isinstance(place, PrimeClass):
        return place
    return classify_prime(GaussInt.coerce(place))


def _check_good(d: GaussInt, place: PrimeClass, cap: int | None = None) -> None:
    if not place.is_odd:
        raise BadReduction("the place 1+i divides 2d")
    if place.generator.divides(d):
        raise BadReduction(f"{place} divides d = {d}")
    if cap is not None and place.norm > cap:
        raise EffortBound(f"residue field of size {place.norm} exceeds cap {cap}")


def count_points(d: IntLike, place: PrimeClass | IntLike, *, cap: int = POINT_COUNT_CAP) -> int:
    """#E_d(k) over the residue field k of an odd good place, point at infinity included."""
    d = GaussInt.coerce(d)
    place = _as_place(place)
    _check_good(d, place, cap)
    r = place.residue_characteristic
    if place.kind == "degree_one":
        u = (-place.generator.re * pow(place.generator.im, -1, r)) % r
        delta = (d.re + d.im * u) % r
        x = np.arange(r, dtype=np.int64)
        rhs = ((x * x % r) * x - delta * x) % r
        squares = np.bincount(x * x % r, minlength=r)
        return 1 + int(squares[rhs].sum())
    # F_{r^2} = F_r[t]/(t^2+1); elements a + b t flattened to a*r + b
    da, db = d.re % r, d.im % r
    a, b = np.divmod(np.arange(r * r, dtype=np.int64), r)
    a2, b2 = (a * a - b * b) % r, (2 * a * b) % r
    a3, b3 = (a2 * a - b2 * b) % r, (a2 * b + b2 * a) % r
    ra = (a3 - (da * a - db * b)) % r
    rb = (b3 - (da * b + db * a)) % r
    squares = np.bincount(a2 * r + b2, minlength=r * r)
    return 1 + int(squares[ra * r + rb].sum())


def hecke_at_prime(d: IntLike, place: PrimeClass | IntLike) -> HeckeValue:
    """chi(p) = conj((d/pi)_4) * pi with pi the primary generator of p."""
    d = GaussInt.coerce(d)
    place = _as_place(place)
    _check_good(d, place)
    pi = place.generator
    return HeckeValue(place, quartic_symbol(d, pi).conj().gauss() * pi)


def expected_count(d: IntLike, place: PrimeClass | IntLike) -> int:
    """Point count predicted by the character (degree one) or by the residue
    status of d in F_{q^2} (degree two)."""
    d = GaussInt.coerce(d)
    place = _as_place(place)
    _check_good(d, place)
    if place.kind == "degree_one":
        chi = hecke_at_prime(d, place).value
        return place.norm + 1 - 2 * chi.re
    q = place.residue_characteristic
    status = fq2_pow(d.re, d.im, (q * q - 1) // 4, q)
    if status == (1, 0):  # fourth power
        return q * q + 1 + 2 * q
    if status == (q - 1, 0):  # square, not a fourth power
        return q * q + 1 - 2 * q
    return q * q + 1


def verify_trace(d: IntLike, place: PrimeClass | IntLike, *, cap: int = POINT_COUNT_CAP) -> bool:
    return count_points(d, place, cap=cap) == expected_count(d, place)
