"""The curves E_d : y^2 = x^3 - dx and their arithmetic invariants over Q(i).

E_d and E_d' are isomorphic over Q(i) exactly when d' = x^4 d, so a curve
class is keyed by a fourth-power-free d.  Reduction at (1+i) is read off the
(1+i)-adic digits of d via a fixed table (Tate's algorithm done once, by hand).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from heckeroot.errors import EvenPlace, NotFourthPowerFree, TableMiss, ZeroInput
from heckeroot.fields import fp_primitive, fq2_primitive
from heckeroot.gaussint import (
    ONE_PLUS_I,
    GaussInt,
    IntLike,
    PrimaryFactorization,
    PrimeClass,
    classify_prime,
    expand_base_1pi,
    factor_primary,
)
from heckeroot.symbols import quartic_symbol

# (digit prefix d_0 d_1 ..., Kodaira type, conductor exponent at 1+i)
REDUCTION_TABLE: tuple[tuple[str, str, int], ...] = (
    ("0001", "III*", 14),
    ("0010", "I4*", 10),
    ("0011", "I2*", 12),
    ("01", "III", 14),
    ("1000", "I2*", 6),
    ("1001", "I0*", 8),
    ("101000", "good", 0),
    ("101001", "II*", 4),
    ("101010", "II*", 4),
    ("101011", "good", 0),
    ("1011", "I0*", 8),
    ("11", "II", 12),
)


def lookup_digits(digits: tuple[int, ...]) -> tuple[str, int]:
    key = "".join(str(x) for x in digits)
    hits = [(kod, f2) for prefix, kod, f2 in REDUCTION_TABLE if key.startswith(prefix)]
    if len(hits) != 1:
        raise TableMiss(f"digit vector {key} matches {len(hits)} rows")
    return hits[0]


def _canonical_associate(x: GaussInt) -> GaussInt:
    for u in (GaussInt(1), GaussInt(0, 1), GaussInt(-1), GaussInt(0, -1)):
        y = u * x
        if y.re > 0 and y.im >= 0:
            return y
    raise ZeroInput("0 has no canonical associate")


def normalize_d(d: IntLike) -> tuple[GaussInt, GaussInt]:
    """Return (d', x) with d = x^4 d' and d' fourth-power-free.

    x is the associate with re > 0 and im >= 0; all associates have the same
    fourth power.
    """
    d = GaussInt.coerce(d)
    if not d:
        raise ZeroInput("d = 0 gives a singular curve")
    fact = factor_primary(d)
    x = ONE_PLUS_I ** (fact.n_2 // 4)
    for pi, e in fact.odd:
        x = x * pi ** (e // 4)
    x = _canonical_associate(x)
    return d.exact_div(x**4), x


def reduction_at_two(d: IntLike) -> tuple[str, int]:
    """(Kodaira type, conductor exponent) of E_d at 1+i for fourth-power-free d."""
    d = GaussInt.coerce(d)
    if not d:
        raise ZeroInput("d = 0")
    if (ONE_PLUS_I**4).divides(d):
        raise NotFourthPowerFree(f"(1+i)^4 divides {d}")
    return lookup_digits(expand_base_1pi(d, 6))


@dataclass(frozen=True)
class CurveClass:
    """Q(i)-isomorphism class of E_d, keyed by fourth-power-free d."""

    d: GaussInt
    fact: PrimaryFactorization = field(compare=False, repr=False)
    kodaira: str = field(compare=False)
    f2: int = field(compare=False)

    @classmethod
    def from_d(cls, d: IntLike) -> CurveClass:
        dn, _ = normalize_d(d)
        fact = factor_primary(dn)
        kod, f2 = reduction_at_two(dn)
        return cls(dn, fact, kod, f2)

    @property
    def even_reduction(self) -> tuple[str, int]:
        return self.kodaira, self.f2

    @property
    def good_at_two(self) -> bool:
        return self.kodaira == "good"

    @property
    def odd_bad(self) -> dict[GaussInt, int]:
        return {pi: e for pi, e in self.fact.odd}

    def valuation(self, place: PrimeClass | GaussInt) -> int:
        gen = place.generator if isinstance(place, PrimeClass) else place
        if gen == ONE_PLUS_I:
            return self.fact.n_2
        return self.fact.exponent(gen)

    def bad_places(self) -> list[PrimeClass]:
        return [classify_prime(pi) for pi, _ in self.fact.odd]

    def conductor(self) -> dict[GaussInt, int]:
        out = {ONE_PLUS_I: self.f2} if self.f2 else {}
        out.update(odd_conductor(self))
        return out

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "factorization": self.fact.to_json(),
            "kodaira_at_1+i": self.kodaira,
            "f2": self.f2,
            "odd_conductor": {str(k): v for k, v in odd_conductor(self).items()},
        }

    def __str__(self) -> str:
        return f"E_{{{self.d}}}"


def twist(c: CurveClass, x: IntLike) -> CurveClass:
    """The class of E_{x d}."""
    x = GaussInt.coerce(x)
    if not x:
        raise ZeroInput("twist by 0")
    return CurveClass.from_d(x * c.d)


def odd_conductor(c: CurveClass) -> dict[GaussInt, int]:
    """Conductor exponents of E_d at odd primes: 2 at each prime dividing d."""
    return {pi: 2 for pi, _ in c.fact.odd}


def _expected_order(n: int) -> int:
    return {0: 1, 1: 4, 2: 2, 3: 4}[n % 4]


def epsilon_order(c: CurveClass, place: PrimeClass | GaussInt) -> int:
    """Order of x -> conj((x/pi)_4^n) on (O/pi)^x, n = v(d).

    The order is evaluated on a generator of the residue field, so the
    degree-two case is computed rather than assumed.  A disagreement with
    the 1/4/2 rule by v(d) raises AssertionError.
    """
    place = place if isinstance(place, PrimeClass) else classify_prime(place)
    if not place.is_odd:
        raise EvenPlace("no epsilon character at 1+i")
    n = c.valuation(place)
    r = place.residue_characteristic
    if place.kind == "degree_one":
        g = GaussInt(fp_primitive(r))
    else:
        a, b = fq2_primitive(r)
        g = GaussInt(a, b)
    k = (-quartic_symbol(g, place.generator).k * n) % 4
    order = {0: 1, 1: 4, 2: 2, 3: 4}[k]
    if order != _expected_order(n):
        raise AssertionError(f"epsilon order {order} at {place} contradicts v(d) = {n}")
    return order


def is_fourth_power_free(d: GaussInt) -> bool:
    return factor_primary(d).is_fourth_power_free()

