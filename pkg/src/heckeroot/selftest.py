"""Invariant suite behind ``heckeroot selftest``.

Every check is deterministic (fixed seeds, fixed bounds) so two runs with the
same configuration produce identical reports.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import mpmath

from heckeroot.curves import REDUCTION_TABLE, CurveClass, reduction_at_two
from heckeroot.errors import TableMiss
from heckeroot.experiments import unit_twist_table
from heckeroot.gaussint import (
    GaussInt,
    expand_base_1pi,
    factor_primary,
    gcd,
    odd_places,
    primary_associate,
)
from heckeroot.hecke import verify_trace
from heckeroot.rootnum import (
    degree_two_gauss_exact,
    gauss_sum,
    local_root_number,
    local_root_oracle,
)
from heckeroot.symbols import (
    Mu4,
    norm_reciprocity_sign,
    one_plus_i_supplement,
    quartic_symbol,
    quartic_symbol_composite,
    quartic_symbol_fast,
    reciprocity_sign,
    unit_supplement,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def primary_primes(bound: int) -> list[GaussInt]:
    return [v.generator for v in odd_places(bound)]


def check_reciprocity(bound: int) -> Check:
    ps = primary_primes(bound)
    n = bad = 0
    for a, b in itertools.permutations(ps, 2):
        n += 1
        ab, ba = quartic_symbol(a, b), quartic_symbol(b, a)
        if ab / ba != norm_reciprocity_sign(a, b) or ab != ba * reciprocity_sign(a, b):
            bad += 1
    return Check("quartic_reciprocity", bad == 0, f"{n} ordered pairs, norms <= {bound}, {bad} failures")


def check_supplements(bound: int) -> Check:
    ps = primary_primes(bound)
    bad = 0
    for p in ps:
        if quartic_symbol(GaussInt(0, 1), p) != unit_supplement(p):
            bad += 1
        if quartic_symbol(GaussInt(1, 1), p) != one_plus_i_supplement(p):
            bad += 1
    return Check("supplements", bad == 0, f"{len(ps)} primes, norms <= {bound}, {bad} failures")


def check_fast_symbol(samples: int, seed: int = 1) -> Check:
    rng = random.Random(seed)
    bad = n = 0
    while n < samples:
        beta = GaussInt(rng.randrange(-300, 300), rng.randrange(-300, 300))
        alpha = GaussInt(rng.randrange(-10**4, 10**4), rng.randrange(-10**4, 10**4))
        if not beta.is_odd() or beta.is_unit() or not alpha:
            continue
        beta = primary_associate(beta)[1]
        if not _coprime(alpha, beta):
            continue
        n += 1
        if quartic_symbol_fast(alpha, beta) != quartic_symbol_composite(alpha, beta):
            bad += 1
    return Check("fast_symbol_matches_composite", bad == 0, f"{n} random pairs, {bad} failures")


def _coprime(a: GaussInt, b: GaussInt) -> bool:
    return gcd(a, b).is_unit()


def check_factor_roundtrip(samples: int, seed: int = 2) -> Check:
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        a = GaussInt(rng.randrange(-10**6, 10**6), rng.randrange(-10**6, 10**6))
        if not a:
            continue
        if factor_primary(a).value() != a:
            bad += 1
    return Check("factorization_roundtrip", bad == 0, f"{samples} random elements, {bad} failures")


def check_trace(bound: int) -> Check:
    n = bad = 0
    for d in (GaussInt(1), GaussInt(0, 1), GaussInt(-1, 2), GaussInt(-3), GaussInt(1, 2)):
        for v in odd_places(bound):
            if v.generator.divides(d):
                continue
            n += 1
            bad += not verify_trace(d, v)
    return Check("trace_formula", bad == 0, f"{n} (d, place) pairs with norm <= {bound}, {bad} failures")


def check_table(bound: int) -> Check:
    hit = set()
    misses = 0
    r = int(bound**0.5) + 1
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            d = GaussInt(a, b)
            if not d or d.norm() > bound or not factor_primary(d).is_fourth_power_free():
                continue
            digits = "".join(map(str, expand_base_1pi(d, 6)))
            try:
                reduction_at_two(d)
            except TableMiss:
                misses += 1
                continue
            hit.update(p for p, _, _ in REDUCTION_TABLE if digits.startswith(p))
    ok = misses == 0 and len(hit) == len(REDUCTION_TABLE)
    return Check("reduction_table", ok, f"{len(hit)}/{len(REDUCTION_TABLE)} rows hit, {misses} misses, norm <= {bound}")


def check_routes(ds) -> Check:
    n = bad = 0
    for d in ds:
        c = CurveClass.from_d(d)
        for v in c.bad_places():
            n += 1
            a = local_root_number(c, v).numeric
            b = local_root_oracle(c, v)
            bad += abs(a - b) >= 1e-9
    return Check("route_equivalence", bad == 0, f"{n} bad places, {bad} disagreements")


def check_nusym(bound: int) -> Check:
    n = bad = 0
    for v in odd_places(bound):
        if v.kind != "degree_one" or not v.generator.is_3_plus_2i_mod_4():
            continue
        n += 1
        if set(unit_twist_table(v.generator)) != {Mu4(k) for k in range(4)}:
            bad += 1
    return Check("unit_twist_set_is_mu4", bad == 0, f"{n} primes, norm <= {bound}, {bad} failures")


def check_inert_gauss(qmax: int) -> Check:
    n = bad = 0
    for v in odd_places(qmax * qmax):
        if v.kind != "degree_two":
            continue
        q = v.residue_characteristic
        for e in (1, 2, 3):
            n += 1
            g = gauss_sum(GaussInt(-q) ** e, v, 20)
            if abs(g - mpmath.mpc(complex(degree_two_gauss_exact(q, e)))) >= 1e-9:
                bad += 1
    return Check("inert_gauss_sum_identity", bad == 0, f"{n} (q, n) pairs, q <= {qmax}, {bad} failures")


def run(quick: bool = True) -> list[Check]:
    G = GaussInt
    sample_d = [G(-1, 2), G(3, 2) ** 3, G(-3) ** 2 * G(1, 4), G(0, 1) * G(-7) * G(5, 2) ** 2, G(1, 1) * G(-11)]
    if quick:
        return [
            check_reciprocity(100),
            check_supplements(2000),
            check_fast_symbol(300),
            check_factor_roundtrip(200),
            check_trace(500),
            check_table(600),
            check_routes(sample_d[:3]),
            check_nusym(300),
            check_inert_gauss(20),
        ]
    return [
        check_reciprocity(500),
        check_supplements(10**4),
        check_fast_symbol(3000),
        check_factor_roundtrip(2000),
        check_trace(10**4),
        check_table(10**4),
        check_routes(sample_d),
        check_nusym(2000),
        check_inert_gauss(50),
    ]
