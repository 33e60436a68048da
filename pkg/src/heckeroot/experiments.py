"""Desk-scale experiments: density of local root numbers on the circle, unit
twist tables, many curves sharing a local root number, the average of the
global ratio over Q(X), and the Mertens-product exponent fit."""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np

from heckeroot import primes
from heckeroot.curves import CurveClass, twist
from heckeroot.errors import SearchExhausted, ShapeError
from heckeroot.gaussint import GaussInt, classify_prime, factor_primary, odd_places
from heckeroot.rootnum import (
    DEFAULT_PRECISION,
    RootNumber,
    as_curve,
    as_place,
    exact_value,
    global_root_ratio,
    local_root_number,
    merge_angles,
)
from heckeroot.symbols import Mu4, quartic_symbol

I = GaussInt(0, 1)


# ---------------------------------------------------------------- Q(X)


@dataclass(frozen=True)
class QFamily:
    """Products Q of distinct -q (q = 3 mod 4 prime) with |Q| <= X."""

    X: float
    members: tuple[int, ...]
    factors: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.members)

    def upto(self, X: float) -> list[int]:
        return [m for m in self.members if abs(m) <= X]


def enumerate_Q(X: float, *, include_unit: bool = True) -> QFamily:
    """Depth-first enumeration over sorted primes q = 3 mod 4 with product pruning.

    Members are ordered by (|Q|, Q).
    """
    if X < 1:
        raise ValueError("X must be at least 1")
    ps = [int(q) for q in primes.primes_upto(int(X)) if q % 4 == 3]
    found: dict[int, tuple[int, ...]] = {}

    def walk(start: int, prod: int, chosen: tuple[int, ...]) -> None:
        found[prod * (-1) ** len(chosen)] = chosen
        for j in range(start, len(ps)):
            if prod * ps[j] > X:
                break
            walk(j + 1, prod * ps[j], chosen + (ps[j],))

    walk(0, 1, ())
    if not include_unit:
        found.pop(1)
    members = tuple(sorted(found, key=lambda m: (abs(m), m)))
    return QFamily(X, members, found)


# ---------------------------------------------------------------- density


@dataclass(frozen=True)
class Witness:
    theta: float
    eps: float
    d: GaussInt
    place: GaussInt
    m: int
    value: RootNumber

    @property
    def distance(self) -> float:
        return abs(complex(self.value.numeric) - cmath.exp(1j * self.theta))

    def to_json(self) -> dict:
        z = complex(self.value.numeric)
        return {
            "theta": self.theta,
            "eps": self.eps,
            "d": str(self.d),
            "place": str(self.place),
            "m": self.m,
            "w_re": z.real,
            "w_im": z.imag,
            "distance": self.distance,
            "certificate": self.value.describe(),
        }


def _twist_primes(bound: int):
    """Primary degree-one primes = 3+2i (mod 4) by increasing (norm, re, im)."""
    for v in odd_places(bound):
        if v.kind == "degree_one" and v.generator.is_3_plus_2i_mod_4():
            yield v


def density_scan(
    theta: float, eps: float, prime_norm_bound: int = 10**5, precision: int = DEFAULT_PRECISION
) -> Witness:
    """First w_pi(chi_{i^m pi}) in the open ball of radius eps around exp(i theta)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    target = cmath.exp(1j * theta)
    last = None
    for v in _twist_primes(prime_norm_bound):
        pi = v.generator
        last = v.norm
        for m in range(4):
            d = I**m * pi
            w = local_root_number(d, v, precision)
            if abs(complex(w.numeric) - target) < eps:
                return Witness(theta, eps, d, pi, m, w)
    raise SearchExhausted(f"no witness near angle {theta} up to norm {last}")


def unit_twist_table(pi: GaussInt, precision: int = DEFAULT_PRECISION) -> tuple[Mu4, ...]:
    """Exact ratios w_pi(chi_{i^m pi}) / w_pi(chi_pi) for m = 0..3."""
    pi = GaussInt.coerce(pi)
    place = classify_prime(pi)
    if place.kind != "degree_one" or place.generator != pi or not pi.is_3_plus_2i_mod_4():
        raise ValueError(f"{pi} is not a primary degree-one prime = 3+2i (mod 4)")
    base = local_root_number(pi, place, precision)
    out = []
    for m in range(4):
        r = local_root_number(I**m * pi, place, precision) / base
        if not r.certified or r.angles:
            raise ArithmeticError(f"ratio at m={m} is not a certified fourth root of unity")
        out.append(Mu4(r.zeta))
    return tuple(out)


# ---------------------------------------------------------------- many theta


@dataclass(frozen=True)
class TwistWitness:
    curve: CurveClass
    twist_by: GaussInt
    value: RootNumber


def many_theta_witnesses(
    d: GaussInt, v, count: int, *, q_bound: int = 10**6, precision: int = DEFAULT_PRECISION
) -> list[TwistWitness]:
    """``count`` distinct classes E with w_v(chi_E) equal to w_v(chi_d).

    Inert v: twist by -q' for primes q' = 3 (mod 4) not dividing d.
    Split v over pi: twist by (-q)^2 for q with ((-q)/pi)_4 = -1.
    """
    c = as_curve(d)
    place = as_place(v)
    target = local_root_number(c, place, precision)
    seen = {c.d}
    out: list[TwistWitness] = []
    for q in primes.primes_upto(q_bound):
        q = int(q)
        if q % 4 != 3 or GaussInt(q).divides(c.d) or q == place.residue_characteristic:
            continue
        mq = GaussInt(-q)
        if place.kind == "degree_two":
            x = mq
        else:
            if quartic_symbol(mq, place.generator).k != 2:
                continue
            x = mq * mq
        e = twist(c, x)
        if e.d in seen:
            continue
        w = local_root_number(e, place, precision)
        if not w.same_certificate(target):
            raise AssertionError(f"twist by {x} changed w_v: {w.describe()} vs {target.describe()}")
        seen.add(e.d)
        out.append(TwistWitness(e, x, w))
        if len(out) == count:
            return out
    raise SearchExhausted(f"only {len(out)} twists found with q <= {q_bound}")


# ---------------------------------------------------------------- averages


@dataclass(frozen=True)
class SweepRow:
    X: float
    size: int
    mean_re: float
    mean_im: float

    @property
    def abs_mean(self) -> float:
        return math.hypot(self.mean_re, self.mean_im)


@dataclass
class SweepReport:
    d: GaussInt
    rows: list[SweepRow]
    include_unit: bool = True
    precision: int = DEFAULT_PRECISION
    # wall times are kept out of the serialised report so reruns compare byte-for-byte
    wall_times: list[float] = field(default_factory=list, compare=False)

    def to_json(self) -> dict:
        return {
            "d": str(self.d),
            "include_unit_Q": self.include_unit,
            "precision": self.precision,
            "rows": [
                {
                    "X": r.X,
                    "size": r.size,
                    "mean_re": f"{r.mean_re:.17g}",
                    "mean_im": f"{r.mean_im:.17g}",
                    "abs_mean": f"{r.abs_mean:.17g}",
                }
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["X", "size", "mean_re", "mean_im", "abs_mean", "precision"])
        for r in self.rows:
            w.writerow([r.X, r.size, f"{r.mean_re:.17g}", f"{r.mean_im:.17g}", f"{r.abs_mean:.17g}", self.precision])
        return buf.getvalue()


def check_average_shape(d: GaussInt) -> None:
    """Reject d outside the shape prod pi_i * prod (-q_j)^{n_j} (pi_i distinct)."""
    fact = factor_primary(d)
    if fact.n_u or fact.n_2:
        raise ShapeError(f"{d} has a unit or (1+i) part (n_u={fact.n_u}, n_2={fact.n_2})")
    for pi, e in fact.odd:
        if pi.im != 0 and e != 1:
            raise ShapeError(f"degree-one prime {pi} appears to the power {e}; only squarefree allowed")
        if e >= 4:
            raise ShapeError(f"{d} is not fourth-power-free")


def _ratio_numeric(job: tuple[GaussInt, int, int]) -> mpmath.mpc:
    d, Q, precision = job
    return global_root_ratio(d * GaussInt(Q), precision).numeric


def average_sweep(
    d: GaussInt,
    X_list,
    *,
    include_unit: bool = True,
    precision: int = DEFAULT_PRECISION,
    workers: int = 1,
) -> SweepReport:
    """Mean of w(chi_dQ)/w_2(chi_dQ) over Q(X) for each X in ascending X_list.

    Terms are computed once for the largest X and summed in the fixed member
    order, so the partial sums for smaller X are reused and the result does
    not depend on ``workers``.
    """
    d = GaussInt.coerce(d)
    check_average_shape(d)
    xs = list(X_list)
    if not xs or xs != sorted(xs):
        raise ValueError("X_list must be non-empty and ascending")
    fam = enumerate_Q(max(xs), include_unit=include_unit)
    jobs = [(d, Q, precision) for Q in fam.members]
    t0 = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_ratio_numeric, jobs, chunksize=64))
    else:
        values = [_ratio_numeric(j) for j in jobs]
    rows, times = [], []
    total = mpmath.mpc(0)
    count = 0
    with mpmath.workdps(precision):
        for X in xs:
            while count < len(values) and abs(fam.members[count]) <= X:
                total += values[count]
                count += 1
            mean = total / count if count else mpmath.mpc(0)
            rows.append(SweepRow(X, count, float(mean.real), float(mean.imag)))
            times.append(time.perf_counter() - t0)
    return SweepReport(d, rows, include_unit, precision, times)


def sweep_terms(d: GaussInt, X: float, *, include_unit: bool = True, precision: int = DEFAULT_PRECISION):
    """(Q, global ratio) for every Q in Q(X)."""
    fam = enumerate_Q(X, include_unit=include_unit)
    return [(Q, global_root_ratio(d * GaussInt(Q), precision)) for Q in fam.members]


def reduced_ratio(d: GaussInt, Q: int, precision: int = DEFAULT_PRECISION) -> RootNumber:
    """w(chi_dQ)/w_2 rebuilt from w(chi_d)/w_2 and symbol factors.

    Splits the primes of Q into K (coprime to d) and T (dividing d).  For
    k in K the local factor at -q_k is -conj((d_1/-q_k)_4) * conj((i/-q_k)_4),
    where d_1 is the degree-one part of d; the T factors are recomputed
    directly.
    """
    c = as_curve(d)
    fam_factors = _q_factors(Q)
    d_inert = {p.re for p, _ in c.fact.odd if p.im == 0}
    split = [p for p, _ in c.fact.odd if p.im != 0]
    ratio = global_root_ratio(c, precision)
    k = ratio.zeta
    if k is None:
        raise ArithmeticError("base ratio not certified")
    cdq = as_curve(d * GaussInt(Q))
    extra = RootNumber(mpmath.mpc(1), 0, (), precision=precision)
    for q in fam_factors:
        mq = GaussInt(-q)
        for pi in split:
            k -= quartic_symbol(mq, pi).k
        if -q in d_inert:
            place = classify_prime(mq)
            extra = extra * (local_root_number(cdq, place, precision) / local_root_number(c, place, precision))
        else:
            for pi in split:
                k -= quartic_symbol(pi, mq).k
            k += 2 - quartic_symbol(I, mq).k
    out = RootNumber(mpmath.mpc(1), 0, (), precision=precision) * extra
    if out.zeta is None:
        raise ArithmeticError("T factor not certified")
    zeta = (k + out.zeta) % 4
    angles = merge_angles(ratio.angles, out.angles, 1)
    with mpmath.workdps(precision):
        num = exact_value(zeta, angles)
    return RootNumber(num, zeta, angles, "reduced", str(d * GaussInt(Q)), "global", precision)


def _q_factors(Q: int) -> tuple[int, ...]:
    return tuple(sorted(primes.factorint(abs(Q)))) if abs(Q) > 1 else ()


def pattern_class(d: GaussInt, Q: int) -> frozenset[int]:
    """T = the inert primes of d that also divide Q; this set labels the class of Q."""
    c = as_curve(d)
    inert = {-p.re for p, _ in c.fact.odd if p.im == 0}
    return frozenset(q for q in _q_factors(Q) if q in inert)


def pattern_factor(d: GaussInt, Q: int, precision: int = DEFAULT_PRECISION) -> RootNumber:
    """prod_{i,t} conj((-q_t/pi_i)_4) * prod_t w_{q_t}(chi_dQ)/w_{q_t}(chi_d), t in T."""
    c = as_curve(d)
    cdq = as_curve(d * GaussInt(Q))
    split = [p for p, _ in c.fact.odd if p.im != 0]
    k = 0
    out = RootNumber(mpmath.mpc(1), 0, (), precision=precision)
    for q in sorted(pattern_class(d, Q)):
        mq = GaussInt(-q)
        for pi in split:
            k -= quartic_symbol(mq, pi).k
        place = classify_prime(mq)
        out = out * (local_root_number(cdq, place, precision) / local_root_number(c, place, precision))
    return out * RootNumber(mpmath.mpc(complex(Mu4(k))), k % 4, (), precision=precision)


# ---------------------------------------------------------------- Mertens


@dataclass(frozen=True)
class MertensFit:
    xi: complex
    a: int
    m: int
    X: float
    product: complex
    slope: float
    predicted: float
    ladder: tuple[tuple[float, float], ...]

    def to_json(self) -> dict:
        return {
            "xi_re": self.xi.real,
            "xi_im": self.xi.imag,
            "a": self.a,
            "m": self.m,
            "X": self.X,
            "product_re": self.product.real,
            "product_im": self.product.imag,
            "slope": self.slope,
            "predicted": self.predicted,
        }


def mertens_fit(xi: complex, a: int, m: int, X: float, *, y_min: float = 1e3, steps_per_decade: int = 10) -> MertensFit:
    """Fit log|prod_{p<=Y, p=a (m)} (1 - xi/p)| against log log Y for Y in [y_min, X]."""
    if math.gcd(a, m) != 1:
        raise ValueError("a and m must be coprime")
    if X < 100:
        raise ValueError("X must be at least 100")
    ps = primes.primes_in_progression(a, m, int(X)).astype(np.float64)
    logs = np.cumsum(np.log(np.abs(1 - complex(xi) / ps)))
    args = np.cumsum(np.angle(1 - complex(xi) / ps))
    ladder = []
    lo = math.log10(y_min)
    hi = math.log10(X)
    n = max(2, int(round((hi - lo) * steps_per_decade)) + 1)
    for y in np.logspace(lo, hi, n):
        j = int(np.searchsorted(ps, y, side="right"))
        if j:
            ladder.append((float(y), float(logs[j - 1])))
    xs = np.log(np.log([y for y, _ in ladder]))
    ys = np.array([v for _, v in ladder])
    slope = float(np.polyfit(xs, ys, 1)[0])
    phi = sum(1 for r in range(1, m + 1) if math.gcd(r, m) == 1)
    predicted = -math.cos(cmath.phase(complex(xi))) / phi
    product = cmath.exp(complex(logs[-1], args[-1])) if len(ps) else 1 + 0j
    return MertensFit(complex(xi), a, m, X, product, slope, predicted, tuple(ladder))


def report_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
