import cmath
import math
from collections import defaultdict

import pytest
import sympy

from heckeroot.errors import SearchExhausted, ShapeError
from heckeroot.experiments import (
    average_sweep,
    check_average_shape,
    density_scan,
    enumerate_Q,
    many_theta_witnesses,
    mertens_fit,
    pattern_class,
    pattern_factor,
    reduced_ratio,
    sweep_terms,
    unit_twist_table,
)
from heckeroot.gaussint import GaussInt
from heckeroot.rootnum import global_root_ratio
from heckeroot.symbols import Mu4

G = GaussInt


def test_enumerate_examples():
    assert enumerate_Q(10).members == (1, -3, -7)
    assert set(enumerate_Q(25).members) == {1, -3, -7, -11, -19, -23, 21}
    assert enumerate_Q(10, include_unit=False).members == (-3, -7)
    with pytest.raises(ValueError):
        enumerate_Q(0.5)


@pytest.mark.parametrize("X", [1, 50, 777, 10**4])
def test_enumerate_against_direct_filter(X):
    expect = set()
    for n in range(1, X + 1):
        f = sympy.factorint(n)
        if all(e == 1 and p % 4 == 3 for p, e in f.items()):
            expect.add(n * (-1) ** len(f))
    fam = enumerate_Q(X)
    assert set(fam.members) == expect and len(fam.members) == len(expect)
    assert list(fam.members) == sorted(fam.members, key=lambda m: (abs(m), m))


def test_density_scan_self_verifying():
    w = density_scan(-math.pi / 2, 0.05, 10**4)
    assert w.distance < 0.05
    first = density_scan(0.3, 2.0)
    assert first.place == G(-1, -2) and first.m == 0
    with pytest.raises(SearchExhausted):
        density_scan(0.3, 1e-12, 200)
    with pytest.raises(ValueError):
        density_scan(0, 0)


def test_unit_twist_examples():
    t = unit_twist_table(G(3, 2))
    assert sorted(x.k for x in t) == [0, 1, 2, 3]
    assert t[0] == Mu4(0)
    assert all(t[m] == t[1] ** m for m in range(4))
    with pytest.raises(ValueError):
        unit_twist_table(G(1, 4))


def test_many_theta_small():
    ws = many_theta_witnesses(G(-3), G(-3), 5)
    assert len({w.curve.d for w in ws}) == 5
    assert len({w.value.certificate for w in ws}) == 1
    ws = many_theta_witnesses(G(-1, 2), G(-1, 2), 4)
    assert all(w.twist_by == G(w.twist_by.re) and w.twist_by.re > 0 for w in ws)
    assert len({w.value.certificate for w in ws}) == 1


def test_shape_rule():
    check_average_shape(G(-1, 2) * G(-3) ** 3)
    for bad in (G(0, 1) * G(-1, 2), G(1, 1) * G(-3), G(-1, 2) ** 2):
        with pytest.raises(ShapeError):
            check_average_shape(bad)
    with pytest.raises(ShapeError):
        average_sweep(G(-1, 2) ** 2, [10])


def test_sweep_small_and_deterministic():
    a = average_sweep(G(-1, 2), [10, 100])
    b = average_sweep(G(-1, 2), [10, 100], workers=2)
    assert a.to_json() == b.to_json() and a.to_csv() == b.to_csv()
    assert [r.size for r in a.rows] == [len(enumerate_Q(10)), len(enumerate_Q(100))]
    assert all(r.abs_mean <= 1 for r in a.rows)
    terms = sweep_terms(G(-1, 2), 100)
    mean = sum(complex(w.numeric) for _, w in terms) / len(terms)
    assert abs(mean - complex(a.rows[1].mean_re, a.rows[1].mean_im)) < 1e-12
    assert all(abs(abs(complex(w.numeric)) - 1) < 1e-9 for _, w in terms)
    with pytest.raises(ValueError):
        average_sweep(G(-1, 2), [100, 10])


@pytest.mark.parametrize("d", [G(-1, 2), G(-1, 2) * G(-3), G(3, 2) * G(-7) ** 2, G(1)])
def test_reduced_formula_matches_direct(d):
    for Q in enumerate_Q(400).members:
        assert reduced_ratio(d, Q).certificate == global_root_ratio(d * G(Q)).certificate


def test_pattern_factor_constant_on_classes():
    d = G(-1, 2) * G(-3) * G(-7) ** 2
    classes = defaultdict(list)
    for Q in enumerate_Q(3000).members:
        classes[pattern_class(d, Q)].append(Q)
    assert len(classes) == 4
    for members in classes.values():
        vals = {pattern_factor(d, Q).certificate for Q in members[:50]}
        assert len(vals) == 1


@pytest.mark.parametrize("xi,a,m", [(1, 3, 4), (-1, 3, 4), (1j, 1, 4)])
def test_mertens_small(xi, a, m):
    fit = mertens_fit(xi, a, m, 10**6)
    assert fit.predicted == pytest.approx(-math.cos(cmath.phase(xi)) / 2)
    assert abs(fit.slope - fit.predicted) < 0.2
    assert fit.ladder[0][0] == pytest.approx(1e3)


def test_mertens_product_value():
    fit = mertens_fit(1, 3, 4, 10**4)
    direct = 1.0
    for p in sympy.primerange(2, 10**4 + 1):
        if p % 4 == 3:
            direct *= 1 - 1 / p
    assert fit.product == pytest.approx(direct, rel=1e-12)
    with pytest.raises(ValueError):
        mertens_fit(1, 2, 4, 1000)
