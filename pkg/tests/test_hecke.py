import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckeroot.errors import BadReduction, EffortBound
from heckeroot.gaussint import GaussInt, classify_prime, odd_places
from heckeroot.hecke import count_points, expected_count, hecke_at_prime, verify_trace
from heckeroot.symbols import unit_supplement

G = GaussInt


def brute_count(d, place):
    """#E_d(k) by double loop, k = F_p via i -> u or F_{q^2} as pairs (a, b) with t^2 = -1."""
    r = place.residue_characteristic
    if place.kind == "degree_one":
        pi = place.generator
        u = (-pi.re * pow(pi.im, -1, r)) % r
        dd = (d.re + d.im * u) % r
        return 1 + sum(1 for x in range(r) for y in range(r) if (y * y - x**3 + dd * x) % r == 0)
    els = [(a, b) for a in range(r) for b in range(r)]

    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % r, (x[0] * y[1] + x[1] * y[0]) % r)

    sq = {}
    for y in els:
        s = mul(y, y)
        sq[s] = sq.get(s, 0) + 1
    dd = (d.re % r, d.im % r)
    total = 1
    for x in els:
        x3 = mul(mul(x, x), x)
        dx = mul(dd, x)
        total += sq.get(((x3[0] - dx[0]) % r, (x3[1] - dx[1]) % r), 0)
    return total


def test_count_examples():
    assert count_points(1, G(-1, 2)) == 8
    assert count_points(1, G(-3)) == 16
    n = count_points(1, classify_prime(G(3, 2)))
    assert abs(13 + 1 - n) <= 2 * math.sqrt(13)


def test_hecke_examples():
    assert hecke_at_prime(1, G(-1, 2)).value == G(-1, 2)
    assert hecke_at_prime(1, G(-3)).value == G(-3)
    for v in odd_places(500):
        if v.kind == "degree_one":
            assert hecke_at_prime(G(0, 1), v).value == unit_supplement(v.generator).conj().gauss() * v.generator


def test_verify_examples():
    assert verify_trace(1, G(-1, 2))
    assert verify_trace(1, G(-3))
    assert expected_count(1, G(-1, 2)) == 8


def test_bad_and_capped():
    with pytest.raises(BadReduction):
        count_points(G(-1, 2), G(-1, 2))
    with pytest.raises(BadReduction):
        hecke_at_prime(1, G(1, 1))
    with pytest.raises(EffortBound):
        count_points(1, G(-1, 2), cap=3)


@pytest.mark.parametrize("v", [v for v in odd_places(400)], ids=str)
def test_count_matches_brute_force(v):
    for d in (G(1), G(0, 1), G(2, 3), G(-5, 7)):
        if v.generator.divides(d):
            continue
        assert count_points(d, v) == brute_count(d, v)


@settings(max_examples=60)
@given(st.integers(-300, 300), st.integers(-300, 300), st.integers(0, 60))
def test_hasse_and_norm(a, b, j):
    d = G(a, b)
    places = [v for v in odd_places(3000) if not v.generator.divides(d)]
    if not d or not places:
        return
    v = places[j % len(places)]
    n = count_points(d, v)
    assert abs(v.norm + 1 - n) <= 2 * math.sqrt(v.norm)
    if v.kind == "degree_one":
        chi = hecke_at_prime(d, v).value
        assert chi.norm() == v.norm
    assert n == expected_count(d, v)


@given(st.integers(-200, 200), st.integers(-200, 200), st.integers(1, 20), st.integers(-20, 20))
def test_fourth_power_twist(a, b, xr, xi):
    d, x = G(a, b), G(xr, xi)
    if not d:
        return
    for v in odd_places(300):
        if v.generator.divides(d * x) or v.kind != "degree_one":
            continue
        assert hecke_at_prime(x**4 * d, v) == hecke_at_prime(d, v)
