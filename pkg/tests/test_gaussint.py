import itertools
import json

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gauss_ints
from heckeroot.errors import EvenInput, NotPrime, ZeroInput
from heckeroot.gaussint import (
    ONE_PLUS_I,
    UNITS,
    GaussInt,
    PrimaryFactorization,
    classify_prime,
    expand_base_1pi,
    factor_primary,
    gcd,
    inverse_mod,
    odd_places,
    primary_associate,
    xgcd,
)

G = GaussInt


def test_ring_basics():
    a, b = G(3, -2), G(-1, 5)
    assert a + b == G(2, 3)
    assert a * b == G(7, 17)
    assert a - 1 == G(2, -2)
    assert 2 * a == G(6, -4)
    assert G(1, 1) ** 4 == G(-4)
    assert (ONE_PLUS_I**2) == G(0, 2)


@given(gauss_ints(), gauss_ints())
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(gauss_ints(), gauss_ints(10**4))
def test_division_with_remainder(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert 2 * r.norm() <= b.norm()


def test_division_ties_round_down():
    # 7+3i = 2(3+i) + (1+i); 3.5 -> 3 and 1.5 -> 1
    assert divmod(G(7, 3), G(2)) == (G(3, 1), G(1, 1))
    assert divmod(G(-7, -3), G(2)) == (G(-4, -2), G(1, 1))


@pytest.mark.parametrize(
    "text,value",
    [("-1+2i", G(-1, 2)), (" 3 - i ", G(3, -1)), ("-i", G(0, -1)), ("i", G(0, 1)),
     ("7", G(7)), ("4i", G(0, 4)), ("-12-34i", G(-12, -34)), ("0", G(0))],
)
def test_parse(text, value):
    assert GaussInt.parse(text) == value


@given(gauss_ints(nonzero=False))
def test_str_parse_roundtrip(a):
    assert GaussInt.parse(str(a)) == a


@pytest.mark.parametrize("bad", ["", "1+", "i2", "1+2", "a+bi", "1.5"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        GaussInt.parse(bad)


def test_primary_associate_examples():
    assert primary_associate(G(1, 2)) == (G(-1), G(-1, -2))
    assert primary_associate(G(1)) == (G(1), G(1))
    assert primary_associate(G(-3)) == (G(1), G(-3))
    with pytest.raises(EvenInput):
        primary_associate(G(1, 1))
    with pytest.raises(ZeroInput):
        primary_associate(G(0))


@given(gauss_ints(10**5).filter(lambda a: a.is_odd()))
def test_primary_witness_unique(a):
    u, b = primary_associate(a)
    assert u**4 == G(1) and u * a == b
    assert sum(x.is_primary() for x in a.associates()) == 1
    # primary means = 1 mod 2(1+i)
    assert G(2, 2).divides(b - 1)


def test_factor_examples():
    assert factor_primary(G(2)) == PrimaryFactorization(3, 2, ())
    assert factor_primary(G(-1, 2)) == PrimaryFactorization(0, 0, ((G(-1, 2), 1),))
    assert factor_primary(G(0, 1)) == PrimaryFactorization(1, 0, ())


@settings(max_examples=300)
@given(gauss_ints(10**7))
def test_factor_roundtrip_and_keys(a):
    f = factor_primary(a)
    assert f.value() == a
    keys = [p for p, _ in f.odd]
    assert keys == sorted(keys, key=lambda p: p.sort_key())
    for p, e in f.odd:
        assert e > 0 and p.is_primary()
        classify_prime(p)
    for p, q in itertools.combinations(keys, 2):
        assert p not in q.associates()


def _is_gaussian_prime(g):
    # independent test: prime norm, or a rational prime 3 mod 4 up to units
    n = g.norm()
    if sympy.isprime(n):
        return True
    r = sympy.integer_nthroot(n, 2)
    return r[1] and sympy.isprime(r[0]) and r[0] % 4 == 3 and (g.re == 0 or g.im == 0)


def test_factors_are_gaussian_primes():
    for a in [G(1000, 1), G(-360, 77), G(2**10 * 3**5), G(123, -456), G(9, 0) * G(7, 0) * G(2, 1)]:
        f = factor_primary(a)
        assert f.value() == a
        assert all(_is_gaussian_prime(p) for p, _ in f.odd)
    assert factor_primary(G(2**10 * 3**5)).odd == ((G(-3), 5),)


def test_factorization_json_roundtrip():
    f = factor_primary(G(-4, 22) * G(3))
    s = json.dumps(f.to_json())
    assert PrimaryFactorization.from_json(json.loads(s)) == f
    assert set(f.to_json()) == {"n_u", "n_2", "odd"}


def test_classify_examples():
    assert (classify_prime(G(-1, 2)).kind, classify_prime(G(-1, 2)).residue_characteristic) == ("degree_one", 5)
    assert (classify_prime(G(-3)).kind, classify_prime(G(-3)).residue_characteristic) == ("degree_two", 3)
    assert (classify_prime(G(1, 1)).kind, classify_prime(G(1, 1)).residue_characteristic) == ("even", 2)
    assert classify_prime(G(0, 3)).generator == G(-3)
    for bad in (G(1), G(0, -1), G(5), G(3, 3), G(9), G(0)):
        with pytest.raises(NotPrime):
            classify_prime(bad)


def test_primary_patterns_up_to_10000():
    for v in odd_places(10**4):
        pat = (v.generator.re % 4, v.generator.im % 4)
        assert (pat == (1, 0)) != (pat == (3, 2))


def test_odd_places_counts():
    # 1 + (#split primes)*2 + (#inert q with q^2 <= B) against a direct count
    B = 2000
    expect = sum(2 for p in sympy.primerange(3, B + 1) if p % 4 == 1)
    expect += sum(1 for q in sympy.primerange(3, int(B**0.5) + 1) if q % 4 == 3)
    assert len(odd_places(B)) == expect


@pytest.mark.parametrize(
    "d,digits",
    [(G(-2, 2), (0, 0, 0, 1, 0, 0)), (G(1), (1, 0, 0, 0, 0, 0)), (G(0, 1), (1, 1, 1, 1, 1, 1))],
)
def test_expand_examples(d, digits):
    assert expand_base_1pi(d, 6) == digits


@given(gauss_ints(10**9), st.integers(1, 32))
def test_expand_reassembles(d, k):
    digits = expand_base_1pi(d, k)
    s = sum((ONE_PLUS_I**j * x for j, x in enumerate(digits)), start=G(0))
    assert (ONE_PLUS_I**k).divides(d - s)


@given(gauss_ints(10**4), gauss_ints(10**4))
def test_xgcd_and_inverse(a, b):
    g, s, t = xgcd(a, b)
    assert s * a + t * b == g
    assert g.divides(a) and g.divides(b)
    if gcd(a, b).is_unit() and not b.is_unit():
        inv = inverse_mod(a, b)
        assert b.divides(inv * a - 1)


def test_units_constant():
    assert set(UNITS) == {G(1), G(0, 1), G(-1), G(0, -1)}
