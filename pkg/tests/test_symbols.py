import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import gauss_ints
from heckeroot.errors import EvenModulus, NotCoprime
from heckeroot.gaussint import GaussInt, gcd, odd_places, primary_associate
from heckeroot.symbols import (
    Mu4,
    jacobi_symbol,
    mu4_from_complex,
    norm_reciprocity_sign,
    one_plus_i_supplement,
    quartic_symbol,
    quartic_symbol_composite,
    quartic_symbol_fast,
    reciprocity_sign,
    unit_supplement,
)

G = GaussInt
UNIT_OF = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


def symbol_by_powering(alpha, pi):
    """alpha**((N pi - 1)/4) in Z[i]/pi, matched against the four units."""
    r = alpha.powmod((pi.norm() - 1) // 4, pi)
    for u, k in UNIT_OF.items():
        if pi.divides(r - G(*u)):
            return Mu4(k)
    raise AssertionError("power is not a unit mod pi")


PRIMES = [v.generator for v in odd_places(3000)]


def test_mu4_group():
    for a, b in itertools.product(range(4), repeat=2):
        assert Mu4(a) * Mu4(b) == Mu4(a + b)
        assert Mu4(a) / Mu4(b) == Mu4(a - b)
        assert complex(Mu4(a)) * complex(Mu4(b)) == pytest.approx(complex(Mu4(a + b)))
    assert Mu4(1).conj() == Mu4(3)
    assert Mu4(1) ** 4 == Mu4(0)
    assert Mu4(3).gauss() == G(0, -1)
    assert mu4_from_complex(-1j) == Mu4(3)
    assert mu4_from_complex(0.7 + 0.7j) is None


def test_symbol_examples():
    assert quartic_symbol(G(0, 1), G(3, 2)) == Mu4(3)
    assert quartic_symbol(2, G(3)) == Mu4(0)
    assert quartic_symbol(G(1, 1), G(3, 2)) == Mu4(3)
    assert quartic_symbol_composite(5, G(21)) == Mu4(0)
    assert quartic_symbol_fast(G(-1, 2), G(3, 2)) == Mu4(0)
    assert quartic_symbol_fast(G(3, 2), G(-1, 2)) == Mu4(2)
    assert jacobi_symbol(2, 15) == 1
    assert jacobi_symbol(12345, 1) == 1


def test_symbol_errors():
    with pytest.raises(NotCoprime):
        quartic_symbol(G(5), G(-1, 2))
    with pytest.raises(NotCoprime):
        quartic_symbol_fast(G(0), G(3, 2))
    with pytest.raises(EvenModulus):
        quartic_symbol_composite(G(3), G(2))
    with pytest.raises(EvenModulus):
        jacobi_symbol(3, 10)


@pytest.mark.parametrize("pi", PRIMES[:80], ids=str)
def test_symbol_matches_powering(pi):
    rng = random.Random(pi.norm())
    for _ in range(20):
        a = G(rng.randrange(-999, 999), rng.randrange(-999, 999))
        if pi.divides(a):
            continue
        assert quartic_symbol(a, pi) == symbol_by_powering(a, pi)


@pytest.mark.parametrize("pi", PRIMES[:60], ids=str)
def test_symbol_is_a_character(pi):
    rng = random.Random(7 * pi.norm())
    for _ in range(10):
        a = G(rng.randrange(1, 500), rng.randrange(-500, 500))
        b = G(rng.randrange(1, 500), rng.randrange(-500, 500))
        if pi.divides(a) or pi.divides(b):
            continue
        assert quartic_symbol(a * b, pi) == quartic_symbol(a, pi) * quartic_symbol(b, pi)
        assert quartic_symbol(a + pi * b, pi) == quartic_symbol(a, pi)


def test_reciprocity_small():
    ps = PRIMES[:60]
    for a, b in itertools.permutations(ps, 2):
        ab, ba = symbol_by_powering(a, b), symbol_by_powering(b, a)
        assert ab == ba * reciprocity_sign(a, b)
        assert ab == ba * norm_reciprocity_sign(a, b)


def test_supplements_small():
    for p in PRIMES[:200]:
        assert unit_supplement(p) == symbol_by_powering(G(0, 1), p)
        assert one_plus_i_supplement(p) == symbol_by_powering(G(1, 1), p)


def test_rational_numerators_are_trivial_at_inert_primes():
    for v in odd_places(3000):
        if v.kind == "degree_two":
            q = v.residue_characteristic
            assert all(quartic_symbol(a, v.generator) == Mu4(0) for a in range(1, min(q, 40)))


odd_primary = gauss_ints(2000).filter(lambda b: b.is_odd() and not b.is_unit()).map(lambda b: primary_associate(b)[1])


@settings(max_examples=300)
@given(gauss_ints(10**6), odd_primary)
def test_fast_equals_composite(alpha, beta):
    assume(gcd(alpha, beta).is_unit())
    assert quartic_symbol_fast(alpha, beta) == quartic_symbol_composite(alpha, beta)


@given(odd_primary, odd_primary, gauss_ints(10**4))
def test_composite_multiplicative_in_modulus(b1, b2, alpha):
    assume(gcd(alpha, b1 * b2).is_unit())
    assert quartic_symbol_composite(alpha, b1 * b2) == quartic_symbol_composite(alpha, b1) * quartic_symbol_composite(alpha, b2)


@given(st.integers(-10**6, 10**6), st.integers(0, 5000))
def test_jacobi_against_legendre_product(a, k):
    import sympy

    n = 2 * k + 1
    expect = 1
    for p, e in sympy.factorint(n).items():
        # Euler's criterion
        r = pow(a, (p - 1) // 2, p)
        expect *= (r if r <= 1 else -1) ** e
    assert jacobi_symbol(a, n) == expect
