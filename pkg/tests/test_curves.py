import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gauss_ints
from heckeroot.curves import (
    REDUCTION_TABLE,
    CurveClass,
    epsilon_order,
    lookup_digits,
    normalize_d,
    odd_conductor,
    reduction_at_two,
    twist,
)
from heckeroot.errors import EvenPlace, NotFourthPowerFree, TableMiss, ZeroInput
from heckeroot.gaussint import GaussInt, classify_prime, expand_base_1pi, factor_primary, odd_places

G = GaussInt


def test_table_shape():
    assert len(REDUCTION_TABLE) == 12
    # prefixes form a prefix-free code
    ps = [p for p, _, _ in REDUCTION_TABLE]
    for a in ps:
        for b in ps:
            assert a == b or not b.startswith(a)
    with pytest.raises(TableMiss):
        lookup_digits((0, 0, 0, 0, 1, 0))


@pytest.mark.parametrize(
    "d,expect",
    [(G(-2, 2), ("III*", 14)), (G(1), ("I2*", 6)), (G(0, 1), ("II", 12)), (G(1, 2), ("good", 0))],
)
def test_reduction_examples(d, expect):
    assert reduction_at_two(d) == expect


def test_reduction_rejects_fourth_power_of_1_plus_i():
    with pytest.raises(NotFourthPowerFree):
        reduction_at_two(G(-4))


@pytest.mark.parametrize(
    "d,expect",
    [(G(16), (G(1), G(2))), (G(-4), (G(1), G(1, 1))), (G(-1, 2), (G(-1, 2), G(1)))],
)
def test_normalize_examples(d, expect):
    assert normalize_d(d) == expect


@given(gauss_ints(10**5), gauss_ints(30))
def test_normalize_strips_fourth_powers(d, x):
    d1, y = normalize_d(d * x**4)
    assert y**4 * d1 == d * x**4
    assert factor_primary(d1).is_fourth_power_free()
    assert normalize_d(d1) == (d1, G(1))
    assert y.re > 0 and y.im >= 0


def test_normalize_zero():
    with pytest.raises(ZeroInput):
        normalize_d(G(0))


def test_twist_examples():
    pi = G(-1, 2)
    assert twist(CurveClass.from_d(pi), G(3, 1) ** 4).d == pi
    assert twist(CurveClass.from_d(1), G(0, 1)).d == G(0, 1)


@given(gauss_ints(10**4), gauss_ints(50))
def test_twist_is_class_invariant(d, x):
    assert twist(CurveClass.from_d(d), x**4) == CurveClass.from_d(d)


def test_odd_conductor_examples():
    assert odd_conductor(CurveClass.from_d(G(-1, 2))) == {G(-1, 2): 2}
    assert odd_conductor(CurveClass.from_d(1)) == {}
    assert odd_conductor(CurveClass.from_d(G(21) * G(-1, 2))) == {G(-3): 2, G(-7): 2, G(-1, 2): 2}


def test_curve_class_fields():
    c = CurveClass.from_d(G(0, 1) * G(-3) ** 2 * G(1, 1))
    assert c.valuation(G(-3)) == 2
    assert [v.generator for v in c.bad_places()] == [G(-3)]
    assert not c.good_at_two
    assert c.conductor()[G(1, 1)] == c.f2
    js = c.to_json()
    assert js["d"] == str(c.d) and js["kodaira_at_1+i"] == c.kodaira
    assert CurveClass.from_d(G(1, 2)).good_at_two


@pytest.mark.parametrize("n,order", [(1, 4), (2, 2), (3, 4), (0, 1)])
def test_epsilon_order_examples(n, order):
    for v in odd_places(400):
        d = v.generator**n if n else G(1, 2) if not v.generator.divides(G(1, 2)) else G(3)
        assert epsilon_order(CurveClass.from_d(d), v) == order


def test_epsilon_order_even_place():
    with pytest.raises(EvenPlace):
        epsilon_order(CurveClass.from_d(G(3)), classify_prime(G(1, 1)))


@given(st.integers(-60, 60), st.integers(-60, 60))
def test_table_total_on_small_disc(a, b):
    d = G(a, b)
    if not d or not factor_primary(d).is_fourth_power_free():
        return
    kod, f2 = reduction_at_two(d)
    digits = "".join(map(str, expand_base_1pi(d, 6)))
    assert any(digits.startswith(p) for p, k, f in REDUCTION_TABLE if (k, f) == (kod, f2))
