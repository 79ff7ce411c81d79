"""Finite field tables: axioms checked exhaustively on small orders."""

import pytest
from hypothesis import given, strategies as st

from deodhar.errors import ConfigError
from deodhar.gf import _MODULUS, field

ALL_ORDERS = sorted(
    {2, 3, 5, 7} | set(_MODULUS.keys())
)
SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49]


@pytest.mark.parametrize("q", ALL_ORDERS)
def test_fields_construct(q):
    f = field(q)
    assert f.order == q
    assert f.char in (2, 3, 5, 7)
    # the generator really has full multiplicative order
    seen = set()
    x = 1
    for _ in range(q - 1):
        seen.add(x)
        x = f.mul(x, f.generator)
    assert len(seen) == q - 1


def test_bad_orders_rejected():
    with pytest.raises(ConfigError):
        field(11)
    with pytest.raises(ConfigError):
        field(1024)
    with pytest.raises(ConfigError):
        field(6)


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    f = field(q)
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a != 0:
            assert f.mul(a, f.inv(a)) == 1
            assert f.mul(f.div(1, a), a) == 1
        # x^q = x
        assert f.pow(a, q) == a
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
    # spot associativity and distributivity on a grid
    grid = els[: min(len(els), 6)]
    for a in grid:
        for b in grid:
            for c in grid:
                assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_frobenius_is_additive(q):
    f = field(q)
    for a in f.elements():
        for b in f.elements():
            assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))


def test_f4_explicit_table():
    f = field(4)
    # 2 encodes x, 3 encodes x+1, modulo x^2 + x + 1
    assert f.mul(2, 2) == 3
    assert f.mul(2, 3) == 1
    assert f.inv(2) == 3
    assert f.add(2, 3) == 1
    assert f.add(2, 2) == 0


def test_artin_schreier_image_f4():
    f = field(4)
    image = {f.sub(f.mul(c, c), c) for c in f.elements()}
    assert image == {0, 1}


@given(st.sampled_from([64, 81, 125, 128, 243, 256, 343, 512]), st.data())
def test_axioms_sampled_large(q, data):
    f = field(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(0, q - 1))
    c = data.draw(st.integers(0, q - 1))
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    if a != 0:
        assert f.mul(a, f.inv(a)) == 1
    assert f.pow(a, q) == a


def test_zero_division():
    f = field(9)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
