
import pytest
import sympy
from hypothesis import given, strategies as st

from modmat.surd import Surd, mobius, squarefree_split
from conftest import to_sympy

ints = st.integers(-50, 50)
rad = st.sampled_from([2, 3, 5, 6, 7, 10, 12, 45])


@st.composite
def surds(draw, D=None):
    return Surd(draw(ints), draw(ints), draw(st.integers(1, 20)), D if D is not None else draw(rad))


@given(st.integers(1, 10 ** 6))
def test_squarefree_split(n):
    k, m = squarefree_split(n)
    assert k * k * m == n
    assert all(m % (f * f) for f in range(2, 200))


def test_normal_form():
    assert Surd(0, 3, 1, 45) == Surd(0, 9, 1, 5)
    assert str(Surd(2, 2, 4, 3)) == "(1+1*sqrt(3))/2"
    assert Surd(4, 2, 2, 4).is_rational and Surd(4, 2, 2, 4) == 4
    assert str(Surd(-6, 0, 4)) == "-3/2"


@given(surds(D=5), surds(D=5))
def test_field_ops_match_sympy(x, y):
    for got, want in ((x + y, to_sympy(x) + to_sympy(y)), (x * y, to_sympy(x) * to_sympy(y)),
                      (x - y, to_sympy(x) - to_sympy(y))):
        assert sympy.simplify(to_sympy(got) - want) == 0
    if y:
        assert sympy.simplify(to_sympy(x / y) - to_sympy(x) / to_sympy(y)) == 0


@given(surds(), surds())
def test_order_matches_high_precision(x, y):
    if x.D != y.D and not (x.is_rational or y.is_rational):
        with pytest.raises(ValueError):
            x + y
        return
    sx, sy = to_sympy(x), to_sympy(y)
    if sympy.simplify(sx - sy) == 0:
        assert x == y
    else:
        assert (x < y) == bool(sympy.N(sx - sy, 60) < 0)


@given(surds())
def test_floor_matches_sympy(x):
    assert x.floor() == int(sympy.floor(to_sympy(x)))


def test_decimal_has_17_digits():
    s = Surd(1, 1, 1, 3).decimal_str()
    assert s == "2.7320508075688772"


def test_mobius_pole():
    with pytest.raises(ZeroDivisionError):
        mobius((1, 0, 1, 1), Surd(-1))
    assert mobius((3, 2, 1, 1), Surd(1, 0, 2)) == Surd(7, 0, 3)
