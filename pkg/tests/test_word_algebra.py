import itertools
import math
import time

import pytest
import sympy
from hypothesis import given, strategies as st

from modmat.surd import Surd
from modmat.word_algebra import (ClassificationError, Kind, Letter, NoMixedLettersError, Side, WordError,
                                 canonical_rotation, classify, compose, cyclically_equal, derivative, eigenvalue,
                                 fixed_points, multiplier, orbit_cycle, swap_reverse, word_report)
from conftest import to_sympy

S3, S5 = Surd(0, 1, 1, 3), Surd(0, 1, 1, 5)
mixed_words = st.text("ab", min_size=2, max_size=10).filter(lambda s: "a" in s and "b" in s)


def all_mixed(max_len):
    for n in range(2, max_len + 1):
        for t in itertools.product("ab", repeat=n):
            if "a" in t and "b" in t:
                yield "".join(t)


def chain_rule_derivative(word, x):
    """Oracle: walk x through the letters (rightmost first), multiplying letter derivatives."""
    total = Surd(1)
    for ch in reversed(word):
        if ch == "b":
            total = total * (x + 1) ** -2
            x = x / (x + 1)
        else:
            x = x + 1
    return total, x


def test_example_matrix_and_trace():
    w = compose("aab")
    assert w.matrix == (3, 2, 1, 1)
    assert w.trace == 4 and classify(w) is Kind.HYPERBOLIC
    assert w(Surd(0)) == 2
    assert compose("ab").trace == 3 and compose("ba").trace == 3
    assert compose("a").matrix == (1, 1, 0, 1)
    assert classify(compose("a")) is Kind.PARABOLIC


def test_example_fixed_points_and_cycles():
    t0 = time.perf_counter()
    w = compose("aab")
    pair = fixed_points(w)
    assert pair.x_minus == -(S3 - 1) and pair.x_plus == S3 + 1
    assert orbit_cycle(w, Side.MINUS) == [-(S3 - 1), -(S3 + 1), -S3]
    assert orbit_cycle(w, Side.PLUS) == [S3 + 1, S3 - 1, S3]
    assert time.perf_counter() - t0 < 0.01


def test_small_word_values():
    ab, ba = compose("ab"), compose("ba")
    assert fixed_points(ab).x_minus == (1 - S5) / 2 and fixed_points(ab).x_plus == (1 + S5) / 2
    assert fixed_points(ba).x_minus == -(1 + S5) / 2 and fixed_points(ba).x_plus == (S5 - 1) / 2
    assert eigenvalue(ab) == (3 + S5) / 2
    assert multiplier(ab) == (7 + 3 * S5) / 2
    assert multiplier(compose("aab")) == 7 + 4 * S3
    assert orbit_cycle(ab, Side.MINUS) == [(1 - S5) / 2, -(1 + S5) / 2]


def test_errors():
    with pytest.raises(WordError):
        compose("")
    with pytest.raises(WordError):
        compose("abc")
    with pytest.raises(NoMixedLettersError):
        fixed_points(compose("aaa"))
    with pytest.raises(ClassificationError):
        multiplier(compose("a"))


@pytest.mark.parametrize("r", range(2, 12))
def test_block_multiplier_formula(r):
    w = compose("a" * (r - 1) + "b")
    lam = Surd(r + 1, 1, 2, r * r + 2 * r - 3)
    assert eigenvalue(w) == lam
    assert r * r < multiplier(w) < (r + 1) ** 2


@given(mixed_words)
def test_matrix_invariants(s):
    w = compose(s)
    a, b, c, d = w.matrix
    assert a * d - b * c == 1
    assert min(w.matrix) >= 1 and w.trace >= 3


@given(mixed_words)
def test_fixed_points_solve_quadratic_exactly(s):
    w = compose(s)
    a, b, c, d = w.matrix
    pair = fixed_points(w)
    for x in (pair.x_minus, pair.x_plus):
        assert x * x * c + x * (d - a) - b == 0
    assert pair.x_minus < 0 < pair.x_plus
    # independent CAS root
    z = sympy.symbols("z")
    roots = sorted(sympy.solve(c * z ** 2 + (d - a) * z - b, z), key=lambda e: float(e))
    assert sympy.simplify(to_sympy(pair.x_minus) - roots[0]) == 0


def test_multiplier_equals_chain_rule_for_all_short_words():
    for s in all_mixed(10):
        w = compose(s)
        mu = multiplier(w)
        chain, back = chain_rule_derivative(s, fixed_points(w).x_minus)
        assert back == fixed_points(w).x_minus
        assert chain == mu
        assert abs(float(chain) - float(mu)) <= 1e-12 * float(mu)


@given(mixed_words)
def test_attracting_end_and_mirror(s):
    w = compose(s)
    assert derivative(w, fixed_points(w).x_plus) == 1 / multiplier(w)
    assert derivative(w, fixed_points(w).x_minus) == multiplier(w)
    assert multiplier(swap_reverse(w)) == multiplier(w)


@given(mixed_words)
def test_cycle_closes(s):
    w = compose(s)
    for side in Side:
        cyc = orbit_cycle(w, side)
        x = cyc[-1]
        x = x + 1 if w.letters[0] is Letter.ALPHA else x / (x + 1)
        assert x == cyc[0] and len(cyc) == len(s)


@given(mixed_words, st.integers(0, 9))
def test_cyclic_equivalence(s, k):
    k %= len(s)
    assert cyclically_equal(compose(s), compose(s[k:] + s[:k]))
    assert compose(s[k:] + s[:k]).trace == compose(s).trace
    assert canonical_rotation(compose(s).letters)[0] is Letter.ALPHA


def test_report_decimal_digits():
    rep = word_report(compose("aab"))
    assert rep["x_plus"]["exact"] == "(1+1*sqrt(3))/1"
    assert math.isclose(float(rep["multiplier"]["decimal"]), 13.928203230275509, rel_tol=1e-16)
