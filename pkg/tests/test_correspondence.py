import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from modmat.correspondence import (INFINITY, Escape, Parameter, PoleError, SingularParameterError, SpherePoint,
                                   alpha_fixed_point, alpha_z0, cov_branches, critical_value, e_value,
                                   escape_iterate, f_map, green_chi, in_delta_cov, j_involution, lift,
                                   multiplier_zeta, orbit, relation_residual)

finite = st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False)
params = st.complex_numbers(max_magnitude=2.9, allow_nan=False, allow_infinity=False).map(lambda d: 4 + d)


def roots(Z):
    return sorted((p.value for p in cov_branches(Z)), key=lambda z: (z.real, z.imag))


def test_cov_branch_examples():
    assert roots(1) == pytest.approx([-2, 1])
    assert roots(-1) == pytest.approx([-1, 2])
    assert roots(2) == pytest.approx([-1, -1])
    assert cov_branches(INFINITY) == (INFINITY, INFINITY)


def test_involution_examples():
    a = 4 + 3j
    assert j_involution(a, 1).value == pytest.approx(1)
    assert j_involution(a, a).value == pytest.approx(a)
    assert j_involution(4, 2).value == pytest.approx(-2)
    assert j_involution(a, 2).value == pytest.approx(2 / (3 - a))
    assert j_involution(a, INFINITY).value == pytest.approx((1 + a) / 2)
    assert j_involution(a, (1 + a) / 2) == INFINITY
    with pytest.raises(SingularParameterError):
        j_involution(1, 0)


def test_domain_membership_examples():
    assert in_delta_cov(4)
    assert not in_delta_cov(-1)
    assert not in_delta_cov(1)
    assert not in_delta_cov(INFINITY)


def test_forward_map_examples():
    assert f_map(4, -1).value == pytest.approx(-2)
    assert f_map(5, -1).value == pytest.approx(-1)
    assert f_map(4, 10) is Escape.ESCAPED


def test_alpha_fixed_point_examples():
    assert alpha_z0(4) == pytest.approx(-1 / math.sqrt(5), abs=1e-15)
    assert alpha_z0(7) == 0
    d = alpha_fixed_point(4 + 3j)
    assert abs(relation_residual(4 + 3j, d.z0, d.z0)) < 1e-12
    with pytest.raises(SingularParameterError):
        alpha_z0(-1)


def test_multiplier_examples():
    assert abs(multiplier_zeta(4) + (3 + math.sqrt(5)) / 2) < 1e-12
    assert abs(multiplier_zeta(1 + 2 * math.sqrt(3)) + 1) < 1e-10
    assert multiplier_zeta(7) == 1


def test_e_at_b_equal_i():
    E = e_value(b=1j)
    assert abs(E) == pytest.approx(0.563171, abs=5e-7)
    assert cmath.phase(E) == pytest.approx(0.0749062, abs=5e-8)
    zeta = multiplier_zeta(Parameter.from_b(1j))
    assert abs(zeta) == pytest.approx(3.54691, abs=5e-6)
    assert (1 + E) / (1 - E) == pytest.approx(zeta, rel=1e-12)


@pytest.mark.parametrize("sign", [1, -1])
def test_e_asymptotic_near_b_zero(sign):
    alpha, t = math.pi / 3, 1e-4
    b = t * cmath.exp(sign * 1j * (math.pi - alpha))
    predicted = -t ** 1.5 * cmath.exp(-sign * 1.5j * alpha)
    assert abs(e_value(b=b) - predicted) <= 0.01 * abs(predicted)


def test_e_real_for_negative_b():
    for b in (-0.3, -1.0, -5.0, -40.0):
        assert e_value(b=b).imag == 0


def test_e_pole_and_singularity():
    with pytest.raises(PoleError):
        e_value(b=1 + math.sqrt(3))
    with pytest.raises(SingularParameterError):
        e_value(b=4)
    with pytest.raises(ValueError):
        e_value()
    assert alpha_fixed_point(Parameter.from_b(1 + math.sqrt(3))).E is None


def test_green_chi():
    assert green_chi(0.1j) == pytest.approx(math.atanh(0.1), rel=1e-14)
    assert green_chi(1 + 1j) == pytest.approx(green_chi(-1 + 1j), rel=1e-15)
    with pytest.raises(ValueError):
        green_chi(0.5)
    with pytest.raises(PoleError):
        green_chi(1j)


def direct_orbit_escapes(a, Z, n):
    """Oracle: plain cmath iteration of f_a without numpy."""
    w3 = cmath.exp(2j * math.pi / 3)
    for _ in range(n + 1):
        w = Z / 2 + cmath.sqrt(Z / 2 - 1) * cmath.sqrt(Z / 2 + 1)
        if abs(cmath.phase(w)) < math.pi / 3 - 1e-9:
            return True
        u = w * (w3.conjugate() if cmath.phase(w) >= 0 else w3)
        W = u + 1 / u
        Z = ((1 + a) * W - 2 * a) / (2 * W - (1 + a))
    return False


def test_orbit_examples():
    v4 = critical_value(4)
    assert v4.value == pytest.approx(-2)
    assert not orbit(4, v4, 2000).escaped
    r = orbit(1.1, critical_value(1.1), 2000)
    assert r.escaped and direct_orbit_escapes(1.1, critical_value(1.1).value, 2000)
    assert orbit(4, 10, 5).escape_index == 0
    assert len(orbit(4, -2, 10).points) == 11
    with pytest.raises(ValueError):
        orbit(4, 0, 0)


def test_orbit_matches_array_iterate():
    rng = np.random.default_rng(3)
    Z = rng.uniform(-4, 4, 200) + 1j * rng.uniform(-4, 4, 200)
    a = 4.5 + 0.4j
    idx, _ = escape_iterate(a, Z, 200)
    for z, k in zip(Z, idx):
        r = orbit(a, complex(z), 200)
        assert (r.escape_index if r.escaped else -1) == k


@given(finite)
def test_branches_symmetric(z):
    W1, W2 = (p.value for p in cov_branches(z))
    tol = 1e-9 * max(1, abs(z)) ** 2
    assert abs(W1 + W2 + z) < tol
    assert abs(W1 * W2 - (z * z - 3)) < tol
    for W in (W1, W2):
        assert abs(W * W + z * W + z * z - 3) < tol


def test_branch_symmetry_ten_thousand():
    rng = np.random.default_rng(0)
    Z = rng.normal(size=10_000) * 5 + 1j * rng.normal(size=10_000) * 5
    for z in Z:
        W1, W2 = (p.value for p in cov_branches(complex(z)))
        assert abs(W1 + W2 + z) < 1e-9 and abs(W1 * W2 - (z * z - 3)) < 1e-9 * max(1, abs(z)) ** 2


@given(params, finite)
def test_involution_is_involutive(a, z):
    if abs(2 * z - (1 + a)) < 1e-6:
        return
    back = j_involution(a, j_involution(a, z))
    assert abs(back.value - z) <= 1e-10 * max(1, abs(z)) ** 2


def test_fixed_point_relation_thousand():
    rng = np.random.default_rng(1)
    r = 3 * np.sqrt(rng.uniform(0, 1, 1000))
    a = 4 + r * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
    for x in a:
        d = alpha_fixed_point(complex(x))
        assert abs(relation_residual(complex(x), d.z0, d.z0)) < 1e-9
        if d.E is not None:
            assert abs((1 + d.E) / (1 - d.E) - d.zeta) <= 1e-9 * max(1, abs(d.zeta))


def test_branch_uniqueness_ten_thousand():
    # of the two covering branches of a point outside the domain, exactly one lies inside
    rng = np.random.default_rng(2)
    Z = rng.uniform(-6, 6, 10_000) + 1j * rng.uniform(-6, 6, 10_000)
    seen = 0
    for z in Z:
        w = lift(z)
        ang = abs(cmath.phase(complex(w)))
        if ang < math.pi / 3 + 1e-6 or abs(ang - math.pi) < 1e-6:
            continue
        inside = [in_delta_cov(p, 0.0) for p in cov_branches(complex(z))]
        near = [abs(abs(cmath.phase(complex(lift(p.value)))) - math.pi / 3) < 1e-6 for p in cov_branches(complex(z))]
        if any(near):
            continue
        assert sum(inside) == 1, z
        seen += 1
    assert seen > 6000  # about a third of the box lies inside the domain


def test_limit_sets_swap_under_involution():
    a, n, half = 4.5, 256, 3.5
    xs = np.linspace(a - half, a + half, n)
    Z = xs[None, :] + 1j * xs[::-1, None] - 1j * a
    Z = Z.ravel()
    minus, _ = escape_iterate(a, Z, 400)
    plus, _ = escape_iterate(a, np.asarray([j_involution(a, complex(z)).value for z in Z]), 400, plus=True)
    agree = np.mean((minus == -1) == (plus == -1))
    assert agree >= 0.999


def test_sphere_point():
    assert SpherePoint.of(complex("inf")) == INFINITY
    assert str(INFINITY) == "inf"
    assert str(SpherePoint(1 - 2j)) == "1.0-2.0i"
