"""The correspondence family: covering branches of Z^2 + ZW + W^2 = 3, the
involution J_a, the forward branch f_a, the alpha fixed point and its
multiplier zeta(a).

Membership of the standard fundamental domain is decided in the lifted
w-plane, where Z = w + 1/w and the domain is the sector |arg w| < pi/3.
Scalar and array code paths share the same numpy formulas so that a
single orbit and a rendered pixel agree bit for bit.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

log = logging.getLogger(__name__)

THIRD_PI = math.pi / 3
OMEGA = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
# margin (radians) inside the sector that counts as escaped; keeps points
# that creep along the boundary towards the parabolic point Z=1 from
# escaping on rounding noise
ESCAPE_MARGIN = 1e-9


class SingularParameterError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere; ``at_infinity`` overrides ``value``."""

    value: complex = 0j
    at_infinity: bool = False

    @classmethod
    def of(cls, z):
        if isinstance(z, SpherePoint):
            return z
        z = complex(z)
        if cmath.isinf(z):
            return INFINITY
        return cls(z)

    def __str__(self):
        return "inf" if self.at_infinity else format_complex(self.value)


INFINITY = SpherePoint(0j, True)


class Escape(Enum):
    ESCAPED = "escaped"


def format_complex(z):
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


@dataclass(frozen=True)
class Parameter:
    a: complex

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if self.a == 1:
            raise SingularParameterError("the correspondence is undefined at a = 1")

    @property
    def b(self):
        return (self.a - 7) / (self.a - 1)

    @classmethod
    def from_b(cls, b):
        b = complex(b)
        if b == 1:
            raise SingularParameterError("b = 1 corresponds to a = infinity")
        return cls((b - 7) / (b - 1))


def _param(a):
    return a if isinstance(a, Parameter) else Parameter(a)


# ---- array primitives ------------------------------------------------------

def lift(Z):
    """w with Z = w + 1/w and |w| >= 1, as a product of principal roots."""
    Z = np.asarray(Z, dtype=np.complex128)
    h = Z / 2
    return h + np.sqrt(h - 1) * np.sqrt(h + 1)


def sector_escaped(w, margin=0.0):
    return np.abs(np.angle(w)) < THIRD_PI - margin


def branch_in_domain(Z, w):
    """The covering branch of Z lying in the domain, given the lift w of Z.

    Rotating w into the sector gives the branch as u + 1/u; the returned
    value is the root of W^2 + ZW + Z^2 = 3 nearest to it, which keeps real
    input on [-2, 2] exactly real.
    """
    u = np.where(np.angle(w) >= 0, w * OMEGA.conjugate(), w * OMEGA)
    rough = u + 1 / u
    r = np.sqrt(12 - 3 * Z * Z)
    W1, W2 = (-Z + r) / 2, (-Z - r) / 2
    exact = np.where(np.abs(W1 - rough) <= np.abs(W2 - rough), W1, W2)
    return np.where(np.abs(Z) < 1e12, exact, rough)


def j_array(a, Z):
    """J_a on arrays; non-finite entries of Z stand for infinity."""
    a = np.asarray(a, np.complex128)
    Z = np.asarray(Z, np.complex128)
    with np.errstate(all="ignore"):
        out = ((1 + a) * Z - 2 * a) / (2 * Z - (1 + a))
        out = np.where(np.isfinite(Z), out, (1 + a) / 2)
        out = np.where(2 * Z == 1 + a, complex(np.inf, 0), out)
    return out


def escape_iterate(a, Z, max_iter, plus=False, margin=ESCAPE_MARGIN):
    """Escape times of points Z under f_a (or, with ``plus``, under its
    J_a-conjugate whose non-escaping set is the forward limit set).

    ``a`` and ``Z`` are broadcastable arrays. Returns (index, last) where
    index is -1 for points that never escape within ``max_iter`` steps and
    last is the final iterate examined (the escape point itself when escaped).
    """
    a, Z = np.broadcast_arrays(np.asarray(a, np.complex128), np.asarray(Z, np.complex128))
    shape = Z.shape
    aa = a.ravel().copy()
    za = Z.ravel().copy()
    index = np.full(za.size, -1, dtype=np.int64)
    last = za.copy()
    active = np.arange(za.size)
    with np.errstate(all="ignore"):
        for k in range(max_iter + 1):
            if active.size == 0:
                break
            y = j_array(aa, za) if plus else za
            w = lift(y)
            esc = sector_escaped(w, margin) & np.isfinite(y)
            if esc.any():
                hit = active[esc]
                index[hit] = k
                last[hit] = za[esc]
                keep = ~esc
                active, aa, za, y, w = active[keep], aa[keep], za[keep], y[keep], w[keep]
            if k == max_iter:
                break
            W = np.where(np.isfinite(y), branch_in_domain(y, w), complex(np.inf, 0))
            za = W if plus else j_array(aa, W)
    last[active] = za
    return index.reshape(shape), last.reshape(shape)


# ---- scalar API ------------------------------------------------------------

def _scalar(z):
    return complex(np.complex128(z))


def cov_branches(Z):
    """Both roots W of W^2 + Z W + Z^2 = 3."""
    Z = SpherePoint.of(Z)
    if Z.at_infinity:
        return INFINITY, INFINITY
    z = Z.value
    r = cmath.sqrt(12 - 3 * z * z)
    return SpherePoint((-z + r) / 2), SpherePoint((-z - r) / 2)


def j_involution(a, Z):
    """J_a(Z) = ((1+a)Z - 2a) / (2Z - (1+a)), the involution fixing 1 and a."""
    a = _param(a).a
    Z = SpherePoint.of(Z)
    if Z.at_infinity:
        return SpherePoint((1 + a) / 2)
    den = 2 * Z.value - (1 + a)
    if den == 0:
        return INFINITY
    return SpherePoint(((1 + a) * Z.value - 2 * a) / den)


def in_delta_cov(Z, margin=0.0):
    """Strict membership of the standard covering domain; infinity is not inside."""
    Z = SpherePoint.of(Z)
    if Z.at_infinity:
        return False
    return bool(sector_escaped(lift(Z.value), margin))


def f_map(a, Z, margin=ESCAPE_MARGIN):
    """One step of f_a: Escape.ESCAPED if Z is in the domain, else J_a of the
    covering branch lying in the domain."""
    # one-element arrays so that the arithmetic matches escape_iterate exactly
    a = np.array([_param(a).a])
    Z = SpherePoint.of(Z)
    if Z.at_infinity:
        return SpherePoint.of(_scalar(j_array(a, np.array([np.inf]))[0]))
    z = np.array([Z.value])
    w = lift(z)
    if sector_escaped(w, margin)[0]:
        return Escape.ESCAPED
    if abs(float(np.angle(w[0]))) == math.pi:
        log.debug("Z=%s lies on the slit of both branches; taking the clockwise rotation", Z)
    with np.errstate(all="ignore"):
        return SpherePoint.of(_scalar(j_array(a, branch_in_domain(z, w))[0]))


@dataclass(frozen=True)
class OrbitResult:
    points: list
    escape_index: object  # int, or None when the budget elapsed

    @property
    def escaped(self):
        return self.escape_index is not None


def orbit(a, Z, n_max, margin=ESCAPE_MARGIN):
    """Iterate f_a from Z until the orbit enters the domain or n_max steps pass.

    ``points`` lists Z_0 = Z, Z_1, ... up to and including the escaping
    iterate (or n_max + 1 points when there is no escape).
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    a = _param(a)
    z = SpherePoint.of(Z)
    points = [z]
    for k in range(n_max + 1):
        nxt = f_map(a, z, margin)
        if nxt is Escape.ESCAPED:
            return OrbitResult(points, k)
        if k == n_max:
            break
        z = nxt
        points.append(z)
    return OrbitResult(points, None)


def critical_value(a):
    """v_a = J_a(2), the image of the critical point Z = -1."""
    with np.errstate(all="ignore"):
        return SpherePoint.of(_scalar(j_array(np.array([_param(a).a]), np.array([2.0]))[0]))


@dataclass(frozen=True)
class FixedPointData:
    z0: complex
    Z0: complex
    zeta: complex
    E: object  # complex, or None at a pole of the E prefactor


def alpha_z0(a):
    """z0 = -sqrt((7-a)/(3(a+1))), negative for real a in (-1, 7)."""
    a = _param(a).a
    if a == -1:
        raise SingularParameterError("a = -1 is singular for the alpha fixed point")
    return -cmath.sqrt((7 - a) / (3 * (a + 1)))


def multiplier_zeta(a):
    a = _param(a).a
    z0 = alpha_z0(a)
    k = a * a - 2 * a - 11
    m = (a + 1) * (7 - a) * z0
    return (k + m) / (k - m)


def e_value(a=None, b=None):
    """E with zeta = (1+E)/(1-E); the square root branch is tied to z0."""
    if (a is None) == (b is None):
        raise ValueError("give exactly one of a and b")
    if b is None:
        b = _param(a).b
    b = complex(b)
    if b == 4:
        raise SingularParameterError("b = 4 (a = -1) is singular")
    den = 2 + 2 * b - b * b
    if den == 0:
        raise PoleError(f"E has a pole at b = {format_complex(b)}")
    z0 = -cmath.sqrt(b / (b - 4))
    return b * (b - 4) * z0 / den


def alpha_fixed_point(a):
    p = _param(a)
    z0 = alpha_z0(p)
    Z0 = (p.a * z0 + 1) / (z0 + 1)
    try:
        E = e_value(a=p)
    except PoleError:
        E = None
    return FixedPointData(z0, Z0, multiplier_zeta(p), E)


def relation_residual(a, z, w):
    """Left side minus 3 of the defining relation of F_a in the z-coordinate."""
    a = _param(a).a
    A = (a * z + 1) / (z + 1)
    B = (a * w - 1) / (w - 1)
    return A * A + A * B + B * B - 3


def green_chi(z):
    """chi(z) = log|(z+i)/(z-i)| / 2 on the upper half-plane."""
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("green_chi needs Im z > 0")
    if z == 1j:
        raise PoleError("chi is infinite at z = i")
    return 0.5 * math.log(abs((z + 1j) / (z - 1j)))


def zeta_report(a):
    d = alpha_fixed_point(a)
    z = d.zeta
    out = {
        "a": format_complex(complex(_param(a).a)),
        "z0": _cjson(d.z0),
        "Z0": _cjson(d.Z0),
        "zeta": _cjson(z),
        "E": None if d.E is None else _cjson(d.E),
        "abs_zeta": abs(z),
        "arg_zeta": cmath.phase(z),
        "log_zeta": _cjson(cmath.log(z)) if z != 0 else None,
    }
    return out


def _cjson(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}
