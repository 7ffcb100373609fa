"""Exact certificate that the lifted circle C_d (centre 4 - d i, through Z = 1
and Z = 7) meets its covering image only at Z = 1 when |d| <= sqrt(3).

Every step is an exact polynomial identity over Z[U, V, d][sqrt 3]; the
report records the computed and expected forms of each identity.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .polynomials import Poly, RingElem, bareiss_det, canonical_str, coefficient_list, derivative, resultant, sylvester_matrix
from . import sturm
from .surd import Surd

U, V, d = Poly.var("U"), Poly.var("V"), Poly.var("d")
S3 = RingElem.sqrt3()
SAMPLE_D2 = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5, 2), Fraction(14, 5))
BOUNDARY_D2 = Fraction(3)


def _r(x):
    return RingElem.coerce(x)


# ---- stated forms, transcribed term by term -----------------------------------

def stated_lifted_circle():
    n = U * U + V * V
    return n * (n - 8 * U + 7) + 2 * d * V * (n - 1) + 2 * U * U - 2 * V * V - 8 * U + 1


def stated_rotated(sign=1):
    """The rotated curve; sign=-1 gives the conjugate with sqrt(3) -> -sqrt(3)."""
    s = S3 * sign
    Ur, Vr, dr = _r(U), _r(V), _r(d)
    n = _r(U * U + V * V)
    return (n * (n + (Ur - s * Vr) * 4 + 7)
            - dr * (s * Ur + Vr) * (n - 1)
            - Ur * Ur + Vr * Vr - s * Ur * Vr * 2 + (Ur - s * Vr) * 4 + 1)


def stated_quartic_coefficients():
    """a_4 .. a_0 as displayed."""
    Ur, dr = _r(U), _r(d)
    return [
        _r(1),
        -S3 * 4 - dr,
        Ur * Ur * 2 + (4 - dr * S3) * Ur + 8,
        (-S3 * 4 - dr) * Ur * Ur - S3 * Ur * 2 + (dr - S3 * 4),
        Ur ** 4 + (4 - dr * S3) * Ur ** 3 + Ur * Ur * 6 + (4 + dr * S3) * Ur + 1,
    ]


def stated_q():
    d2 = d * d
    return (d2 + 25) * U ** 4 + 40 * U ** 3 + (96 - 12 * d2) * U * U + (64 + 16 * d2) * U + 64


def stated_discriminant():
    d2 = d * d
    return -143327232 * d ** 4 * (d2 + 25) * (d2 - 3) * (d2 + 24) ** 2


# ---- computed forms ------------------------------------------------------------

def lifted_circle():
    """Lift of C_d to the W-plane, W = U + iV, with the factor U^2 + V^2 removed.

    X (U^2+V^2) = U (U^2+V^2+1) and Y (U^2+V^2) = V (U^2+V^2-1), substituted
    into (X-4)^2 + (Y+d)^2 = 9 + d^2 after clearing (U^2+V^2)^2.
    """
    n = U * U + V * V
    raw = (U * (n + 1) - 4 * n) ** 2 + (V * (n - 1) + d * n) ** 2 - (9 + d * d) * n * n
    return raw.exact_div(n)


def rotate_curve(eq, direction=1):
    """Image of a curve under W -> W exp(direction * 2 pi i / 3).

    A point (U', V') lies on the image when its preimage
    U = -U'/2 + direction*s V'/2, V = -direction*s U'/2 - V'/2 lies on the curve.
    """
    eq = _r(eq)
    s = S3 * direction
    half = Fraction(1, 2)
    Ur, Vr = _r(U), _r(V)
    new_u = (-Ur + s * Vr) * half
    new_v = (-(s * Ur) - Vr) * half
    return _subs_uv(eq, new_u, new_v)


def _subs_uv(eq, new_u, new_v):
    """Simultaneous substitution of U and V."""
    out = RingElem()
    for part, mult in ((eq.p, RingElem(1)), (eq.q, S3)):
        for (i, j, k), c in part.terms.items():
            out = out + mult * (new_u ** i) * (new_v ** j) * _r(Poly({(0, 0, k): c}))
    return out


def quartic_coefficients(eq):
    """Coefficients of V^4 .. V^0 of a curve equation."""
    return coefficient_list(_r(eq), "V", 4)


def intersection_resultant(a_coeffs, b_coeffs):
    return bareiss_det(sylvester_matrix(a_coeffs, b_coeffs))


def q_specialize(d2):
    """Q with d^2 replaced by an exact rational; returns a Poly in U."""
    return stated_q().substitute_square("d", Fraction(d2))


def q_discriminant(q=None):
    """Res_U(Q, Q') as a polynomial in d."""
    q = stated_q() if q is None else q
    return resultant(q, derivative(q, "U"), "U")


def count_real_roots(p):
    """Distinct real roots of a univariate Poly in U, by Sturm chains."""
    return sturm.count_real_roots(p.univariate("U"))


# ---- report --------------------------------------------------------------------

@dataclass
class Step:
    name: str
    passed: bool
    detail: str
    computed: str = ""
    expected: str = ""

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "computed": self.computed, "expected": self.expected}


@dataclass
class Certificate:
    steps: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(s.passed for s in self.steps)

    @property
    def first_failure(self):
        return next((s.name for s in self.steps if not s.passed), None)

    @property
    def verdict(self):
        return "PASS" if self.passed else f"FAIL at {self.first_failure}"

    def to_json(self):
        return {"verdict": "PASS" if self.passed else "FAIL", "first_failure": self.first_failure,
                "seconds": self.seconds, "steps": [s.to_json() for s in self.steps]}


def _step(name, computed, expected, detail):
    return Step(name, computed == expected, detail, canonical_str(computed), canonical_str(expected))


def certify(perturb=False, stop_at_failure=True):
    """Run the whole chain. ``perturb`` adds 1 to a_2 before the resultant,
    which must make the factorisation step fail."""
    t0 = time.perf_counter()
    cert = Certificate()

    def add(step):
        cert.steps.append(step)
        return step.passed or not stop_at_failure

    eq1 = lifted_circle()
    if not add(_step("lifted_circle", eq1, stated_lifted_circle(),
                     "lift of C_d divided by U^2+V^2 equals the stated quartic")):
        return _done(cert, t0)
    on_curve = _lift_points_on_curve(eq1)
    if not add(Step("lift_points", on_curve, "lifts of Z=7 and Z=1 satisfy the lifted circle exactly")):
        return _done(cert, t0)

    eq2 = rotate_curve(eq1, 1)
    eq3 = rotate_curve(eq1, -1)
    if not add(_step("rotation_plus", eq2, stated_rotated(1), "rotation by 2pi/3 of the lifted circle")):
        return _done(cert, t0)
    if not add(_step("rotation_minus", eq3, stated_rotated(-1), "rotation by -2pi/3 of the lifted circle")):
        return _done(cert, t0)
    if not add(_step("conjugate_pair", eq3, eq2.conjugate(), "the second rotation is the sqrt(3) conjugate of the first")):
        return _done(cert, t0)
    back = rotate_curve(rotate_curve(eq2, 1), 1)
    if not add(_step("order_three", back, _r(eq1), "three rotations by 2pi/3 return the curve")):
        return _done(cert, t0)

    a = quartic_coefficients(eq2)
    stated = stated_quartic_coefficients()
    ok = all(x == y for x, y in zip(a, stated))
    if not add(Step("quartic_coefficients", ok, "a_4..a_0 of the rotated curve as displayed",
                    "; ".join(canonical_str(x) for x in a), "; ".join(canonical_str(x) for x in stated))):
        return _done(cert, t0)

    if perturb:
        a = list(a)
        a[2] = a[2] + 1
    b = [x.conjugate() for x in a]
    P = intersection_resultant(a, b)
    q = stated_q()
    expected = _r(2304 * (d * d + 9) * (U + 1) ** 4 * q)
    if not add(_step("resultant_factorization", P, expected, "8x8 Sylvester resultant in V equals 2304(d^2+9)(U+1)^4 Q(U)")):
        return _done(cert, t0)

    q0 = q_specialize(0)
    quartic = 25 * U ** 4 + 40 * U ** 3 + 96 * U * U + 64 * U + 64
    sos = U * U * (5 * U + 4) ** 2 + 80 * (U + Fraction(2, 5)) ** 2 + Fraction(256, 5)
    if not add(_step("q_at_d_zero", q0, quartic, "Q at d=0")):
        return _done(cert, t0)
    if not add(_step("q_sum_of_squares", sos, quartic, "sum-of-squares form of Q at d=0")):
        return _done(cert, t0)
    q3 = q_specialize(3)
    if not add(_step("q_at_d2_three", q3, (U + 1) ** 2 * (28 * U * U - 16 * U + 64),
                     "Q at d^2=3 factors with a double root at U=-1")):
        return _done(cert, t0)
    if not add(_step("q_at_d2_three_expanded", q3, 28 * U ** 4 + 40 * U ** 3 + 60 * U * U + 112 * U + 64,
                     "expanded form of Q at d^2=3")):
        return _done(cert, t0)

    disc = q_discriminant(q)
    if not add(_step("discriminant", disc, stated_discriminant(), "Res_U(Q, Q') factorisation")):
        return _done(cert, t0)
    if not add(Step("discriminant_constant", -143327232 == -(2 ** 16) * 3 ** 7,
                    "143327232 = 2^16 3^7", str(-(2 ** 16) * 3 ** 7), "-143327232")):
        return _done(cert, t0)

    for d2 in SAMPLE_D2:
        n = count_real_roots(q_specialize(d2))
        if not add(Step(f"root_count_d2_{d2}", n == 0, f"Q has no real root at d^2={d2}", str(n), "0")):
            return _done(cert, t0)

    roots = sturm.real_roots_with_multiplicity(q_specialize(BOUNDARY_D2).univariate("U"))
    got = [(str(lo), str(hi), k) for (lo, hi), k in roots]
    ok = got == [("-1", "-1", 2)]
    add(Step("boundary_double_root", ok, "at d^2=3 the only real root is U=-1, of multiplicity 2",
             str(got), str([("-1", "-1", 2)])))
    return _done(cert, t0)


def _done(cert, t0):
    cert.seconds = time.perf_counter() - t0
    return cert


def _lift_points_on_curve(eq1):
    # Z = 7 lifts to the real W = (7 + 3 sqrt 5)/2; at V = 0 the curve has no d term
    w7 = Surd(7, 3, 2, 5)
    ok = eq1.evaluate(U=w7, V=Surd(0), d=Surd(0)) == 0
    # Z = 1 lifts to W = exp(i pi/3), on the unit circle where the d term vanishes too
    u, v = Surd(1, 0, 2), Surd(0, 1, 2, 3)
    for dv in (-2, 0, 1, 5):
        ok = ok and eq1.evaluate(U=u, V=v, d=Surd(dv)) == 0
    return ok


lemma9_certificate = certify
