"""Yoccoz discs for the log-multiplier, the practical exclusion tests built on
them, and parameter-plane and dynamical-plane lunes."""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import correspondence as corr
from .sturmian import RotationNumber, coprime_fractions

GOLDEN_BOUND = (3 + math.sqrt(5)) / 2
# the bound is attained at a = 4; allow for rounding in computed |zeta|
BOUND_RTOL = 1e-12
DEFAULT_FACTOR = 5.0
TIGHT_FACTOR = 4.0


class DomainError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _rotation(p, q=None):
    if isinstance(p, RotationNumber):
        return p
    return RotationNumber(p, q)


def disc_radius(p, q=None):
    """r_{p/q} = 2m log(ceil(q/m) + 1) / q^2 with m = min(p, q - p)."""
    r = _rotation(p, q)
    m = r.minority
    return 2 * m * math.log(-(-r.q // m) + 1) / r.q ** 2


def sharpened_radius(q):
    """Radius of the 1/q disc from the exact multiplier of the block a^(q-1) b."""
    if q < 2:
        raise ValueError("q must be at least 2")
    lam = ((q + 1) + math.sqrt(q * q + 2 * q - 3)) / 2
    return 2 * math.log(lam) / q ** 2


@dataclass(frozen=True)
class YoccozDisc:
    p: int
    q: int
    radius: float
    sharpened: bool = False

    @property
    def tangency(self):
        return 2 * math.pi * self.p / self.q

    @property
    def center(self):
        return complex(self.radius, self.tangency)

    def contains(self, tau):
        return in_disc(tau, RotationNumber(self.p, self.q), self.radius)

    def to_json(self):
        return {"p": self.p, "q": self.q, "tangency": self.tangency, "radius": self.radius,
                "sharpened": self.sharpened}


def in_disc(tau, rotation, radius=None, rtol=BOUND_RTOL):
    """Re(tau) >= |tau - 2 pi i p/q|^2 / (2r): tau lies in the closed tangent disc.

    ``rtol`` absorbs rounding for points on the circle; tau(4) sits exactly
    on the rim of the sharpened 1/2 disc.
    """
    r = disc_radius(rotation) if radius is None else radius
    tau = complex(tau)
    offset = tau - 2j * math.pi * rotation.p / rotation.q
    return tau.real * (1 + rtol) >= abs(offset) ** 2 / (2 * r)


def principal_tau(zeta):
    """(tau, flipped): tau = log|zeta| + i Arg zeta after conjugating into Arg >= 0."""
    zeta = complex(zeta)
    flipped = zeta.imag < 0
    if flipped:
        zeta = zeta.conjugate()
    return complex(math.log(abs(zeta)), cmath.phase(zeta)), flipped


def comparison_curve(nu, factor=DEFAULT_FACTOR):
    """factor * nu^2 * log(1/nu + 1), the right edge of the admissible region."""
    nu = np.asarray(nu, dtype=float)
    return factor * nu * nu * np.log(1 / nu + 1)


def cor2_admissible(zeta, factor=DEFAULT_FACTOR):
    """Re(tau) < factor nu^2 log(1/nu + 1) with nu = Arg(zeta) / 2 pi.

    Needs 0 < Arg zeta <= pi; conjugate first otherwise.
    """
    zeta = complex(zeta)
    arg = cmath.phase(zeta)
    if not 0 < arg <= math.pi:
        raise DomainError(f"Arg zeta = {arg!r} outside (0, pi]; conjugate first")
    nu = arg / (2 * math.pi)
    return math.log(abs(zeta)) < float(comparison_curve(nu, factor))


def abs_bound_ok(zeta):
    return abs(complex(zeta)) <= GOLDEN_BOUND * (1 + BOUND_RTOL)


@dataclass(frozen=True)
class ZetaVerdict:
    zeta: complex
    abs_ok: bool
    cor2_ok: bool
    detail: str

    @property
    def excluded(self):
        return not (self.abs_ok and self.cor2_ok)


def judge_zeta(zeta, factor=DEFAULT_FACTOR):
    """Apply both necessary conditions to a multiplier value."""
    zeta = complex(zeta)
    mag = abs(zeta)
    abs_ok = abs_bound_ok(zeta)
    if mag <= 1:
        return ZetaVerdict(zeta, abs_ok, True, f"|zeta|={mag:.6g} <= 1: fixed point not repelling")
    tau, _ = principal_tau(zeta)
    nu = tau.imag / (2 * math.pi)
    if nu == 0:
        # a real multiplier > 1 leaves no admissible region
        cor2_ok, bound = False, 0.0
    else:
        bound = float(comparison_curve(nu, factor))
        cor2_ok = tau.real < bound
    if not abs_ok:
        detail = f"excluded: |zeta|={mag:.6g} > {GOLDEN_BOUND:.6g}"
    elif not cor2_ok:
        detail = f"excluded: log|zeta|={tau.real:.6g} >= {factor:g} nu^2 log(1/nu+1)={bound:.6g} at nu={nu:.6g}"
    else:
        detail = f"not excluded: |zeta|={mag:.6g} and log|zeta|={tau.real:.6g} pass both necessary conditions"
    return ZetaVerdict(zeta, abs_ok, cor2_ok, detail)


def test_parameter(a, factor=DEFAULT_FACTOR):
    """Exclusion verdict for a parameter. Passing never implies membership."""
    return judge_zeta(corr.multiplier_zeta(a), factor)


# keep pytest from collecting the function above when imported into a test module
test_parameter.__test__ = False


def disc_atlas(q_max=8, extra=((1, 16),), sharpen=True):
    """Discs for every p/q <= 1/2 with q <= q_max, plus ``extra``.

    The 1/q discs use the sharpened radius when ``sharpen`` is set.
    """
    if q_max < 2:
        raise ValueError("q_max must be at least 2")
    rots = [r for r in coprime_fractions(q_max) if 2 * r.p <= r.q]
    for p, q in extra:
        r = RotationNumber(p, q)
        if r not in rots:
            rots.append(r)
    out = []
    for r in rots:
        if sharpen and r.p == 1:
            out.append(YoccozDisc(r.p, r.q, sharpened_radius(r.q), True))
        else:
            out.append(YoccozDisc(r.p, r.q, disc_radius(r)))
    return out


def curve_excess(disc, factor=DEFAULT_FACTOR, samples=1000):
    """Largest Re(tau) - curve(nu) over boundary points of a disc (negative means dominated)."""
    t = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    pts = disc.center + disc.radius * np.exp(1j * t)
    nu = pts.imag / (2 * np.pi)
    ok = nu > 0
    return float(np.max(pts.real[ok] - comparison_curve(nu[ok], factor)))


# ---- lunes -------------------------------------------------------------------

def param_lune_contains(theta, a):
    """Closed parameter lune with vertices 1 and 7 meeting the axis at +-theta.

    Vectorised over ``a``.
    """
    if not math.pi / 12 <= theta <= math.pi / 2:
        raise PreconditionError(f"theta={theta!r} outside [pi/12, pi/2]")
    d = 3 / math.tan(theta)
    rad = math.sqrt(9 + d * d) * (1 + 1e-12)
    a = np.asarray(a, dtype=np.complex128)
    out = (np.abs(a - complex(4, -d)) <= rad) & (np.abs(a - complex(4, d)) <= rad)
    return bool(out) if out.ndim == 0 else out


def to_lune_coordinate(a, Z):
    """z = (a-1)(Z-1)/(a-Z): sends 1 to 0, a to infinity, and J_a to z -> -z."""
    a = complex(a)
    Z = np.asarray(Z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        return (a - 1) * (Z - 1) / (a - Z)


def from_lune_coordinate(a, z):
    a = complex(a)
    z = np.asarray(z, dtype=np.complex128)
    with np.errstate(all="ignore"):
        return (a * z + (a - 1)) / (z + (a - 1))


def dyn_lune_discs(a, alpha):
    """Centres and radii of the two discs whose intersection is the dynamical lune."""
    a = complex(a)
    out = []
    for s in (1, -1):
        n = cmath.exp(1j * s * (alpha - math.pi / 2))
        rho = abs(a - 1) ** 2 / (2 * (((a - 1) * n.conjugate()).real))
        out.append((1 + rho * n, rho))
    return out


def dyn_lune_contains(a, alpha, Z, tol=1e-9):
    """Open lune with vertices 1 and a, tested in the sector coordinate."""
    z = to_lune_coordinate(a, Z)
    return np.abs(np.angle(z)) < alpha + tol


def _samples(alpha, n, rng):
    """Boundary-heavy samples of the closed sector |arg z| <= alpha."""
    n_edge = n // 2
    per_edge = n_edge // 2
    t_edge = np.geomspace(1e-4, 1e4, per_edge)
    edge = np.concatenate([t_edge * np.exp(1j * alpha), t_edge * np.exp(-1j * alpha)])
    n_in = n - edge.size - 1
    t_in = 10 ** rng.uniform(-4, 4, n_in)
    phi = rng.uniform(-alpha, alpha, n_in)
    return np.concatenate([[0j], edge, t_in * np.exp(1j * phi)])


@dataclass
class LuneReport:
    a: complex
    alpha: float
    n_samples: int
    n_images: int
    sector_violations: int
    disc_violations: int
    worst_excess: float
    at_vertex: int
    examples: list = field(default_factory=list)

    @property
    def ok(self):
        return self.sector_violations == 0 and self.disc_violations == 0

    def to_json(self):
        return {
            "a": corr.format_complex(self.a),
            "alpha": self.alpha,
            "n_samples": self.n_samples,
            "n_images": self.n_images,
            "sector_violations": self.sector_violations,
            "disc_violations": self.disc_violations,
            "worst_excess": self.worst_excess,
            "images_at_vertex": self.at_vertex,
            "examples": [corr.format_complex(z) for z in self.examples],
            "ok": self.ok,
        }


def dyn_lune_check(alpha, a, n_samples=10000, seed=0, probe=False, tol=1e-9):
    """Sample the closed dynamical lune, push every sample through both
    branches of F_a = J_a o Cov, and count images outside the open lune.

    ``probe`` lifts the alpha >= pi/3 guard so the sharpness of that bound can
    be explored.
    """
    a = complex(a)
    lo = 0 if probe else math.pi / 3
    if not lo <= alpha <= math.pi / 2 + 1e-15:
        raise PreconditionError(f"alpha={alpha!r} outside [pi/3, pi/2]")
    theta = min(max(alpha, math.pi / 12), math.pi / 2)
    if a != 7 and not param_lune_contains(theta, a):
        raise PreconditionError(f"a={corr.format_complex(a)} is outside the parameter lune for alpha={alpha!r}")
    rng = np.random.default_rng(seed)
    z = _samples(alpha, n_samples, rng)
    Z = from_lune_coordinate(a, z)
    r = np.sqrt(12 - 3 * Z * Z)
    images = np.concatenate([corr.j_array(a, (-Z + r) / 2), corr.j_array(a, (-Z - r) / 2)])
    zi = to_lune_coordinate(a, images)
    vertex = np.abs(zi) < 1e-12
    excess = np.abs(np.angle(zi)) - alpha
    sector_bad = (excess > tol) & ~vertex
    discs = dyn_lune_discs(a, alpha)
    near_one = np.abs(images - 1) < 1e-12
    disc_bad = np.zeros(images.size, dtype=bool)
    for c, rho in discs:
        disc_bad |= np.abs(images - c) > rho * (1 + tol)
    disc_bad &= ~near_one
    worst = float(np.max(np.where(vertex, -np.inf, excess)))
    return LuneReport(a, alpha, z.size, images.size, int(sector_bad.sum()), int(disc_bad.sum()),
                      worst, int(vertex.sum()), list(images[sector_bad][:5]))


@dataclass
class ArcSample:
    t: float
    a: complex
    E: complex
    zeta: complex
    verdict: ZetaVerdict


def arc_exclusion_scan(t_min=0.05, t_max=20.0, n=100, factor=DEFAULT_FACTOR):
    """Judge zeta along the parameter arc b = i t, t geometrically spaced."""
    if not 0 < t_min < t_max:
        raise ValueError("need 0 < t_min < t_max")
    out = []
    for t in np.geomspace(t_min, t_max, n):
        b = 1j * float(t)
        p = corr.Parameter.from_b(b)
        zeta = corr.multiplier_zeta(p)
        out.append(ArcSample(float(t), p.a, corr.e_value(b=b), zeta, judge_zeta(zeta, factor)))
    return out
