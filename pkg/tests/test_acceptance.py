"""One test per acceptance criterion.

Each test records a pass/fail line (shown in the terminal summary and
printed with -s) and then asserts, so a failed criterion also fails the run.
"""

import cmath
import math
import os
import random
import time
import timeit
from fractions import Fraction

import numpy as np
import pytest

from conftest import record_criterion
from modmat import sturm
from modmat.cf_minkowski import BinaryAngle, ContinuedFraction, SymbolSequence, endpoints, ifs_limit, question_mark, question_mark_inverse
from modmat.correspondence import Parameter, e_value, multiplier_zeta
from modmat.exact_verify import BOUNDARY_D2, SAMPLE_D2, certify, count_real_roots, q_specialize
from modmat.render import NONE, GridSpec, mandel_field, ppm_bytes
from modmat.sturmian import coprime_fractions, multiplier_bounds, t_multiplier
from modmat.surd import Surd
from modmat.word_algebra import Side, compose, fixed_points, multiplier, orbit_cycle
from modmat.yoccoz_lune import (GOLDEN_BOUND, arc_exclusion_scan, disc_atlas, disc_radius, dyn_lune_check, in_disc,
                                principal_tau, sharpened_radius)
from modmat.sturmian import RotationNumber

S3 = Surd(0, 1, 1, 3)
S5 = Surd(0, 1, 1, 5)


def report(number, title, checks, detail=""):
    passed = all(checks.values())
    failed = [k for k, ok in checks.items() if not ok]
    text = detail + (f"; failed: {', '.join(failed)}" if failed else "")
    record_criterion(number, title, passed, text)
    print(f"criterion {number:2d}  {'PASS' if passed else 'FAIL'}  {title}  [{text}]")
    assert passed, failed


def test_criterion_01_word_aab_exact():
    def run():
        w = compose("aab")
        pair = fixed_points(w)
        return w, pair, orbit_cycle(w, Side.MINUS), orbit_cycle(w, Side.PLUS)

    w, pair, minus, plus = run()
    best = min(timeit.repeat(run, number=1, repeat=50))
    checks = {
        "matrix (3z+2)/(z+1)": w.matrix == (3, 2, 1, 1),
        "x_minus = -(sqrt3-1)": pair.x_minus == -(S3 - 1),
        "x_plus = sqrt3+1": pair.x_plus == S3 + 1,
        "P cycle": minus == [-(S3 - 1), -(S3 + 1), -S3],
        "Q cycle": plus == [S3 + 1, S3 - 1, S3],
        "runtime < 1 ms": best < 1e-3,
    }
    report(1, "word aab exactness", checks, f"best of 50 runs {best * 1e3:.3f} ms")


def test_criterion_02_question_mark_triple():
    checks = {}
    for text, value in (("0;(1,2)", Fraction(3, 7)), ("1;(1,2)", Fraction(5, 7)), ("2;(1,2)", Fraction(6, 7))):
        cf = ContinuedFraction.parse(text)
        checks[f"?[{text}] = {value}"] = question_mark(cf).value == value
        checks[f"?^-1({value}) = [{text}]"] = question_mark_inverse(BinaryAngle.from_fraction(value)) == cf
    report(2, "question-mark triple", checks, "exact rationals both directions")


def test_criterion_03_multiplier_bounds():
    t0 = time.perf_counter()
    inside = all(lo < t_multiplier(r) < hi for r in coprime_fractions(20) for lo, hi in [multiplier_bounds(r)])
    rng = random.Random(0)
    block_ok = True
    for _ in range(200):
        r, s = rng.randint(2, 6), rng.randint(2, 6)
        word = "".join("a" * rng.choice((r - 1, r)) + "b" for _ in range(s))
        mu = multiplier(compose(word))
        block_ok &= r ** (2 * s) < mu < (r + 2) ** (2 * s)
    dt = time.perf_counter() - t0
    checks = {"q <= 20 strictly inside": inside, "200 block words": block_ok, "runtime < 5 s": dt < 5}
    report(3, "multiplier bounds", checks, f"{dt:.2f} s")


def test_criterion_04_zeta_constants():
    z4 = multiplier_zeta(4)
    zr = multiplier_zeta(1 + 2 * math.sqrt(3))
    z7 = multiplier_zeta(7)
    checks = {
        "zeta(4)": abs(z4 + (3 + math.sqrt(5)) / 2) <= 1e-12,
        "zeta(1+2sqrt3)": abs(zr + 1) <= 1e-10,
        "zeta(7)": abs(z7 - 1) <= 1e-10,
    }
    report(4, "zeta constants", checks,
           f"errors {abs(z4 + (3 + math.sqrt(5)) / 2):.1e}, {abs(zr + 1):.1e}, {abs(z7 - 1):.1e}")


def test_criterion_05_numerics_at_b_i():
    E = e_value(b=1j)
    zeta = multiplier_zeta(Parameter.from_b(1j))
    checks = {
        "a = 4+3i": Parameter.from_b(1j).a == 4 + 3j,
        "|E|": abs(abs(E) - 0.563171) <= 1e-5,
        "arg E": abs(cmath.phase(E) - 0.0749062) <= 1e-5,
        "|zeta|": abs(abs(zeta) - 3.54691) <= 1e-4,
    }
    report(5, "numerics at b=i", checks, f"|E|={abs(E):.7f} arg={cmath.phase(E):.7f} |zeta|={abs(zeta):.6f}")


@pytest.fixture(scope="module")
def certificate():
    return certify(stop_at_failure=False)


def test_criterion_06_exact_chain(certificate):
    by_name = {s.name: s.passed for s in certificate.steps}
    wanted = ("lifted_circle", "rotation_plus", "rotation_minus", "quartic_coefficients", "resultant_factorization",
              "q_at_d_zero", "q_sum_of_squares", "q_at_d2_three", "discriminant", "discriminant_constant")
    checks = {name: by_name.get(name, False) for name in wanted}
    checks["runtime < 10 s"] = certificate.seconds < 10
    report(6, "exact intersection chain", checks, f"{certificate.verdict} in {certificate.seconds:.3f} s")


def test_criterion_07_sturm_counts():
    checks = {f"no real root at d^2={d2}": count_real_roots(q_specialize(d2)) == 0 for d2 in SAMPLE_D2}
    roots = sturm.real_roots_with_multiplicity(q_specialize(BOUNDARY_D2).univariate("U"))
    checks["double root U=-1 at d^2=3"] = roots == [((-1, -1), 2)]
    report(7, "Sturm root counts", checks, f"boundary roots {roots}")


def test_criterion_08_yoccoz_atlas():
    discs = disc_atlas(8)
    worst = 0.0
    for d in discs:
        m = min(d.p, d.q - d.p)
        generic = 2 * m * math.log(math.ceil(d.q / m) + 1) / d.q ** 2
        lam = ((d.q + 1) + math.sqrt(d.q ** 2 + 2 * d.q - 3)) / 2
        expected = 2 * math.log(lam) / d.q ** 2 if d.sharpened else generic
        worst = max(worst, abs(d.radius - expected))
    tau4 = principal_tau(multiplier_zeta(4))[0]
    checks = {
        "12 discs": len(discs) == 12,
        "radii to 1e-12": worst <= 1e-12,
        "sharpened < generic, 2 <= q <= 50": all(sharpened_radius(q) < disc_radius(1, q) for q in range(2, 51)),
        "tau(4) in the 1/2 disc": in_disc(tau4, RotationNumber(1, 2)),
    }
    report(8, "Yoccoz atlas", checks, f"max radius error {worst:.1e}; tau(4) = {tau4.real:.6f}+{tau4.imag:.6f}i")


def test_criterion_09_arc_exclusion():
    samples = arc_exclusion_scan(0.05, 20, 100)
    excluded = sum(s.verdict.excluded for s in samples)
    checks = {"100 samples": len(samples) == 100, "all excluded": excluded == len(samples)}
    worst = min(abs(s.zeta) for s in samples)
    report(9, "arc exclusion", checks, f"{excluded}/{len(samples)} excluded; min |zeta| {worst:.4f} vs {GOLDEN_BOUND:.4f}")


def test_criterion_10_render_sanity():
    grid = GridSpec(4, 3.2, 128, 128, 1000)
    t0 = time.perf_counter()
    f1 = mandel_field(grid, workers=1)
    single = time.perf_counter() - t0
    f2 = mandel_field(grid, workers=1)
    idx = f1.escape_index
    checks = {
        "a=4 NONE": idx[grid.pixel_of(4)] == NONE,
        "a=5 NONE": idx[grid.pixel_of(5)] == NONE,
        "a=1.1 escapes": idx[grid.pixel_of(1.1)] >= 0 and abs(f1.coords[grid.pixel_of(1.1)] - 1.1) < 1e-12,
        "conjugation symmetry": np.array_equal(idx[1:], idx[1:][::-1]),
        "byte-identical": ppm_bytes(f1) == ppm_bytes(f2),
        "runtime < 30 s": single < 30,
    }
    cpus = len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else 1
    scaling = "scaling not measured (1 CPU)"
    if cpus > 1:
        t0 = time.perf_counter()
        fn = mandel_field(grid, workers=cpus)
        multi = time.perf_counter() - t0
        checks["threaded run identical"] = ppm_bytes(fn) == ppm_bytes(f1)
        scaling = f"{cpus} workers {multi:.2f} s, speed-up {single / multi:.2f}"
    report(10, "render sanity", checks, f"128x128 at 1000 iterations in {single:.2f} s single worker; {scaling}")


def test_criterion_11_ifs_convergence():
    rng = random.Random(2024)
    worst = 0.0
    count = 0
    while count < 50:
        def w(lo):
            return "".join(rng.choice("ab") for _ in range(rng.randint(lo, 4)))
        S = SymbolSequence(w(1), w(0), w(0), w(2))
        # a one-letter left period is parabolic: G_n converges only like 1/n
        if len(set(S.left_period)) < 2 or "b" not in S.right_period:
            continue
        xm = endpoints(S)[0]
        worst = max(worst, abs(ifs_limit(S, 60, 1j) - float(xm)))
        count += 1
    report(11, "IFS convergence", {"50 sequences within 1e-8": worst < 1e-8}, f"worst error {worst:.1e}")


def test_criterion_12_dynamical_lune():
    rep = dyn_lune_check(math.pi / 3, 4, 10_000)
    probe = dyn_lune_check(math.pi / 3 - 0.05, 7, 10_000, probe=True)
    checks = {
        "a=4 zero violations": rep.ok and rep.n_samples == 10_000,
        "probe below pi/3 finds violations": probe.sector_violations + probe.disc_violations > 0,
    }
    report(12, "dynamical lune", checks,
           f"a=4: {rep.sector_violations}+{rep.disc_violations} violations; "
           f"probe: {probe.sector_violations} sector, {probe.disc_violations} disc")
