"""Command-line entry point: ``modmat <subcommand> ...``.

Exit codes: 0 success, 2 bad input or failed precondition, 3 failed verification.
"""

import argparse
import csv
import json
import logging
import math
import sys
from importlib import resources
from pathlib import Path

from . import correspondence as corr
from . import exact_verify, render, sturmian, yoccoz_lune
from .cf_minkowski import BinaryAngle, ContinuedFraction, eval_cf, question_mark, question_mark_inverse
from .word_algebra import Side, compose, orbit_cycle, word_report

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 2, 3
ALPHA_SNAP = 5e-4


class InputError(Exception):
    pass


def parse_complex(text):
    """Parse "x+yi" (spaces allowed, i or j, either part optional)."""
    s = text.replace(" ", "")
    if not s:
        raise argparse.ArgumentTypeError("empty complex number")
    if s[-1] in "ij":
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}; expected x+yi") from None


def load_schema(name):
    """JSON schema shipped for the output of one subcommand."""
    return json.loads(resources.files("modmat").joinpath("schemas", f"{name}.json").read_text())


def _emit(report, target, text):
    """Print text, or JSON to stdout (target '-'), or write JSON to a path."""
    if target is None:
        print(text)
    elif target == "-":
        print(json.dumps(report, indent=2))
    else:
        Path(target).write_text(json.dumps(report, indent=2) + "\n")
        print(text)
        print(f"wrote {target}")


def _add_json(p, help_text="print JSON, or write it to PATH"):
    p.add_argument("--json", nargs="?", const="-", metavar="PATH", help=help_text)


# ---- subcommands ---------------------------------------------------------------

def cmd_word(args):
    w = compose(args.letters)
    report = word_report(w)
    if w.mixed:
        report["cycle_minus"] = [x.to_json() for x in orbit_cycle(w, Side.MINUS)]
        report["cycle_plus"] = [x.to_json() for x in orbit_cycle(w, Side.PLUS)]
    lines = [f"word {report['word']}  matrix {report['matrix']}  trace {report['trace']}  ({report['class']})"]
    for key in ("x_minus", "x_plus", "eigenvalue", "multiplier"):
        if key in report:
            lines.append(f"{key:10s} {report[key]['exact']}  ~ {report[key]['decimal']}")
    _emit(report, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_minkowski(args):
    if args.cf is not None:
        cf = ContinuedFraction.parse(args.cf)
        value = eval_cf(cf)
        angle = question_mark(cf)
    else:
        angle = BinaryAngle.parse(args.binary)
        cf = question_mark_inverse(angle)
        if not isinstance(cf, ContinuedFraction):
            raise InputError(f"binary angle {angle} codes the point at infinity")
        value = eval_cf(cf) if not cf.truncated else None
    report = {
        "cf": str(cf),
        "truncated": bool(getattr(cf, "truncated", False)),
        "value": value.to_json() if value is not None else None,
        "binary": str(angle),
        "binary_value": str(angle.value),
    }
    text = f"{report['cf']}  <->  {report['binary']} = {report['binary_value']}"
    if value is not None:
        text += f"\nvalue {report['value']['exact']} ~ {report['value']['decimal']}"
    _emit(report, args.json, text)
    return EXIT_OK


def cmd_sturmian(args):
    rot = sturmian.RotationNumber(args.p, args.q)
    report = sturmian.sturmian_report(rot)
    b = report["bounds"]
    text = (f"T_{rot.p}/{rot.q} = {report['word']}\n"
            f"blocks r={report['blocks']['r']} s={report['blocks']['s']}: {' '.join(report['blocks']['sequence'])}\n"
            f"multiplier {report['multiplier']['exact']} ~ {report['multiplier']['decimal']}\n"
            f"bounds {b['lower']!r} < mu < {b['upper']!r}: {b['inside']}")
    _emit(report, args.json, text)
    return EXIT_OK if b["inside"] else EXIT_FAIL


def cmd_zeta(args):
    report = corr.zeta_report(args.a)
    text = (f"a = {report['a']}\nzeta = {corr.format_complex(complex(report['zeta']['re'], report['zeta']['im']))}"
            f"  |zeta| = {report['abs_zeta']!r}  arg = {report['arg_zeta']!r}")
    _emit(report, args.json, text)
    return EXIT_OK


def _point_str(p):
    return ("inf", "inf") if p.at_infinity else (repr(p.value.real), repr(p.value.imag))


def cmd_orbit(args):
    res = corr.orbit(args.a, args.z, args.n)
    rows = [(k,) + _point_str(p) for k, p in enumerate(res.points)]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "re", "im"])
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    status = f"escaped at index {res.escape_index}" if res.escaped else f"NONE after {args.n} steps"
    print(status, file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def _tau_marks():
    marks = {}
    for label, a in (("a=4", 4.0), ("a=4+3i", 4 + 3j)):
        zeta = corr.multiplier_zeta(a)
        marks[label] = yoccoz_lune.principal_tau(zeta)[0]
    return marks


def cmd_yoccoz(args):
    if args.test_a is not None:
        v = yoccoz_lune.test_parameter(args.test_a, args.factor)
        report = {"a": corr.format_complex(args.test_a), "zeta": corr._cjson(v.zeta), "abs_ok": v.abs_ok,
                  "cor2_ok": v.cor2_ok, "excluded": v.excluded, "verdict": v.detail}
        _emit(report, args.json, v.detail)
        return EXIT_OK
    if args.arc:
        samples = yoccoz_lune.arc_exclusion_scan(n=args.arc, factor=args.factor)
        report = {"samples": [{"t": s.t, "a": corr.format_complex(s.a), "abs_zeta": abs(s.zeta),
                               "excluded": s.verdict.excluded, "verdict": s.verdict.detail} for s in samples],
                  "all_excluded": all(s.verdict.excluded for s in samples)}
        _emit(report, args.json, f"{sum(s.verdict.excluded for s in samples)}/{len(samples)} arc samples excluded")
        return EXIT_OK if report["all_excluded"] else EXIT_FAIL
    discs = yoccoz_lune.disc_atlas(args.qmax, sharpen=not args.no_sharpen)
    report = {"q_max": args.qmax, "factor": args.factor,
              "discs": [dict(d.to_json(), curve_excess=yoccoz_lune.curve_excess(d, args.factor)) for d in discs]}
    lines = [f"{d.p}/{d.q}: tangency {d.tangency:.6f}  radius {d.radius:.6g}{'  (sharpened)' if d.sharpened else ''}"
             for d in discs]
    if args.figure:
        from .plotting import disc_atlas_figure
        disc_atlas_figure(discs, args.figure, args.factor, _tau_marks())
        lines.append(f"wrote {args.figure}")
    _emit(report, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_lune(args):
    if args.dyn:
        alpha = args.alpha
        if abs(alpha - math.pi / 3) < ALPHA_SNAP:
            # a three-decimal pi/3 (1.047) means the boundary angle itself
            alpha = math.pi / 3
        rep = yoccoz_lune.dyn_lune_check(alpha, args.a, args.samples, args.seed, probe=args.probe)
        report = rep.to_json()
        text = (f"a={report['a']} alpha={alpha!r}: {rep.n_images} images, "
                f"{rep.sector_violations} sector violations, {rep.disc_violations} disc violations")
        _emit(report, args.json, text)
        return EXIT_OK if (rep.ok or args.probe) else EXIT_FAIL
    if args.theta is None:
        raise InputError("lune needs --theta (parameter lune) or --dyn --alpha (dynamical lune)")
    inside = bool(yoccoz_lune.param_lune_contains(args.theta, args.a))
    report = {"a": corr.format_complex(args.a), "theta": args.theta, "inside": inside}
    _emit(report, args.json, f"a={report['a']} {'inside' if inside else 'outside'} the lune theta={args.theta!r}")
    return EXIT_OK


def _grid(args):
    return render.GridSpec(args.center, args.radius, args.px, args.px, args.max_iter)


def _write_field(field, args, title):
    render.write_image(field, args.out)
    written = [args.out]
    if args.csv:
        render.export_csv(field, args.csv)
        written.append(args.csv)
    if args.figure:
        from .plotting import escape_field_figure
        escape_field_figure(field, args.figure, title)
        written.append(args.figure)
    report = dict(render.field_summary(field), files=written)
    _emit(report, args.json, "\n".join([f"wrote {p}" for p in written] + [json.dumps(render.field_summary(field))]))


def cmd_mandel(args):
    field = render.mandel_field(_grid(args), workers=args.threads)
    _write_field(field, args, f"critical-orbit escape, centre {corr.format_complex(args.center)}")
    return EXIT_OK


def cmd_limit(args):
    field = render.limit_field(args.a, _grid(args), side=args.side, workers=args.threads)
    _write_field(field, args, f"limit set ({args.side}), a = {corr.format_complex(args.a)}")
    return EXIT_OK


def cmd_verify(args):
    cert = exact_verify.certify(perturb=args.inject_fault)
    report = cert.to_json()
    lines = [f"{'PASS' if s.passed else 'FAIL'}  {s.name}: {s.detail}" for s in cert.steps]
    lines.append(f"{cert.verdict} in {cert.seconds:.3f} s")
    _emit(report, args.json, "\n".join(lines))
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_report(args):
    """Write the disc atlas, a parameter-plane render and the exact certificate to a directory."""
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    discs = yoccoz_lune.disc_atlas(8)
    (out / "discs.json").write_text(json.dumps({"q_max": 8, "factor": yoccoz_lune.DEFAULT_FACTOR,
                                                "discs": [d.to_json() for d in discs]}, indent=2) + "\n")
    from .plotting import disc_atlas_figure, escape_field_figure
    disc_atlas_figure(discs, out / "disc_atlas.png", marks=_tau_marks())
    grid = render.GridSpec(4, 3.2, args.px, args.px, args.max_iter)
    field = render.mandel_field(grid, workers=args.threads)
    render.write_image(field, out / "mandel.ppm")
    render.export_csv(field, out / "mandel.csv")
    escape_field_figure(field, out / "escape_field.png", "critical-orbit escape, centre 4")
    cert = exact_verify.certify()
    (out / "lemma9.json").write_text(json.dumps(cert.to_json(), indent=2) + "\n")
    for name in ("discs.json", "disc_atlas.png", "mandel.ppm", "mandel.csv", "escape_field.png", "lemma9.json"):
        print(f"wrote {out / name}")
    return EXIT_OK if cert.passed else EXIT_FAIL


# ---- parser --------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="modmat", description="Words in the modular group, the "
                                     "question-mark coding, Sturmian multipliers and the correspondences F_a.",
                                     allow_abbrev=False)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, allow_abbrev=False)
        p.set_defaults(func=fn)
        return p

    p = add("word", cmd_word, "exact matrix, fixed points, cycles and multiplier of a word over {a, b}")
    p.add_argument("--letters", required=True, help="word over a, b; rightmost letter acts first")
    _add_json(p)

    p = add("minkowski", cmd_minkowski, "question-mark coding between continued fractions and binary angles")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cf", help='continued fraction such as "0;1,(2,1)" with the period in parentheses')
    g.add_argument("--binary", help='binary angle such as "0.(011)"')
    _add_json(p)

    p = add("sturmian", cmd_sturmian, "Sturmian word T_p/q, block structure and multiplier bounds")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_json(p)

    p = add("zeta", cmd_zeta, "alpha fixed point and multiplier zeta(a)")
    p.add_argument("--a", type=parse_complex, required=True, help="parameter as x+yi")
    _add_json(p)

    p = add("orbit", cmd_orbit, "CSV of iterates of f_a until the orbit enters the covering domain")
    p.add_argument("--a", type=parse_complex, required=True, help="parameter as x+yi")
    p.add_argument("--z", type=parse_complex, required=True, help="starting point as x+yi")
    p.add_argument("--n", type=int, default=100, help="iteration budget (default 100)")
    p.add_argument("--out", help="CSV path (default stdout)")

    p = add("yoccoz", cmd_yoccoz, "tangent-disc atlas and multiplier exclusion tests")
    p.add_argument("--qmax", type=int, default=8, help="largest denominator in the atlas (default 8)")
    p.add_argument("--test-a", type=parse_complex, help="judge one parameter x+yi")
    p.add_argument("--arc", type=int, metavar="N", help="scan N samples of the arc b = it, t in [0.05, 20]")
    p.add_argument("--factor", type=float, default=yoccoz_lune.DEFAULT_FACTOR,
                   help="constant in the comparison curve (default 5)")
    p.add_argument("--no-sharpen", action="store_true", help="use the generic radius for 1/q discs too")
    p.add_argument("--figure", help="write a PNG of the atlas")
    _add_json(p)

    p = add("lune", cmd_lune, "parameter-lune membership or the sampled dynamical-lune invariance check")
    p.add_argument("--a", type=parse_complex, required=True, help="parameter as x+yi")
    p.add_argument("--theta", type=float, help="half-angle of the parameter lune")
    p.add_argument("--dyn", action="store_true", help="run the dynamical-lune check")
    p.add_argument("--alpha", type=float, default=math.pi / 3, help="half-angle of the dynamical lune")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--probe", action="store_true", help="allow alpha below pi/3 and report without failing")
    _add_json(p)

    for name, fn, text in (("mandel", cmd_mandel, "escape-time render of the parameter plane (PPM)"),
                           ("limit", cmd_limit, "escape-time render of a limit set in the dynamical plane (PPM)")):
        p = add(name, fn, text)
        if name == "limit":
            p.add_argument("--a", type=parse_complex, required=True, help="parameter as x+yi")
            p.add_argument("--side", choices=("minus", "plus"), default="minus")
        p.add_argument("--center", type=parse_complex, default=complex(4 if name == "mandel" else 0))
        p.add_argument("--radius", type=float, default=3.2 if name == "mandel" else 4.0, help="half-width")
        p.add_argument("--px", type=int, default=800, help="pixels per side")
        p.add_argument("--max-iter", type=int, default=1000)
        p.add_argument("--out", required=True, help="PPM path")
        p.add_argument("--csv", help="also write re,im,n,flag rows")
        p.add_argument("--figure", help="also write a PNG figure")
        p.add_argument("--threads", type=int, help="worker processes (default MM_THREADS or all CPUs)")
        _add_json(p, "print a JSON summary, or write it to PATH")

    p = add("verify-lemma9", cmd_verify, "exact certificate that the lifted circle meets its image only at Z=1")
    p.add_argument("--inject-fault", action="store_true", help="perturb one coefficient; the run must FAIL")
    _add_json(p, "print the JSON report, or write it to PATH")

    p = add("report", cmd_report, "write atlas, render, CSV, figures and certificate into a directory")
    p.add_argument("--outdir", required=True)
    p.add_argument("--px", type=int, default=256)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--threads", type=int)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
