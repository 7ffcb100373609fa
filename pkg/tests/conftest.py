import os

import sympy
from hypothesis import HealthCheck, settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

# single worker unless a test asks otherwise, so timings are comparable
os.environ.setdefault("MM_THREADS", "1")


def to_sympy(x):
    """A Surd as a sympy expression, for exact comparison against an independent CAS."""
    return (sympy.Integer(x.p) + sympy.Integer(x.q) * sympy.sqrt(x.D)) / x.r


# ---- acceptance summary ------------------------------------------------------------

ACCEPTANCE = {}


def record_criterion(number, title, passed, detail=""):
    ACCEPTANCE[number] = (title, bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}  {'PASS' if passed else 'FAIL'}  {title}  [{detail}]")
