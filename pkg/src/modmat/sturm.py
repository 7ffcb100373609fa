"""Real-root counting for univariate polynomials with rational coefficients.

Polynomials are coefficient lists, lowest power first.
"""

from fractions import Fraction


def _trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return [c * k for k, c in enumerate(p)][1:]


def divmod_poly(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = _trim(a)
    return _trim(q), a


def gcd_poly(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def sturm_chain(p):
    p = _trim(p)
    if not p:
        raise ValueError("the zero polynomial has no Sturm chain")
    chain = [p, _trim(derivative(p))]
    while chain[-1]:
        r = divmod_poly(chain[-2], chain[-1])[1]
        chain.append([-c for c in r])
    return chain[:-1]


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _signs_at_infinity(chain, positive):
    out = []
    for q in chain:
        lead = q[-1]
        deg = len(q) - 1
        out.append(lead if positive or deg % 2 == 0 else -lead)
    return out


def count_real_roots(p, lo=None, hi=None):
    """Number of distinct real roots in (lo, hi]; None means unbounded."""
    p = _trim(p)
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    chain = sturm_chain(p)
    left = _signs_at_infinity(chain, False) if lo is None else [evaluate(q, Fraction(lo)) for q in chain]
    right = _signs_at_infinity(chain, True) if hi is None else [evaluate(q, Fraction(hi)) for q in chain]
    return _sign_changes(left) - _sign_changes(right)


def squarefree_factors(p):
    """Yun's decomposition: list of (factor, multiplicity) with monic squarefree factors."""
    p = _trim(p)
    if len(p) <= 1:
        return []
    a = gcd_poly(p, derivative(p))
    b = divmod_poly(p, a)[0] if a else p
    c = divmod_poly(derivative(p), a)[0] if a else derivative(p)
    d = [x - y for x, y in _pad(c, derivative(b))]
    out = []
    k = 1
    while len(_trim(b)) > 1:
        g = gcd_poly(b, d)
        if len(g) > 1:
            out.append((g, k))
        b = divmod_poly(b, g)[0]
        c = divmod_poly(d, g)[0]
        d = [x - y for x, y in _pad(c, derivative(b))]
        k += 1
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


def root_bound(p):
    """Cauchy bound: every real root lies in [-B, B]."""
    p = _trim(p)
    return 1 + max(abs(c / p[-1]) for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_roots(p, width=Fraction(1, 10 ** 6)):
    """Disjoint intervals (lo, hi], each holding exactly one distinct real root.

    Exact rational roots are returned as degenerate intervals (r, r).
    """
    p = _trim(p)
    if len(p) == 2:
        r = -p[0] / p[1]
        return [(r, r)]
    B = root_bound(p)
    out = []
    stack = [(-B - 1, B)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(p, lo, hi)
        if n == 0:
            continue
        if evaluate(p, hi) == 0 and count_real_roots(p, lo, hi) == 1:
            out.append((hi, hi))
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def real_roots_with_multiplicity(p, width=Fraction(1, 10 ** 6)):
    """[(interval, multiplicity)] for every distinct real root."""
    out = []
    for factor, k in squarefree_factors(p):
        for iv in isolate_roots(factor, width):
            out.append((iv, k))
    return sorted(out)
