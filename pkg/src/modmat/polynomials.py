"""Exact sparse polynomials in U, V, d and the quadratic extension by s = sqrt(3).

Coefficients are Python ints (or Fractions when a substitution introduces
them); there is no fixed width anywhere.
"""

from fractions import Fraction

GENS = ("U", "V", "d")
_ZERO = (0, 0, 0)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class NotDivisibleError(ArithmeticError):
    pass


class Poly:
    """Polynomial in U, V, d stored as {exponent triple: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {e: _norm(c) for e, c in terms.items() if c != 0}

    @classmethod
    def const(cls, c):
        return cls({_ZERO: c})

    @classmethod
    def var(cls, name, power=1):
        e = [0, 0, 0]
        e[GENS.index(name)] = power
        return cls({tuple(e): 1})

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, Poly) else cls.const(x)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, RingElem):
            return NotImplemented
        other = Poly.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RingElem):
            return NotImplemented
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = {}
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in other.terms.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                out[e] = out.get(e, 0) + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def degree(self, name=None):
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = GENS.index(name)
        return max(e[i] for e in self.terms)

    def coeffs_in(self, name):
        """{power: Poly} splitting off one variable."""
        i = GENS.index(name)
        out = {}
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            out.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly(v) for k, v in out.items()}

    def coeff(self, name, power):
        return self.coeffs_in(name).get(power, Poly())

    def subs(self, name, value):
        """Substitute a Poly (or number) for one variable."""
        value = Poly.coerce(value)
        parts = self.coeffs_in(name)
        out = Poly()
        top = max(parts) if parts else 0
        for k in range(top, -1, -1):
            out = out * value + parts.get(k, Poly())
        return out

    def evaluate(self, **values):
        """Evaluate with numbers (ints, Fractions, Surds or floats) for every variable."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for name, k in zip(GENS, e):
                if k:
                    term = term * values[name] ** k
            total = total + term
        return total

    def exact_div(self, other):
        """Quotient of an exact division; raises NotDivisibleError otherwise."""
        other = Poly.coerce(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(other.terms)
        lc = other.terms[lead]
        rem = dict(self.terms)
        quot = {}
        while rem:
            top = max(rem)
            shift = tuple(x - y for x, y in zip(top, lead))
            if min(shift) < 0:
                raise NotDivisibleError("polynomial division leaves a remainder")
            c = rem[top]
            q = c // lc if isinstance(c, int) and isinstance(lc, int) and c % lc == 0 else Fraction(c) / lc
            quot[shift] = q
            for e, d in other.terms.items():
                k = (e[0] + shift[0], e[1] + shift[1], e[2] + shift[2])
                v = rem.get(k, 0) - q * d
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return Poly(quot)

    def univariate(self, name="U"):
        """Coefficient list (lowest power first) of a polynomial in one variable."""
        i = GENS.index(name)
        if any(x for e in self.terms for j, x in enumerate(e) if j != i):
            raise ValueError(f"polynomial is not univariate in {name}")
        n = self.degree(name)
        out = [0] * (n + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def even_in(self, name):
        i = GENS.index(name)
        return all(e[i] % 2 == 0 for e in self.terms)

    def substitute_square(self, name, square):
        """Replace name^(2k) by square^k; the polynomial must be even in name."""
        if not self.even_in(name):
            raise ValueError(f"polynomial has odd powers of {name}")
        i = GENS.index(name)
        out = {}
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i] // 2
            rest[i] = 0
            key = tuple(rest)
            out[key] = out.get(key, 0) + c * Fraction(square) ** k
        return Poly(out)

    def __str__(self):
        return canonical_str(self)

    def __repr__(self):
        return f"Poly({canonical_str(self)})"


class RingElem:
    """p + q*s with s^2 = 3, where p and q are Polys in U, V, d."""

    __slots__ = ("p", "q")

    def __init__(self, p=None, q=None):
        self.p = Poly.coerce(p if p is not None else 0)
        self.q = Poly.coerce(q if q is not None else 0)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RingElem):
            return x
        return cls(Poly.coerce(x))

    @classmethod
    def sqrt3(cls):
        return cls(0, 1)

    @classmethod
    def var(cls, name):
        return cls(Poly.var(name))

    def is_zero(self):
        return self.p.is_zero() and self.q.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = RingElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __add__(self, other):
        other = RingElem.coerce(other)
        return RingElem(self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(-self.p, -self.q)

    def __sub__(self, other):
        return self + (-RingElem.coerce(other))

    def __rsub__(self, other):
        return RingElem.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElem(self.p * other, self.q * other)
        other = RingElem.coerce(other)
        p = self.p * other.p
        q = self.p * other.q if not other.q.is_zero() else Poly()
        if not self.q.is_zero():
            q = q + self.q * other.p
            if not other.q.is_zero():
                p = p + self.q * other.q * 3
        return RingElem(p, q)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = RingElem(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self):
        """The automorphism s -> -s."""
        return RingElem(self.p, -self.q)

    def norm(self):
        """self * conjugate(self), which has no s part."""
        return self.p * self.p - self.q * self.q * 3

    @property
    def is_rational(self):
        return self.q.is_zero()

    def exact_div(self, other):
        other = RingElem.coerce(other)
        if other.q.is_zero():
            return RingElem(self.p.exact_div(other.p), self.q.exact_div(other.p) if self.q else Poly())
        num = self * other.conjugate()
        n = other.norm()
        return RingElem(num.p.exact_div(n), num.q.exact_div(n) if num.q else Poly())

    def subs(self, name, value):
        """Substitute a RingElem for one of U, V, d."""
        value = RingElem.coerce(value)
        out = RingElem()
        for part, mult in ((self.p, RingElem(1)), (self.q, RingElem.sqrt3())):
            parts = part.coeffs_in(name)
            if not parts:
                continue
            acc = RingElem()
            for k in range(max(parts), -1, -1):
                acc = acc * value + RingElem(parts.get(k, Poly()))
            out = out + acc * mult
        return out

    def coeffs_in(self, name):
        """{power: RingElem} splitting off one variable."""
        ps, qs = self.p.coeffs_in(name), self.q.coeffs_in(name)
        return {k: RingElem(ps.get(k, Poly()), qs.get(k, Poly())) for k in set(ps) | set(qs)}

    def degree(self, name):
        return max(self.p.degree(name), self.q.degree(name))

    def evaluate(self, s=None, **values):
        """Numeric value; ``s`` defaults to the float sqrt(3)."""
        if s is None:
            s = 3 ** 0.5
        return self.p.evaluate(**values) + s * self.q.evaluate(**values)

    def __str__(self):
        return canonical_str(self)

    def __repr__(self):
        return f"RingElem({canonical_str(self)})"


def _monomial(e, s_power):
    # canonical order of variables: U > d > s
    parts = []
    for name, k in (("U", e[0]), ("V", e[1]), ("d", e[2]), ("s", s_power)):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def canonical_str(x):
    """Expanded form, graded lex with U > V > d > s; s stands for sqrt(3)."""
    if isinstance(x, Poly):
        items = [((e, 0), c) for e, c in x.terms.items()]
    else:
        x = RingElem.coerce(x)
        items = [((e, 0), c) for e, c in x.p.terms.items()] + [((e, 1), c) for e, c in x.q.terms.items()]
    if not items:
        return "0"

    def key(item):
        (e, sp), _ = item
        return (sum(e) + sp, e[0], e[1], e[2], sp)

    out = []
    for (e, sp), c in sorted(items, key=key, reverse=True):
        mono = _monomial(e, sp)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---- determinants and resultants --------------------------------------------

def bareiss_det(matrix):
    """Fraction-free determinant of a square matrix over an exact ring.

    Entries need +, -, * and an ``exact_div`` method (Poly and RingElem qualify).
    A zero pivot is replaced by swapping in a lower row.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return m[0][0] * 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else num.exact_div(prev)
            m[i][k] = m[i][k] * 0
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def laplace_det(matrix):
    """Division-free cofactor expansion along the first row, memoised on column sets."""
    n = len(matrix)
    memo = {}

    def minor(row, cols):
        if row == n:
            return None
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = None
        sign = 1
        for idx, c in enumerate(cols):
            entry = matrix[row][c]
            if entry:
                rest = cols[:idx] + cols[idx + 1:]
                sub = minor(row + 1, rest)
                term = entry if sub is None else entry * sub
                if sign < 0:
                    term = -term
                total = term if total is None else total + term
            sign = -sign
        if total is None:
            total = matrix[0][0] * 0
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


def sylvester_matrix(f, g):
    """Sylvester matrix of coefficient lists given highest power first."""
    m, n = len(f) - 1, len(g) - 1
    zero = f[0] * 0
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def coefficient_list(x, name, degree=None):
    """Coefficients of x in one variable, highest power first."""
    parts = x.coeffs_in(name)
    top = max(parts) if degree is None else degree
    zero = type(x)()
    return [parts.get(k, zero) for k in range(top, -1, -1)]


def resultant(f, g, name):
    """Res_name(f, g) by the fraction-free determinant of the Sylvester matrix."""
    return bareiss_det(sylvester_matrix(coefficient_list(f, name), coefficient_list(g, name)))


def derivative(x, name):
    i = GENS.index(name)
    if isinstance(x, RingElem):
        return RingElem(derivative(x.p, name), derivative(x.q, name))
    out = {}
    for e, c in x.terms.items():
        if e[i]:
            k = list(e)
            k[i] -= 1
            out[tuple(k)] = c * e[i]
    return Poly(out)
