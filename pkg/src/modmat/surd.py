"""Exact real quadratic surds (p + q*sqrt(D)) / r with integer data."""

from decimal import Decimal, localcontext
from fractions import Fraction
from math import gcd, isqrt


def squarefree_split(n):
    """Return (k, m) with n = k*k*m and m squarefree, for n >= 1."""
    k, m = 1, 1
    f = 2
    # once f^3 > n the cofactor has at most two prime factors
    while f * f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
            k *= f
        if n % f == 0:
            n //= f
            m *= f
        f += 1
    s = isqrt(n)
    if s > 1 and s * s == n:
        return k * s, m
    return k, m * n


class Surd:
    """An element of Q(sqrt(D)), stored in lowest terms.

    Rationals are surds with q == 0 and D == 1. Instances are immutable
    and hash by their normalised tuple.
    """

    __slots__ = ("p", "q", "r", "D")

    def __init__(self, p, q=0, r=1, D=1):
        if r == 0:
            raise ZeroDivisionError("surd with zero denominator")
        if D < 0:
            raise ValueError("negative radicand")
        if q != 0 and D != 1:
            k, D = squarefree_split(D)
            q *= k
        if D == 0:
            q = 0
        if D == 1:
            p, q = p + q, 0
        if q == 0:
            D = 1
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(p, q), r)
        if g > 1:
            p, q, r = p // g, q // g, r // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Surd):
            return x
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            return cls(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot treat {type(x).__name__} as a surd")

    @classmethod
    def sqrt(cls, n):
        """sqrt(n) for a nonnegative integer or Fraction."""
        n = Fraction(n)
        if n < 0:
            raise ValueError("square root of a negative number")
        # sqrt(a/b) = sqrt(a*b)/b
        return cls(0, 1, n.denominator, n.numerator * n.denominator)

    @property
    def is_rational(self):
        return self.q == 0

    def as_fraction(self):
        if self.q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def _field(self, other):
        other = Surd.coerce(other)
        if self.q and other.q and self.D != other.D:
            raise ValueError(f"surds from different fields: sqrt({self.D}) and sqrt({other.D})")
        return other, (self.D if self.q else other.D)

    def __add__(self, other):
        try:
            o, D = self._field(other)
        except TypeError:
            return NotImplemented
        return Surd(self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, self.r * o.r, D)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.r, self.D)

    def __sub__(self, other):
        try:
            return self + (-Surd.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o, D = self._field(other)
        except TypeError:
            return NotImplemented
        return Surd(self.p * o.p + self.q * o.q * D, self.p * o.q + self.q * o.p, self.r * o.r, D)

    __rmul__ = __mul__

    def conjugate(self):
        return Surd(self.p, -self.q, self.r, self.D)

    def norm(self):
        """Field norm x * conj(x) as a Fraction."""
        return Fraction(self.p * self.p - self.q * self.q * self.D, self.r * self.r)

    def inverse(self):
        n = self.p * self.p - self.q * self.q * self.D
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return Surd(self.r * self.p, -self.r * self.q, n, self.D)

    def __truediv__(self, other):
        try:
            return self * Surd.coerce(other).inverse()
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return Surd.coerce(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = Surd(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def sign(self):
        """Exact sign of the value: -1, 0 or 1."""
        a, b = self.p, self.q
        if b == 0:
            return (a > 0) - (a < 0)
        if a >= 0 and b > 0:
            return 1
        if a <= 0 and b < 0:
            return -1
        lhs, rhs = a * a, b * b * self.D
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def _cmp(self, other):
        try:
            return (self - other).sign()
        except TypeError:
            return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            o = Surd.coerce(other)
            return (self.p, self.q, self.r, self.D) == (o.p, o.q, o.r, o.D)
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.D))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def floor(self):
        if self.q == 0:
            return self.p // self.r
        s = isqrt(self.q * self.q * self.D)
        if self.q > 0:
            return (self.p + s) // self.r
        return (self.p - s - 1) // self.r

    def to_decimal(self, digits=40):
        """High precision Decimal value; immune to cancellation in p + q*sqrt(D)."""
        size = max(len(str(abs(self.p))), len(str(abs(self.q))), len(str(self.r)), len(str(self.D)))
        with localcontext() as ctx:
            ctx.prec = digits + 2 * size + 10
            v = (Decimal(self.p) + Decimal(self.q) * Decimal(self.D).sqrt()) / Decimal(self.r)
            ctx.prec = digits
            return +v

    def __float__(self):
        if self.q == 0:
            return float(Fraction(self.p, self.r))
        return float(self.to_decimal(30))

    def decimal_str(self):
        """17 significant digits, as used in JSON output."""
        return format(float(self), ".17g")

    def __str__(self):
        if self.q == 0:
            return f"{self.p}/{self.r}" if self.r != 1 else str(self.p)
        sign = "+" if self.q > 0 else "-"
        return f"({self.p}{sign}{abs(self.q)}*sqrt({self.D}))/{self.r}"

    def __repr__(self):
        return f"Surd({self.p}, {self.q}, {self.r}, {self.D})"

    def to_json(self):
        return {"exact": str(self), "decimal": self.decimal_str()}


def mobius(matrix, x):
    """Apply (a*x + b) / (c*x + d) exactly. Raises ZeroDivisionError at the pole."""
    a, b, c, d = matrix
    x = Surd.coerce(x)
    return (x * a + b) / (x * c + d)
