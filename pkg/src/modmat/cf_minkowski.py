"""Continued fractions, the question-mark correspondence with binary expansions,
and endpoints of bi-infinite alpha/beta sequences."""

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .surd import Surd, mobius
from .word_algebra import Letter


class DegenerateEndpointError(ValueError):
    pass


class Infinity(Enum):
    NEG = "-inf"
    POS = "+inf"

    def __str__(self):
        return self.value


def _primitive(seq):
    n = len(seq)
    for k in range(1, n + 1):
        if n % k == 0 and seq[:k] * (n // k) == seq:
            return seq[:k]
    return seq


def _absorb(pre, period):
    """Fold trailing preperiod entries into the period where they repeat it."""
    while pre and pre[-1] == period[-1]:
        period = period[-1:] + period[:-1]
        pre = pre[:-1]
    return pre, period


@dataclass(frozen=True)
class ContinuedFraction:
    """[a0; a1, a2, ...] with an optional repeating tail.

    ``truncated`` records that the expansion was cut at an infinite partial
    quotient. It does not take part in equality.
    """

    preperiod: tuple = ()
    period: tuple = ()
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self):
        pre, per = tuple(self.preperiod), tuple(self.period)
        if not pre and not per:
            raise ValueError("empty continued fraction")
        entries = pre + per
        if entries[0] < 0 or any(x < 1 for x in entries[1:]):
            raise ValueError(f"bad partial quotients {entries}")
        if per:
            pre, per = _absorb(pre, _primitive(per))
        else:
            # [.., a, 1] == [.., a+1]; keep the single-term [1]
            if len(pre) > 1 and pre[-1] == 1:
                pre = pre[:-2] + (pre[-2] + 1,)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def periodic(self):
        return bool(self.period)

    def terms(self, n):
        """First n partial quotients (fewer if the fraction is finite)."""
        out = list(self.preperiod)
        while self.period and len(out) < n:
            out.extend(self.period)
        return out[:n]

    def __str__(self):
        pre, per = self.preperiod, self.period
        if not pre:
            # print a0 on its own: (2,1) reads as 2;(1,2)
            pre, per = per[:1], per[1:] + per[:1]
        entries = [str(x) for x in pre]
        if per:
            entries.append("(" + ",".join(str(x) for x in per) + ")")
        if len(entries) == 1:
            return entries[0]
        return entries[0] + ";" + ",".join(entries[1:])

    @classmethod
    def parse(cls, text):
        """Parse '0;1,(2,1)' style input; parentheses mark the period."""
        s = text.replace(" ", "").strip("[]")
        m = re.fullmatch(r"([0-9;,]*?)[;,]?\(([0-9,]+)\)|([0-9;,]+)", s)
        if not m or s.count(";") > 1:
            raise ValueError(f"cannot parse continued fraction {text!r}")
        head, per, fin = m.groups()
        head = fin if fin is not None else head
        pre = tuple(int(x) for x in re.split("[;,]", head) if x) if head else ()
        period = tuple(int(x) for x in per.split(",") if x) if per else ()
        return cls(pre, period)


def _cf_matrix(entries):
    m = (1, 0, 0, 1)
    for a in entries:
        x, y, z, w = m
        m = (x * a + y, x, z * a + w, z)
    return m


def eval_cf(cf):
    """Exact value: a Surd (rational when the expansion is finite)."""
    if not cf.period:
        a, b, c, d = _cf_matrix(cf.preperiod[:-1])
        return mobius((a, b, c, d), Surd(cf.preperiod[-1]))
    a, b, c, d = _cf_matrix(cf.period)
    # fixed point x > 1 of the period map: c x^2 + (d - a) x - b = 0
    tail = Surd(a - d, 1, 2 * c, (a - d) ** 2 + 4 * b * c)
    return mobius(_cf_matrix(cf.preperiod), tail)


def rational_cf(x):
    """Finite continued fraction of a nonnegative rational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative rational")
    out = []
    while True:
        a = x.numerator // x.denominator
        out.append(a)
        x -= a
        if x == 0:
            return ContinuedFraction(tuple(out))
        x = 1 / x


def surd_cf(x):
    """Eventually periodic continued fraction of a nonnegative real surd."""
    x = Surd.coerce(x)
    if x.is_rational:
        return rational_cf(x.as_fraction())
    if x.sign() < 0:
        raise ValueError("negative surd")
    seen = {}
    out = []
    while x not in seen:
        seen[x] = len(out)
        a = x.floor()
        out.append(a)
        x = (x - a).inverse()
    k = seen[x]
    return ContinuedFraction(tuple(out[:k]), tuple(out[k:]))


@dataclass(frozen=True)
class BinaryAngle:
    """Binary expansion 0.pre(period) of a rational in [0, 1)."""

    pre: str
    period: str

    @classmethod
    def from_fraction(cls, value):
        value = Fraction(value)
        if not 0 <= value < 1:
            raise ValueError(f"binary angle {value} outside [0, 1)")
        num, den = value.numerator, value.denominator
        seen, bits = {}, []
        while num not in seen:
            seen[num] = len(bits)
            num *= 2
            bits.append("1" if num >= den else "0")
            if num >= den:
                num -= den
        k = seen[num]
        bits = "".join(bits)
        return cls(bits[:k], bits[k:])

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*0?\.([01]*)(?:\(([01]+)\))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse binary angle {text!r}")
        pre, per = m.group(1), m.group(2) or "0"
        return cls.from_fraction(bits_value(pre, per))

    @property
    def value(self):
        return bits_value(self.pre, self.period)

    def __str__(self):
        return f"0.{self.pre}({self.period})"


def bits_value(pre, period):
    v = Fraction(int(period, 2), 2 ** len(period) - 1)
    if pre:
        v = (int(pre, 2) + v) / 2 ** len(pre)
    return v


def _cf_bits(entries):
    return "".join(("1" if i % 2 == 0 else "0") * a for i, a in enumerate(entries))


def question_mark(cf):
    """?([a0; a1, ...]) = 0.1^a0 0^a1 1^a2 ... as an exact binary angle."""
    if not cf.period:
        # the expansion continues with an endless run of the next symbol
        tail = "1" if len(cf.preperiod) % 2 == 0 else "0"
        return BinaryAngle.from_fraction(bits_value(_cf_bits(cf.preperiod), tail))
    pre = _cf_bits(cf.preperiod)
    start = len(cf.preperiod)
    period = cf.period * (2 if len(cf.period) % 2 else 1)
    per_bits = "".join(("1" if (start + i) % 2 == 0 else "0") * a for i, a in enumerate(period))
    return BinaryAngle.from_fraction(bits_value(pre, per_bits))


def decode_runs(pre, period, lead):
    """Run-length code of pre + period^inf, counting runs of ``lead`` first.

    Returns a ContinuedFraction, or Infinity.POS when the whole sequence is
    one endless run of ``lead``. A final endless run truncates the expansion
    and sets the ``truncated`` flag.
    """
    if len(set(period)) == 1:
        runs = _runs(pre + period[0], lead)
        if len(runs) == 1:
            return Infinity.POS
        return ContinuedFraction(tuple(runs[:-1]), truncated=True)
    L = len(period)
    s = pre + period * 3
    # start the period window at a run boundary inside the periodic part, so
    # the window holds whole runs
    i0 = len(pre) + 1
    while s[i0] == s[i0 - 1]:
        i0 += 1
    runs = _runs(s[: i0 + L], lead)
    n_pre = len(_runs(s[:i0], lead))
    return ContinuedFraction(tuple(runs[:n_pre]), tuple(runs[n_pre:]))


_OTHER = {"1": "0", "0": "1", "a": "b", "b": "a"}


def _runs(s, lead):
    runs = []
    expected = lead
    i = 0
    while i < len(s):
        j = i
        while j < len(s) and s[j] == expected:
            j += 1
        runs.append(j - i)
        i = j
        expected = _OTHER[expected]
    return runs


def question_mark_inverse(angle):
    v = angle.value
    if v == 0 or v >= 1:
        raise DegenerateEndpointError(f"binary angle {angle} has no finite preimage in (0, inf)")
    return decode_runs(angle.pre, angle.period, "1")


def _check_letters(s, what):
    if any(ch not in "ab" for ch in s):
        raise ValueError(f"{what} {s!r} must use only the letters 'a' and 'b'")


@dataclass(frozen=True)
class SymbolSequence:
    """Eventually periodic bi-infinite word ...PPP pre . pre' QQQ... over {a, b}.

    The marker sits between ``left_pre`` and ``right_pre``. Letters left of
    the marker are g0, g1, ... reading outwards; letters to the right are
    g_-1, g_-2, ...
    """

    left_period: str
    left_pre: str
    right_pre: str
    right_period: str

    def __post_init__(self):
        for name in ("left_period", "left_pre", "right_pre", "right_period"):
            _check_letters(getattr(self, name), name.replace("_", " "))
        if not self.left_period or not self.right_period:
            raise ValueError("both periods must be nonempty")
        lp, lpre = _primitive(self.left_period), self.left_pre
        while lpre and lpre[0] == lp[0]:
            lpre, lp = lpre[1:], lp[1:] + lp[0]
        rpre, rp = _absorb(self.right_pre, _primitive(self.right_period))
        object.__setattr__(self, "left_period", lp)
        object.__setattr__(self, "left_pre", lpre)
        object.__setattr__(self, "right_pre", rpre)
        object.__setattr__(self, "right_period", rp)

    @classmethod
    def periodic(cls, word):
        """The two-sided repetition ...WWW.WWW... of a word."""
        w = str(word)
        return cls(w, "", "", w)

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*\(([ab]+)\)([ab]*)\.([ab]*)\(([ab]+)\)\s*", text)
        if not m:
            raise ValueError(f"cannot parse symbol sequence {text!r}; expected '(P)pre.pre(Q)'")
        return cls(*m.groups())

    def __str__(self):
        return f"({self.left_period}){self.left_pre}.{self.right_pre}({self.right_period})"

    def outward_left(self):
        """(pre, period) of g0 g1 g2 ... read away from the marker."""
        return self.left_pre[::-1], self.left_period[::-1]

    def left_letter(self, i):
        pre, per = self.outward_left()
        return Letter(pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)])

    def right_letter(self, i):
        """g_{-1-i}: the letter i places right of the marker."""
        pre, per = self.right_pre, self.right_period
        return Letter(pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)])


def _negate(x):
    if x is Infinity.POS:
        return Infinity.NEG
    return -x


def _value(decoded):
    if decoded is Infinity.POS:
        return Infinity.POS
    return eval_cf(decoded)


def endpoint_cfs(S):
    """Continued fractions [m0; m1, ...] and [n0; n1, ...] (or Infinity.POS)."""
    pre, per = S.outward_left()
    return decode_runs(pre, per, "a"), decode_runs(S.right_pre, S.right_period, "a")


def endpoints(S):
    """(x_minus, x_plus) with x_minus = -[m0; ...] and x_plus = [n0; ...]."""
    left, right = endpoint_cfs(S)
    return _negate(_value(left)), _value(right)


def shift(S):
    """Move the marker one place left, past g0."""
    if S.left_pre:
        g0 = S.left_pre[-1]
        return SymbolSequence(S.left_period, S.left_pre[:-1], g0 + S.right_pre, S.right_period)
    P = S.left_period
    g0 = P[-1]
    return SymbolSequence(P[-1] + P[:-1], "", g0 + S.right_pre, S.right_period)


def apply_letter(letter, x):
    """Letter action on the extended real line, with -inf and +inf identified."""
    if isinstance(x, Infinity):
        return x if letter is Letter.ALPHA else Surd(1)
    return mobius(letter.matrix, x)


def same_projective(x, y):
    if isinstance(x, Infinity) or isinstance(y, Infinity):
        return isinstance(x, Infinity) and isinstance(y, Infinity)
    return x == y


def ifs_limit(S, n, z0=1j, side="minus"):
    """G_n(z0) = g0^-1 ... g_n^-1 (z0) on the minus side; on the plus side
    G_-n(z0) = g_-1 ... g_-n (z0). Tends to x_minus or x_plus respectively."""
    z = complex(z0)
    if side == "minus":
        for i in range(n, -1, -1):
            if S.left_letter(i) is Letter.ALPHA:
                z = z - 1
            else:
                z = z / (1 - z)
        return z
    if side != "plus":
        raise ValueError(f"side must be 'minus' or 'plus', not {side!r}")
    for i in range(n - 1, -1, -1):
        if S.right_letter(i) is Letter.ALPHA:
            z = z + 1
        else:
            z = z / (z + 1)
    return z
