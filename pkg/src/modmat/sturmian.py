"""Sturmian words: mechanical words T_{p/q}, balance tests, block decompositions
and the multiplier bounds built on them.

Letters are coded 1 <-> alpha ('a') and 0 <-> beta ('b'); the rotation number
of a word is its proportion of alphas.
"""

from dataclasses import dataclass
from math import gcd

from .cf_minkowski import SymbolSequence
from .surd import Surd
from .word_algebra import Letter, canonical_rotation, compose, multiplier


class InvalidRotationError(ValueError):
    pass


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RotationNumber:
    p: int
    q: int

    def __post_init__(self):
        if not 0 < self.p < self.q:
            raise InvalidRotationError(f"need 0 < p < q, got {self.p}/{self.q}")
        if gcd(self.p, self.q) != 1:
            raise InvalidRotationError(f"{self.p}/{self.q} is not in lowest terms")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @property
    def mirror(self):
        return RotationNumber(self.q - self.p, self.q)

    @property
    def minority(self):
        """Size of the rarer letter class, min(p, q - p)."""
        return min(self.p, self.q - self.p)


def coprime_fractions(q_max, upper=1):
    """All p/q in (0, upper] (upper a Fraction-like bound) with q <= q_max."""
    out = []
    for q in range(2, q_max + 1):
        for p in range(1, q):
            if gcd(p, q) == 1 and p * 1.0 / q <= upper:
                out.append(RotationNumber(p, q))
    return out


@dataclass(frozen=True)
class SturmianBlock:
    word: object
    rotation: RotationNumber

    def __str__(self):
        return str(self.word)


def _mechanical(p, q):
    return tuple(Letter.ALPHA if ((k + 1) * p) // q > (k * p) // q else Letter.BETA for k in range(q))


def t_word(rotation):
    """The Sturmian block T_{p/q} as the least rotation of the staircase word."""
    letters = canonical_rotation(_mechanical(rotation.p, rotation.q))
    return SturmianBlock(compose(letters), rotation)


def is_sturmian(word):
    """Every family of cyclic windows of equal length has alpha-counts within 1."""
    letters = tuple(word.letters if hasattr(word, "letters") else word)
    ones = [1 if l is Letter.ALPHA else 0 for l in letters]
    n = len(ones)
    doubled = ones + ones
    for length in range(1, n + 1):
        window = sum(doubled[:length])
        lo = hi = window
        for i in range(1, n):
            window += doubled[i + length - 1] - doubled[i - 1]
            lo, hi = min(lo, window), max(hi, window)
        if hi - lo > 1:
            return False
    return True


def _as_str(bits):
    return "".join("a" if b else "b" for b in bits)


def non_periodic_pair(rotation):
    """The two bi-infinite balanced sequences of rotation p/q that are not periodic.

    Both agree with the lower staircase on one side of the marker and with the
    upper staircase on the other; they differ only in the letters spliced in
    at the marker.
    """
    p, q = rotation.p, rotation.q
    lower = [((n + 1) * p) // q - (n * p) // q for n in range(1, q + 1)]
    upper = [-((-(n + 1) * p) // q) + ((-n * p) // q) for n in range(-q, 0)]
    left = _as_str(upper)
    right = _as_str(lower)
    first = SymbolSequence(left, "", "a", right)
    # the same staircases with the sides exchanged
    lower_left = [((n + 1) * p) // q - (n * p) // q for n in range(-q, 0)]
    upper_right = [-((-(n + 1) * p) // q) + ((-n * p) // q) for n in range(1, q + 1)]
    second = SymbolSequence(_as_str(lower_left), "", "b", _as_str(upper_right))
    return first, second


def mechanical_prefix(slope, length):
    """Characteristic word s_n = floor((n+2) v) - floor((n+1) v), n = 0..length-1.

    ``slope`` may be an exact Surd, so irrational rotation numbers give exact
    finite truncations.
    """
    v = Surd.coerce(slope)
    return "".join(str((v * (n + 2)).floor() - (v * (n + 1)).floor()) for n in range(length))


def fibonacci_words(count):
    """10, 101, 10110, 10110101, ... from w_{n+1} = w_n w_{n-1}."""
    words = ["10", "101"]
    while len(words) < count:
        words.append(words[-1] + words[-2])
    return words[:count]


def multiplier_bounds(rotation):
    """(floor(q/m)^(2m), (1 + ceil(q/m))^(2m)) with m the minority count."""
    m, q = rotation.minority, rotation.q
    return (q // m) ** (2 * m), (1 + -(-q // m)) ** (2 * m)


def t_multiplier(rotation):
    return multiplier(t_word(rotation).word)


@dataclass(frozen=True)
class BlockStructure:
    r: int
    s: int
    blocks: tuple
    majority: Letter

    def kinds(self):
        """Distinct block shapes, shortest first."""
        return tuple(sorted(set(self.blocks), key=len))


def block_structure(block):
    """Split a Sturmian block into blocks majority^k minority, k in {r-1, r}."""
    word = block.word if isinstance(block, SturmianBlock) else block
    letters = tuple(word.letters)
    if not is_sturmian(letters):
        raise DecompositionError(f"{word} is not Sturmian")
    n_alpha = sum(1 for l in letters if l is Letter.ALPHA)
    n_beta = len(letters) - n_alpha
    if n_alpha == 0 or n_beta == 0:
        raise DecompositionError(f"{word} uses only one letter")
    minority = Letter.ALPHA if n_alpha <= n_beta else Letter.BETA
    majority = minority.other
    m = min(n_alpha, n_beta)
    r = len(letters) // m
    k = max(i for i, l in enumerate(letters) if l is minority)
    rotated = letters[k + 1:] + letters[:k + 1]
    blocks, current = [], []
    for l in rotated:
        current.append(l.value)
        if l is minority:
            blocks.append("".join(current))
            current = []
    for b in blocks:
        if len(b) - 1 not in (r - 1, r):
            raise DecompositionError(f"block {b} of {word} does not have {r - 1} or {r} {majority.value}'s")
    return BlockStructure(r, len(blocks), tuple(blocks), majority)


def sturmian_report(rotation):
    blk = t_word(rotation)
    mu = multiplier(blk.word)
    lo, hi = multiplier_bounds(rotation)
    bs = block_structure(blk)
    return {
        "p": rotation.p,
        "q": rotation.q,
        "word": str(blk.word),
        "trace": blk.word.trace,
        "blocks": {"r": bs.r, "s": bs.s, "kinds": list(bs.kinds()), "sequence": list(bs.blocks)},
        "multiplier": mu.to_json(),
        "bounds": {"lower": lo, "upper": hi, "inside": bool(lo < mu < hi)},
    }
