"""Words in the modular-group generators alpha: z -> z+1 and beta: z -> z/(z+1).

A word is read right to left: its rightmost letter acts first, and its
matrix is the plain product of the generator matrices as written.
"""

from dataclasses import dataclass, field
from enum import Enum

from .surd import Surd, mobius


class WordError(ValueError):
    pass


class NoMixedLettersError(WordError):
    pass


class ClassificationError(WordError):
    pass


class Letter(Enum):
    ALPHA = "a"
    BETA = "b"

    def __str__(self):
        return self.value

    @property
    def matrix(self):
        return (1, 1, 0, 1) if self is Letter.ALPHA else (1, 0, 1, 1)

    @property
    def other(self):
        return Letter.BETA if self is Letter.ALPHA else Letter.ALPHA


class Kind(Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"


class Side(Enum):
    MINUS = "minus"
    PLUS = "plus"


def matmul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def parse_letters(text):
    try:
        return tuple(Letter(ch) for ch in text.strip())
    except ValueError:
        raise WordError(f"word {text!r} must use only the letters 'a' and 'b'") from None


@dataclass(frozen=True)
class Word:
    letters: tuple
    matrix: tuple = field(compare=False)

    def __str__(self):
        return "".join(l.value for l in self.letters)

    def __len__(self):
        return len(self.letters)

    @property
    def trace(self):
        return self.matrix[0] + self.matrix[3]

    def count(self, letter):
        return sum(1 for l in self.letters if l is letter)

    @property
    def mixed(self):
        return 0 < self.count(Letter.ALPHA) < len(self.letters)

    def __call__(self, x):
        return mobius(self.matrix, x)


def compose(letters):
    """Build the Word for a sequence of letters (or a string over 'ab')."""
    if isinstance(letters, str):
        letters = parse_letters(letters)
    letters = tuple(letters)
    if not letters:
        raise WordError("a word needs at least one letter")
    m = (1, 0, 0, 1)
    for l in letters:
        m = matmul(m, l.matrix)
    return Word(letters, m)


def classify(w):
    t = w.trace
    if t > 2:
        return Kind.HYPERBOLIC
    if t == 2:
        return Kind.PARABOLIC
    return Kind.ELLIPTIC


@dataclass(frozen=True)
class FixedPointPair:
    x_minus: Surd
    x_plus: Surd


def fixed_points(w):
    """Exact roots of c x^2 + (d-a) x - b = 0; the repelling one is negative."""
    if not w.mixed:
        raise NoMixedLettersError(f"word {w} must contain both letters")
    a, b, c, d = w.matrix
    disc = (a + d) ** 2 - 4
    return FixedPointPair(Surd(a - d, -1, 2 * c, disc), Surd(a - d, 1, 2 * c, disc))


def eigenvalue(w):
    """Larger eigenvalue (t + sqrt(t^2-4))/2 of a hyperbolic word."""
    if classify(w) is not Kind.HYPERBOLIC:
        raise ClassificationError(f"word {w} is not hyperbolic (trace {w.trace})")
    t = w.trace
    return Surd(t, 1, 2, t * t - 4)


def multiplier(w):
    """mu = lambda^2, the derivative of the word at its repelling fixed point."""
    return eigenvalue(w) ** 2


def derivative(w, x):
    _, _, c, d = w.matrix
    return (Surd.coerce(x) * c + d) ** -2


def orbit_cycle(w, which=Side.MINUS):
    """Cycle through the fixed point, applying letters one at a time from the right."""
    pair = fixed_points(w)
    x = pair.x_minus if which is Side.MINUS else pair.x_plus
    out = [x]
    for l in reversed(w.letters[1:]):
        x = mobius(l.matrix, x)
        out.append(x)
    return out


def swap_reverse(w):
    """Swap alpha and beta and reverse the order; conjugates to the inverse word."""
    return compose(tuple(l.other for l in reversed(w.letters)))


def rotations(letters):
    letters = tuple(letters)
    return [letters[i:] + letters[:i] for i in range(len(letters))]


def _key(letters):
    return tuple(0 if l is Letter.ALPHA else 1 for l in letters)


def canonical_rotation(letters):
    """Lexicographically least rotation, ordering alpha before beta."""
    return min(rotations(letters), key=_key)


def cyclically_equal(u, v):
    u = tuple(u.letters if isinstance(u, Word) else u)
    v = tuple(v.letters if isinstance(v, Word) else v)
    return len(u) == len(v) and canonical_rotation(u) == canonical_rotation(v)


def word_report(w):
    """JSON-ready summary of a word."""
    out = {"word": str(w), "matrix": list(w.matrix), "trace": w.trace, "class": classify(w).value}
    if w.mixed:
        pair = fixed_points(w)
        out["x_minus"] = pair.x_minus.to_json()
        out["x_plus"] = pair.x_plus.to_json()
    if classify(w) is Kind.HYPERBOLIC:
        out["multiplier"] = multiplier(w).to_json()
        out["eigenvalue"] = eigenvalue(w).to_json()
    return out
