"""Free-group words over the split alphabet x1..xp, y1..yq.

Letters are signed integers: generator ``k`` (1-based) is ``x_k`` for
``k <= p`` and ``y_{k-p}`` otherwise, and ``-k`` is its inverse.  Words are
always stored freely reduced.
"""

import itertools
import re
from dataclasses import dataclass


class InvalidLetter(ValueError):
    pass


class EmptyBracket(ValueError):
    pass


class InvalidDegree(ValueError):
    pass


class NotAnAutomorphism(ValueError):
    pass


class NotSurfaceMode(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Generator counts of the free group <x1..xp, y1..yq>."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError(f"bad alphabet sizes p={self.p}, q={self.q}")

    @property
    def rank(self):
        return self.p + self.q

    @property
    def surface(self):
        return self.p == self.q and self.p >= 1

    @property
    def genus(self):
        if not self.surface:
            raise NotSurfaceMode(f"alphabet ({self.p},{self.q}) is not a surface alphabet")
        return self.p

    def x(self, i):
        if not 1 <= i <= self.p:
            raise InvalidLetter(f"x{i}")
        return Word((i,))

    def y(self, j):
        if not 1 <= j <= self.q:
            raise InvalidLetter(f"y{j}")
        return Word((self.p + j,))

    def generators(self):
        return [Word((k,)) for k in range(1, self.rank + 1)]

    def is_x(self, letter):
        return abs(letter) <= self.p

    def name(self, gen):
        if gen <= self.p:
            return f"x{gen}"
        return f"y{gen - self.p}"

    def gen_id(self, name):
        m = re.fullmatch(r"([xy])(\d+)", name.strip())
        if not m:
            raise InvalidLetter(name)
        idx = int(m.group(2))
        if m.group(1) == "x":
            if not 1 <= idx <= self.p:
                raise InvalidLetter(name)
            return idx
        if not 1 <= idx <= self.q:
            raise InvalidLetter(name)
        return self.p + idx

    def check(self, letters):
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise InvalidLetter(f"letter {a} outside alphabet ({self.p},{self.q})")


def _free_reduce(letters):
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


class Word:
    """A freely reduced word, immutable and hashable."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", _free_reduce(letters))

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word, (self.letters,))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self):
        return Word(tuple(-a for a in reversed(self.letters)))

    def __invert__(self):
        return self.inverse()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __repr__(self):
        return f"Word({self.letters})"

    def bidegree(self, alpha):
        nx = sum(1 for a in self.letters if abs(a) <= alpha.p)
        return (nx, len(self.letters) - nx)


IDENTITY = Word()


def reduce(letters, alpha=None):
    """Freely reduce a raw letter sequence."""
    letters = tuple(letters)
    if alpha is not None:
        alpha.check(letters)
    elif any(a == 0 for a in letters):
        raise InvalidLetter("letter 0")
    return Word(letters)


_TOKEN = re.compile(r"([xy])(\d+)(?:\^\(?(-?\d+)\)?)?")


def parse_word(text, alpha):
    """Parse ``x1 y2^-1 x1``; separators may be whitespace, ``*`` or ``.``."""
    text = text.strip()
    if text in ("", "1", "e", "ε"):
        return IDENTITY
    letters = []
    pos = 0
    for m in _TOKEN.finditer(text):
        gap = text[pos:m.start()]
        if gap.strip(" \t*.") != "":
            raise InvalidLetter(f"cannot parse {gap!r} in {text!r}")
        gen = alpha.gen_id(m.group(1) + m.group(2))
        k = int(m.group(3)) if m.group(3) is not None else 1
        letters.extend([gen if k > 0 else -gen] * abs(k))
        pos = m.end()
    if text[pos:].strip(" \t*.") != "":
        raise InvalidLetter(f"cannot parse {text[pos:]!r} in {text!r}")
    return Word(letters)


def format_word(w, alpha):
    """Render with run-length exponents, e.g. ``x1^2 y1^-1``."""
    if not w.letters:
        return "1"
    parts = []
    for a, run in itertools.groupby(w.letters):
        k = len(list(run)) * (1 if a > 0 else -1)
        name = alpha.name(abs(a))
        parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts)


def commutator(a, b):
    """[a,b] = a b a^-1 b^-1."""
    return Word(a.letters + b.letters + a.inverse().letters + b.inverse().letters)


def conjugate(a, b):
    """The left conjugate a b a^-1."""
    return Word(a.letters + b.letters + a.inverse().letters)


def multibracket(us):
    """Right-nested bracket [u1,[u2,[...,[u_{r-1},u_r]...]]]."""
    us = list(us)
    if not us:
        raise EmptyBracket("multibracket of an empty list")
    acc = us[-1]
    for u in reversed(us[:-1]):
        acc = commutator(u, acc)
    return acc


def mn_letter_sequences(alpha, m, n):
    """All sequences of m positive x-letters and n positive y-letters."""
    xs = range(1, alpha.p + 1)
    ys = range(alpha.p + 1, alpha.p + alpha.q + 1)
    for xpos in itertools.combinations(range(m + n), m):
        xset = set(xpos)
        pools = [xs if k in xset else ys for k in range(m + n)]
        for seq in itertools.product(*pools):
            yield seq


def enumerate_mn_commutators(alpha, m, n, nontrivial_only=False):
    """List of (letter sequence, word) for all (m,n)-commutators."""
    if m < 0 or n < 0 or m + n == 0:
        raise InvalidDegree(f"({m},{n}) is not a positive bidegree")
    out = []
    for seq in mn_letter_sequences(alpha, m, n):
        w = multibracket([Word((a,)) for a in seq])
        if nontrivial_only and not w:
            continue
        out.append((seq, w))
    return out


class FreeGroupAut:
    """Automorphism given by generator images together with a verified inverse.

    ``fwd`` and ``inv`` map generator ids (1..p+q) to words.  Generators not
    listed are fixed.
    """

    __slots__ = ("alpha", "fwd", "inv", "name")

    def __init__(self, alpha, fwd, inv, name=None, check=True):
        self.alpha = alpha
        self.fwd = {k: fwd.get(k, Word((k,))) for k in range(1, alpha.rank + 1)}
        self.inv = {k: inv.get(k, Word((k,))) for k in range(1, alpha.rank + 1)}
        self.name = name
        if check:
            for table in (self.fwd, self.inv):
                for w in table.values():
                    alpha.check(w.letters)
            for k in range(1, alpha.rank + 1):
                g = Word((k,))
                if _apply(self.fwd, _apply(self.inv, g)) != g or _apply(self.inv, _apply(self.fwd, g)) != g:
                    raise NotAnAutomorphism(
                        f"inverse table does not invert {alpha.name(k)}"
                        + (f" in {name}" if name else ""))

    def __call__(self, w):
        return _apply(self.fwd, w)

    def apply_inverse(self, w):
        return _apply(self.inv, w)

    def inverse(self):
        return FreeGroupAut(self.alpha, self.inv, self.fwd, check=False,
                            name=None if self.name is None else self.name + "^-1")

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, FreeGroupAut) and self.alpha == other.alpha and self.fwd == other.fwd

    def __hash__(self):
        return hash(tuple(self.fwd[k] for k in sorted(self.fwd)))

    def is_identity(self):
        return all(w == Word((k,)) for k, w in self.fwd.items())

    def __repr__(self):
        body = ", ".join(f"{self.alpha.name(k)}->{format_word(w, self.alpha)}"
                         for k, w in self.fwd.items() if w != Word((k,)))
        return f"FreeGroupAut({self.name or ''}: {body or 'id'})"


def _apply(table, w):
    out = []
    for a in w.letters:
        img = table[a] if a > 0 else table[-a].inverse()
        out.extend(img.letters)
    return Word(out)


def apply_aut(h, w):
    return h(w)


def identity_aut(alpha):
    return FreeGroupAut(alpha, {}, {}, name="id", check=False)


def compose(g, h):
    """(g o h)(x) = g(h(x))."""
    if g.alpha != h.alpha:
        raise ValueError("alphabet mismatch")
    fwd = {k: g(w) for k, w in h.fwd.items()}
    inv = {k: h.apply_inverse(w) for k, w in g.inv.items()}
    return FreeGroupAut(g.alpha, fwd, inv, check=False)


def inverse(h):
    return h.inverse()


def aut_power(h, k):
    out = identity_aut(h.alpha)
    base = h if k >= 0 else h.inverse()
    for _ in range(abs(k)):
        out = compose(out, base)
    return out


def aut_commutator(g, h):
    """[g,h] = g h g^-1 h^-1 in Aut(K)."""
    return compose(compose(g, h), compose(g.inverse(), h.inverse()))


def aut_conjugate(f, h):
    """The conjugate f h f^-1."""
    return compose(compose(f, h), f.inverse())


def aut_product(*hs):
    out = hs[0]
    for h in hs[1:]:
        out = compose(out, h)
    return out


def phi_ab(alpha, a, b):
    """Magnus generator a -> b^-1 a b (a, b generator ids, a != b)."""
    wa, wb = Word((a,)), Word((b,))
    return FreeGroupAut(alpha, {a: wb.inverse() * wa * wb}, {a: wb * wa * wb.inverse()},
                        name=f"phi_{alpha.name(a)}{alpha.name(b)}")


def phi_abc(alpha, a, b, c):
    """Magnus generator a -> a[b,c] (a, b, c generator ids, a not in {b, c})."""
    wa = Word((a,))
    comm = commutator(Word((b,)), Word((c,)))
    return FreeGroupAut(alpha, {a: wa * comm}, {a: wa * comm.inverse()},
                        name=f"phi_{alpha.name(a)}{alpha.name(b)}{alpha.name(c)}")


def boundary_word(g):
    """prod_i [x_i^-1, y_i^-1] in the genus-g surface alphabet."""
    if g < 1:
        raise NotSurfaceMode("genus must be positive")
    alpha = Alphabet(g, g)
    w = IDENTITY
    for i in range(1, g + 1):
        w = w * commutator(alpha.x(i).inverse(), alpha.y(i).inverse())
    return w


def fixes_boundary(h):
    if not h.alpha.surface:
        raise NotSurfaceMode(f"alphabet ({h.alpha.p},{h.alpha.q}) is not a surface alphabet")
    zeta = boundary_word(h.alpha.p)
    return h(zeta) == zeta


def random_word(rng, alpha, max_len, min_len=0):
    """Uniform-length reduced random word (rng is a numpy Generator)."""
    length = int(rng.integers(min_len, max_len + 1))
    letters = []
    while len(letters) < length:
        a = int(rng.integers(1, alpha.rank + 1)) * (1 if rng.integers(2) else -1)
        if letters and letters[-1] == -a:
            continue
        letters.append(a)
    return Word(letters)
