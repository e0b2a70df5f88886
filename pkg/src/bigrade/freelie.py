"""Free Lie rings with Lyndon bases, derivations and the contraction map.

Symbols are integers 0..p+q-1: ``a1..ap`` are 0..p-1 and ``b1..bq`` follow.
A polynomial is a dict mapping symbol tuples to nonzero ints.  Every Lie
element is carried as coordinates over the Lyndon basis of its grade, and all
bracketing goes through the embedding mu into the tensor algebra followed by
triangular projection.

Three gradings share the machinery:

* ``bigraded``: grade (m, n) counts a- and b-symbols
* ``total``: grade is length (the free Lie ring on H = A + B)
* ``weighted``: grade is wa*m + wb*n, default (2, 1)
"""

import functools
import itertools

from . import snf
from .words import InvalidDegree, NotSurfaceMode


class NotALieElement(ValueError):
    def __init__(self, residue, message=None):
        self.residue = residue
        super().__init__(message or f"polynomial is not a Lie element; residue has {len(residue)} terms")


class NotInImage(ValueError):
    pass


class GradeMismatch(ValueError):
    pass


# polynomial arithmetic

def poly_add(*ps):
    out = {}
    for p in ps:
        for w, c in p.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def poly_scale(p, c):
    if c == 0:
        return {}
    return {w: c * v for w, v in p.items()}


def poly_mul(p1, p2):
    out = {}
    for u, a in p1.items():
        for v, b in p2.items():
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                del out[w]
    return out


def poly_commutator(p1, p2):
    return poly_add(poly_mul(p1, p2), poly_scale(poly_mul(p2, p1), -1))


def is_lyndon(w):
    n = len(w)
    if n == 0:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, n)) and all(w < w[i:] for i in range(1, n))


def standard_factorization(w):
    """w = u v with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


@functools.lru_cache(maxsize=None)
def _mu_word(w):
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return poly_commutator(_mu_word(u), _mu_word(v))


def mu_of_lyndon(w):
    return dict(_mu_word(tuple(w)))


@functools.lru_cache(maxsize=None)
def lyndon_words_with_counts(p, q, m, n):
    """Sorted Lyndon words with m symbols below p and n symbols in p..p+q-1."""
    if m < 0 or n < 0 or m + n == 0 or (m and not p) or (n and not q):
        return ()
    xs = range(p)
    ys = range(p, p + q)
    out = []
    for xpos in itertools.combinations(range(m + n), m):
        xset = set(xpos)
        pools = [xs if k in xset else ys for k in range(m + n)]
        for w in itertools.product(*pools):
            if is_lyndon(w):
                out.append(w)
    out.sort()
    return tuple(out)


def symbol_label(sym, p):
    return f"a{sym + 1}" if sym < p else f"b{sym - p + 1}"


def bracket_text(w, p):
    """Standard bracketing of a Lyndon word, e.g. ``[a1,[a1,b1]]``."""
    if len(w) == 1:
        return symbol_label(w[0], p)
    u, v = standard_factorization(w)
    return f"[{bracket_text(u, p)},{bracket_text(v, p)}]"


class LieAlgebra:
    """Free Lie ring on p a-symbols and q b-symbols under a chosen grading."""

    def __init__(self, p, q, kind="bigraded", weights=(2, 1)):
        if kind not in ("bigraded", "total", "weighted"):
            raise ValueError(f"unknown grading {kind!r}")
        self.p, self.q = p, q
        self.kind = kind
        self.weights = tuple(weights) if kind == "weighted" else (1, 1)
        self._basis = {}

    @property
    def nsym(self):
        return self.p + self.q

    def key(self):
        return (self.p, self.q, self.kind, self.weights)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LieAlgebra(p={self.p}, q={self.q}, {self.kind}{'' if self.kind != 'weighted' else self.weights})"

    @property
    def surface(self):
        return self.p == self.q and self.p >= 1

    def grade_of_word(self, w):
        m = sum(1 for a in w if a < self.p)
        n = len(w) - m
        return self._grade_from_counts(m, n)

    def _grade_from_counts(self, m, n):
        if self.kind == "bigraded":
            return (m, n)
        return self.weights[0] * m + self.weights[1] * n

    def gen_grade(self, sym):
        return self._grade_from_counts(1, 0) if sym < self.p else self._grade_from_counts(0, 1)

    def add_grade(self, g1, g2):
        if self.kind == "bigraded":
            return (g1[0] + g2[0], g1[1] + g2[1])
        return g1 + g2

    def normalize_grade(self, g):
        if self.kind == "bigraded":
            return (int(g[0]), int(g[1]))
        return int(g)

    def count_splits(self, grade):
        """Bidegrees (m, n) contributing to a grade."""
        if self.kind == "bigraded":
            m, n = grade
            return [(m, n)] if m >= 0 and n >= 0 and m + n >= 1 else []
        wa, wb = self.weights
        out = []
        for m in range(0, grade // wa + 1):
            rest = grade - wa * m
            if rest >= 0 and rest % wb == 0 and m + rest // wb >= 1:
                out.append((m, rest // wb))
        return out

    def basis(self, grade):
        grade = self.normalize_grade(grade)
        b = self._basis.get(grade)
        if b is None:
            words = []
            for m, n in self.count_splits(grade):
                words.extend(lyndon_words_with_counts(self.p, self.q, m, n))
            words.sort()
            b = (tuple(words), {w: i for i, w in enumerate(words)})
            self._basis[grade] = b
        return b[0]

    def index(self, grade):
        self.basis(grade)
        return self._basis[self.normalize_grade(grade)][1]

    def rank(self, grade):
        return len(self.basis(grade))

    def zero(self, grade):
        grade = self.normalize_grade(grade)
        return LieElement(self, grade, (0,) * self.rank(grade))

    def generator(self, sym):
        return self.basis_element((sym,))

    def a(self, i):
        return self.generator(i - 1)

    def b(self, j):
        return self.generator(self.p + j - 1)

    def basis_element(self, w):
        w = tuple(w)
        g = self.grade_of_word(w)
        idx = self.index(g)
        if w not in idx:
            raise NotALieElement({w: 1}, f"{w} is not a Lyndon basis word")
        coords = [0] * len(idx)
        coords[idx[w]] = 1
        return LieElement(self, g, tuple(coords))

    def project(self, poly, grade=None):
        """Unique Lie element with the given mu-image (see :func:`lie_project`)."""
        return lie_project(poly, grade, self)

    def multibracket(self, syms):
        """Right-nested Lie bracket of generator symbols."""
        syms = list(syms)
        if not syms:
            raise InvalidDegree("empty bracket")
        acc = self.generator(syms[-1])
        for s in reversed(syms[:-1]):
            acc = lie_bracket(self.generator(s), acc)
        return acc


@functools.lru_cache(maxsize=None)
def lie_algebra(p, q, kind="bigraded", weights=(2, 1)):
    """Shared algebra instance (bases are cached on it)."""
    return LieAlgebra(p, q, kind, weights)


class LieElement:
    """Integer coordinates over the Lyndon basis of one grade."""

    __slots__ = ("algebra", "grade", "coords")

    def __init__(self, algebra, grade, coords):
        self.algebra = algebra
        self.grade = algebra.normalize_grade(grade)
        self.coords = tuple(int(c) for c in coords)
        if len(self.coords) != algebra.rank(self.grade):
            raise GradeMismatch("coordinate length does not match basis size")

    def _same(self, other):
        if self.algebra != other.algebra or self.grade != other.grade:
            raise GradeMismatch(f"grades {self.grade} and {other.grade} differ")

    def __add__(self, other):
        self._same(other)
        return LieElement(self.algebra, self.grade, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return LieElement(self.algebra, self.grade, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LieElement(self.algebra, self.grade, (-a for a in self.coords))

    def __mul__(self, c):
        return LieElement(self.algebra, self.grade, (c * a for a in self.coords))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, LieElement) and self.algebra == other.algebra
                and self.grade == other.grade and self.coords == other.coords)

    def __hash__(self):
        return hash((self.algebra, self.grade, self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def terms(self):
        basis = self.algebra.basis(self.grade)
        return [(basis[i], c) for i, c in enumerate(self.coords) if c]

    def poly(self):
        return mu_embed(self)

    def text(self):
        return format_lie_terms(self.terms(), self.algebra.p)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LieElement({self.grade}: {self.text()})"


def format_lie_terms(terms, p):
    out = []
    for w, c in terms:
        body = bracket_text(w, p)
        text = body if abs(c) == 1 else f"{abs(c)}*{body}"
        if not out:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(("+ " if c > 0 else "- ") + text)
    return " ".join(out) if out else "0"


def lyndon_basis(alg, grade):
    """Lyndon basis words of one grade, in lexicographic order."""
    return alg.basis(grade)


def mu_embed(u):
    """Image in the tensor algebra: a_i -> X_i, b_j -> Y_j, brackets to commutators."""
    out = {}
    for w, c in u.terms():
        out = poly_add(out, poly_scale(_mu_word(w), c))
    return out


def lie_project(poly, grade, alg):
    """Left inverse of mu by triangular elimination on Lyndon leading words.

    Raises NotALieElement carrying the residue when the polynomial is not in
    the image.  ``grade`` may be None when the polynomial is nonzero.
    """
    residue = {w: c for w, c in poly.items() if c}
    if grade is None:
        if not residue:
            raise ValueError("grade required for the zero polynomial")
        grade = alg.grade_of_word(next(iter(residue)))
    grade = alg.normalize_grade(grade)
    idx = alg.index(grade)
    for w in residue:
        if alg.grade_of_word(w) != grade:
            raise GradeMismatch(f"monomial {w} is not of grade {grade}")
    coords = [0] * len(idx)
    while residue:
        w = min(residue)
        if w not in idx:
            raise NotALieElement(residue)
        c = residue[w]
        coords[idx[w]] = c
        residue = poly_add(residue, poly_scale(_mu_word(w), -c))
    return LieElement(alg, grade, coords)


def lie_bracket(u, v):
    if u.algebra != v.algebra:
        raise GradeMismatch("elements from different algebras")
    alg = u.algebra
    grade = alg.add_grade(u.grade, v.grade)
    if u.is_zero() or v.is_zero():
        return alg.zero(grade)
    return lie_project(poly_commutator(mu_embed(u), mu_embed(v)), grade, alg)


def omega(g, alg=None):
    """Sum of [a_i, b_i] in the bigraded (or given surface) algebra."""
    if g < 1:
        raise NotSurfaceMode("genus must be positive")
    alg = alg or lie_algebra(g, g)
    if not (alg.p == alg.q == g):
        raise NotSurfaceMode(f"algebra {alg} is not of genus {g}")
    out = None
    for i in range(1, g + 1):
        t = lie_bracket(alg.a(i), alg.b(i))
        out = t if out is None else out + t
    return out


def regrade(u, target):
    """Same polynomial, re-expressed in another grading of the same symbols."""
    if (u.algebra.p, u.algebra.q) != (target.p, target.q):
        raise GradeMismatch("symbol sets differ")
    poly = mu_embed(u)
    grades = {target.grade_of_word(w) for w in poly}
    if len(grades) > 1:
        raise GradeMismatch(f"element is not homogeneous in the target grading: {sorted(grades)}")
    if not grades and u.algebra.kind == "bigraded":
        grades = {target._grade_from_counts(*u.grade)}
    if not grades:
        raise GradeMismatch("cannot infer the target grade of zero")
    return lie_project(poly, grades.pop(), target)


def regrade_total(u):
    return regrade(u, lie_algebra(u.algebra.p, u.algebra.q, "total"))


class DerivationElement:
    """Derivation of degree ``shift`` stored by its values on generators.

    ``values[k]`` is the image of symbol k and lies in grade
    gen_grade(k) + shift.  In the bigraded case shift (m, n) puts d(a_i) in
    bidegree (m+1, n) and d(b_j) in (m, n+1).
    """

    __slots__ = ("algebra", "shift", "values")

    def __init__(self, algebra, shift, values):
        self.algebra = algebra
        self.shift = algebra.normalize_grade(shift)
        values = list(values)
        if len(values) != algebra.nsym:
            raise ValueError("one value per generator required")
        out = []
        for k, v in enumerate(values):
            grade = algebra.add_grade(algebra.gen_grade(k), self.shift)
            if v is None:
                v = algebra.zero(grade)
            elif v.grade != algebra.normalize_grade(grade) or v.algebra != algebra:
                raise GradeMismatch(f"value on {symbol_label(k, algebra.p)} has grade {v.grade}, expected {grade}")
            out.append(v)
        self.values = tuple(out)

    @classmethod
    def zero(cls, algebra, shift):
        return cls(algebra, shift, [None] * algebra.nsym)

    @classmethod
    def from_coords(cls, algebra, shift, coords):
        vals = []
        pos = 0
        for k in range(algebra.nsym):
            grade = algebra.add_grade(algebra.gen_grade(k), algebra.normalize_grade(shift))
            r = algebra.rank(grade)
            vals.append(LieElement(algebra, grade, coords[pos:pos + r]))
            pos += r
        if pos != len(coords):
            raise ValueError("coordinate vector has the wrong length")
        return cls(algebra, shift, vals)

    def coords(self):
        out = []
        for v in self.values:
            out.extend(v.coords)
        return tuple(out)

    def __add__(self, other):
        return DerivationElement(self.algebra, self.shift, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return DerivationElement(self.algebra, self.shift, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return DerivationElement(self.algebra, self.shift, [-a for a in self.values])

    def __mul__(self, c):
        return DerivationElement(self.algebra, self.shift, [c * a for a in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, DerivationElement) and self.algebra == other.algebra
                and self.shift == other.shift and self.values == other.values)

    def __hash__(self):
        return hash((self.algebra, self.shift, self.values))

    def is_zero(self):
        return all(v.is_zero() for v in self.values)

    def text(self):
        p = self.algebra.p
        return "; ".join(f"d({symbol_label(k, p)})={v.text()}" for k, v in enumerate(self.values))

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"DerivationElement(shift={self.shift}: {self.text()})"

    def to_json(self):
        p = self.algebra.p
        return {"shift": list(self.shift) if isinstance(self.shift, tuple) else self.shift,
                "values": {symbol_label(k, p): v.text() for k, v in enumerate(self.values)}}


def _apply_poly(d, poly):
    """Extend d as an associative derivation of the tensor algebra."""
    images = [mu_embed(v) if not v.is_zero() else {} for v in d.values]
    out = {}
    for w, c in poly.items():
        for j, sym in enumerate(w):
            img = images[sym]
            if not img:
                continue
            left, right = w[:j], w[j + 1:]
            for u, b in img.items():
                key = left + u + right
                v = out.get(key, 0) + c * b
                if v:
                    out[key] = v
                else:
                    del out[key]
    return out


def derivation_apply(d, u):
    """Unique derivation extension of the generator values, applied to u."""
    alg = d.algebra
    grade = alg.add_grade(u.grade, d.shift)
    return lie_project(_apply_poly(d, mu_embed(u)), grade, alg)


def xi_contract(d):
    """Sum_i [a_i, d(b_i)] - [b_i, d(a_i)], which equals d(Omega)."""
    alg = d.algebra
    if not alg.surface:
        raise NotSurfaceMode(f"algebra ({alg.p},{alg.q}) is not a surface algebra")
    g = alg.p
    grade = alg.add_grade(alg.add_grade(alg.gen_grade(0), alg.gen_grade(g)), d.shift)
    out = alg.zero(grade)
    for i in range(g):
        db, da = d.values[g + i], d.values[i]
        if not db.is_zero():
            out = out + lie_bracket(alg.generator(i), db)
        if not da.is_zero():
            out = out - lie_bracket(alg.generator(g + i), da)
    return out


def xi_matrix(alg, shift):
    """Matrix of the contraction on the generator-value coordinates."""
    g = alg.p
    target = alg.add_grade(alg.add_grade(alg.gen_grade(0), alg.gen_grade(g)), alg.normalize_grade(shift))
    nrows = alg.rank(target)
    cols = []
    ncols = sum(alg.rank(alg.add_grade(alg.gen_grade(k), alg.normalize_grade(shift)))
                for k in range(alg.nsym))
    for j in range(ncols):
        e = [0] * ncols
        e[j] = 1
        d = DerivationElement.from_coords(alg, shift, e)
        cols.append(list(xi_contract(d).coords) if nrows else [])
    rows = [[cols[j][i] for j in range(ncols)] for i in range(nrows)]
    return rows, ncols


def dmn_kernel(alg_or_pq, mn, kind="bigraded"):
    """Integer basis of the kernel of the contraction (symplectic derivations).

    Accepts an algebra or a (p, q) pair.  Extended bidegrees (m, -1) and
    (-1, n) are allowed.  The returned lattice is saturated.
    """
    alg = alg_or_pq if isinstance(alg_or_pq, LieAlgebra) else lie_algebra(*alg_or_pq, kind)
    if not alg.surface:
        raise NotSurfaceMode(f"algebra ({alg.p},{alg.q}) is not a surface algebra")
    if alg.kind == "bigraded":
        m, n = mn
        if m < -1 or n < -1 or m + n < 1:
            raise InvalidDegree(f"({m},{n}) is outside the extended range")
    elif mn < 1:
        raise InvalidDegree(f"degree {mn} must be positive")
    rows, ncols = xi_matrix(alg, mn)
    kernel = snf.integer_kernel(rows, ncols)
    return [DerivationElement.from_coords(alg, mn, v) for v in kernel]


def regrade_derivation(d, target, shift):
    vals = []
    for k, v in enumerate(d.values):
        grade = target.add_grade(target.gen_grade(k), shift)
        if v.is_zero():
            vals.append(target.zero(grade))
        else:
            vals.append(lie_project(mu_embed(v), grade, target))
    return DerivationElement(target, shift, vals)


def j_map(d):
    """Bigraded derivation of degree (m,n) as a total-degree m+n derivation."""
    m, n = d.shift
    return regrade_derivation(d, lie_algebra(d.algebra.p, d.algebra.q, "total"), m + n)


def ja_map(d, weights=(2, 1)):
    """Bigraded derivation of degree (m,n) in the weighted grading (degree 2m+n)."""
    m, n = d.shift
    wa, wb = weights
    shift = wa * m + wb * n
    if shift < 1:
        raise InvalidDegree(f"weighted degree {shift} is not positive")
    return regrade_derivation(d, lie_algebra(d.algebra.p, d.algebra.q, "weighted", tuple(weights)), shift)


# third exterior power of H = A + B, as symplectic degree-one derivations

def _sorted_triple(t):
    """Sort a triple of distinct symbols; return (sign, triple) or (0, None)."""
    a = list(t)
    if len(set(a)) < 3:
        return 0, None
    sign = 1
    for i in range(3):
        for j in range(2 - i):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                sign = -sign
    return sign, tuple(a)


def wedge_normalize(triples):
    """Collect a dict triple -> coefficient into sorted-triple normal form."""
    out = {}
    for t, c in triples.items():
        sign, key = _sorted_triple(t)
        if sign:
            v = out.get(key, 0) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _tensor_from_derivation(d):
    """Tensor sum_k e_k (x) T_k with T_{a_i} = d(b_i), T_{b_i} = -d(a_i)."""
    g = d.algebra.p
    out = {}
    for i in range(g):
        out[i] = d.values[g + i]
        out[g + i] = -d.values[i]
    return out


def wedge3_encode(triples, g):
    """x^y^z -> x (x) [y,z] + y (x) [z,x] + z (x) [x,y], as a derivation on H."""
    alg = lie_algebra(g, g, "total")
    tensor = {k: alg.zero(2) for k in range(2 * g)}
    for t, c in wedge_normalize(triples).items():
        x, y, z = t
        for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
            tensor[u] = tensor[u] + c * lie_bracket(alg.generator(v), alg.generator(w))
    vals = [None] * (2 * g)
    for i in range(g):
        vals[g + i] = tensor[i]
        vals[i] = -tensor[g + i]
    return DerivationElement(alg, 1, vals)


def wedge3_decode(d):
    """Inverse of :func:`wedge3_encode`; raises NotInImage off the image."""
    alg = d.algebra
    if alg.kind != "total" or d.shift != 1 or not alg.surface:
        raise NotInImage("expected a degree-one derivation of the free Lie ring on H")
    g = alg.p
    tensor = _tensor_from_derivation(d)
    idx = alg.index(2)
    out = {}
    for x, y, z in itertools.combinations(range(2 * g), 3):
        c = tensor[x].coords[idx[(y, z)]]
        if c:
            out[(x, y, z)] = c
    if wedge3_encode(out, g) != d:
        raise NotInImage("derivation is not in the image of the third exterior power")
    return out


def wedge_text(triples, g):
    """``a1^a2^b1 - 2*a1^a2^a3``."""
    out = []
    for t, c in sorted(wedge_normalize(triples).items()):
        body = "^".join(symbol_label(s, g) for s in t)
        text = body if abs(c) == 1 else f"{abs(c)}*{body}"
        if not out:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(("+ " if c > 0 else "- ") + text)
    return " ".join(out) if out else "0"


def parse_wedge(text, g):
    """Inverse of :func:`wedge_text` for simple inputs like ``a1^a2^b1``."""
    import re
    text = text.replace(" ", "")
    if text in ("", "0"):
        return {}
    out = {}
    for sign, coef, body in re.findall(r"([+-]?)(?:(\d+)\*)?([ab]\d+\^[ab]\d+\^[ab]\d+)", text):
        c = int(coef or 1) * (-1 if sign == "-" else 1)
        syms = []
        for tok in body.split("^"):
            k = int(tok[1:])
            if not 1 <= k <= g:
                raise ValueError(f"symbol {tok} outside genus {g}")
            syms.append(k - 1 if tok[0] == "a" else g + k - 1)
        out[tuple(syms)] = out.get(tuple(syms), 0) + c
    return wedge_normalize(out)
