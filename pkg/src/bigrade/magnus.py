"""Truncated noncommutative power series and the Magnus expansion.

A series over the symbols X1..Xp, Y1..Yq is stored densely by length: part
``d`` is a flat integer array of size s**d (s = p+q) whose index is the
base-s reading of the monomial, so array order is lexicographic order with
X1 < ... < Xp < Y1 < ... < Yq.  Truncation is by total weighted degree; with
unit weights that is the length.
"""

import functools
import math
import re
from dataclasses import dataclass

import numpy as np


class BoundMismatch(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


_INT64_SAFE = 2 ** 62


@functools.lru_cache(maxsize=None)
def _x_counts(p, q, d):
    """Number of X symbols in each monomial of length d, in index order."""
    s = p + q
    isx = (np.arange(s) < p).astype(np.int64)
    cnt = np.zeros(1, dtype=np.int64)
    for _ in range(d):
        cnt = (cnt[:, None] + isx[None, :]).ravel()
    cnt.setflags(write=False)
    return cnt


def _decode(index, s, d):
    out = []
    for _ in range(d):
        index, r = divmod(index, s)
        out.append(r)
    return tuple(reversed(out))


def _encode(mono, s):
    idx = 0
    for a in mono:
        idx = idx * s + a
    return idx


def symbol_name(sym, p):
    return f"X{sym + 1}" if sym < p else f"Y{sym - p + 1}"


def format_monomial(mono, p):
    """``X1^2*Y1``; the empty monomial is ``1``."""
    if not mono:
        return "1"
    parts = []
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        name = symbol_name(mono[i], p)
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def format_terms(terms, p):
    """Render (monomial, coefficient) pairs already in display order."""
    out = []
    for mono, c in terms:
        body = format_monomial(mono, p)
        mag = abs(c)
        if mono:
            text = body if mag == 1 else f"{mag}*{body}"
        else:
            text = str(mag)
        if not out:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(("+ " if c > 0 else "- ") + text)
    return " ".join(out) if out else "0"


class SeriesSyntaxError(ValueError):
    pass


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?((?:[XY]\d+(?:\^\d+)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"([XY])(\d+)(?:\^(\d+))?")


def parse_terms(text, p, q):
    """Inverse of :func:`format_terms`: ``2*X1*Y1 - Y1*X1^2`` to {monomial: coefficient}."""
    text = text.strip()
    out = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group(1)):
            raise SeriesSyntaxError(f"cannot parse series text at {text[pos:]!r}")
        sign, coef, body = m.groups()
        if coef is None and not body.strip():
            raise SeriesSyntaxError(f"empty term in {text!r}")
        mono = []
        for kind, idx, exp in _FACTOR.findall(body):
            k = int(idx)
            if not 1 <= k <= (p if kind == "X" else q):
                raise SeriesSyntaxError(f"symbol {kind}{k} outside the alphabet")
            mono += [k - 1 if kind == "X" else p + k - 1] * int(exp or 1)
        c = int(coef or 1) * (-1 if sign == "-" else 1)
        key = tuple(mono)
        out[key] = out.get(key, 0) + c
        if out[key] == 0:
            del out[key]
        pos = m.end()
        first = False
    return out


class TruncatedSeries:
    """Integer noncommutative series truncated at weighted degree ``bound``.

    ``weights`` is (wx, wy); unit weights give ordinary length truncation.
    Instances are treated as immutable.
    """

    __slots__ = ("alpha", "bound", "weights", "parts")

    def __init__(self, alpha, bound, parts, weights=(1, 1)):
        self.alpha = alpha
        self.bound = int(bound)
        self.weights = tuple(weights)
        self.parts = parts
        self._mask()

    @property
    def nsym(self):
        return self.alpha.p + self.alpha.q

    @property
    def maxlen(self):
        return self.bound // min(self.weights)

    def _mask(self):
        wx, wy = self.weights
        if wx == wy:
            return
        p, q = self.alpha.p, self.alpha.q
        for d in range(len(self.parts)):
            over = wy * d + (wx - wy) * _x_counts(p, q, d) > self.bound
            if over.any():
                self.parts[d][over] = 0

    @classmethod
    def zero(cls, alpha, bound, weights=(1, 1), dtype=np.int64):
        L = bound // min(weights)
        s = alpha.p + alpha.q
        parts = [np.zeros(s ** d, dtype=dtype) for d in range(L + 1)]
        return cls(alpha, bound, parts, weights)

    @classmethod
    def one(cls, alpha, bound, weights=(1, 1), dtype=np.int64):
        out = cls.zero(alpha, bound, weights, dtype)
        out.parts[0][0] = 1
        return out

    @classmethod
    def from_terms(cls, alpha, bound, terms, weights=(1, 1)):
        """Build from a mapping monomial-tuple -> int; terms past the bound are dropped."""
        big = any(abs(int(c)) >= _INT64_SAFE for c in terms.values())
        out = cls.zero(alpha, bound, weights, dtype=object if big else np.int64)
        s = alpha.p + alpha.q
        for mono, c in terms.items():
            mono = tuple(mono)
            if any(not 0 <= a < s for a in mono):
                raise ValueError(f"symbol out of range in {mono}")
            if len(mono) < len(out.parts):
                out.parts[len(mono)][_encode(mono, s)] += int(c)
        out._mask()
        return out

    def _check(self, other):
        if self.alpha != other.alpha or self.bound != other.bound or self.weights != other.weights:
            raise BoundMismatch(
                f"series at bound {self.bound}{self.weights} vs {other.bound}{other.weights}")

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_neg(other))

    def __neg__(self):
        return series_neg(self)

    def __mul__(self, other):
        return series_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.alpha == other.alpha and self.bound == other.bound
                and self.weights == other.weights
                and all(np.array_equal(a, b) for a, b in zip(self.parts, other.parts)))

    def __hash__(self):
        return hash(tuple(self.terms()))

    @property
    def constant(self):
        return int(self.parts[0][0])

    def coefficient(self, mono):
        mono = tuple(mono)
        if len(mono) >= len(self.parts):
            return 0
        return int(self.parts[len(mono)][_encode(mono, self.nsym)])

    def terms(self):
        """Nonzero (monomial, coefficient) pairs sorted by (length, lex)."""
        out = []
        s = self.nsym
        for d, arr in enumerate(self.parts):
            for idx in np.flatnonzero(arr):
                out.append((_decode(int(idx), s, d), int(arr[idx])))
        return out

    def to_dict(self):
        return dict(self.terms())

    def homogeneous(self, mn):
        """Sparse dict of the bidegree-(m,n) component."""
        m, n = mn
        d = m + n
        if d >= len(self.parts) or m < 0 or n < 0:
            return {}
        arr = self.parts[d]
        sel = np.flatnonzero((_x_counts(self.alpha.p, self.alpha.q, d) == m) & (arr != 0))
        return {_decode(int(i), self.nsym, d): int(arr[i]) for i in sel}

    def weighted_part(self, k):
        """Sparse dict of the terms of weighted degree exactly k."""
        wx, wy = self.weights
        p, q = self.alpha.p, self.alpha.q
        out = {}
        for d, arr in enumerate(self.parts):
            sel = np.flatnonzero((wy * d + (wx - wy) * _x_counts(p, q, d) == k) & (arr != 0))
            for i in sel:
                out[_decode(int(i), self.nsym, d)] = int(arr[i])
        return out

    def truncate(self, bound):
        """Re-truncate to a smaller bound."""
        if bound > self.bound:
            raise BoundExceeded(f"cannot extend bound {self.bound} to {bound}")
        L = bound // min(self.weights)
        return TruncatedSeries(self.alpha, bound, [a.copy() for a in self.parts[:L + 1]], self.weights)

    def text(self):
        return format_terms(self.terms(), self.alpha.p)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"TruncatedSeries(bound={self.bound}, {self.text()})"


def _maxabs(series):
    m = 0
    for a in series.parts:
        if a.size:
            m = max(m, int(np.max(np.abs(a))))
    return m


def series_add(a, b):
    a._check(b)
    dtype = object if object in (a.parts[0].dtype, b.parts[0].dtype) or \
        _maxabs(a) + _maxabs(b) >= _INT64_SAFE else np.int64
    return TruncatedSeries(a.alpha, a.bound,
                           [x.astype(dtype) + y.astype(dtype) for x, y in zip(a.parts, b.parts)],
                           a.weights)


def series_neg(a):
    return TruncatedSeries(a.alpha, a.bound, [-x for x in a.parts], a.weights)


def series_mul(a, b):
    """Exact product truncated at the common bound."""
    a._check(b)
    L = len(a.parts) - 1
    big = _maxabs(a) * _maxabs(b) * (L + 1) >= _INT64_SAFE
    dtype = object if big or object in (a.parts[0].dtype, b.parts[0].dtype) else np.int64
    pa = [x.astype(dtype) for x in a.parts]
    pb = [x.astype(dtype) for x in b.parts]
    out = []
    for d in range(L + 1):
        acc = np.zeros(a.nsym ** d, dtype=dtype)
        for i in range(d + 1):
            if pa[i].any() and pb[d - i].any():
                acc += np.outer(pa[i], pb[d - i]).ravel()
        out.append(acc)
    return TruncatedSeries(a.alpha, a.bound, out, a.weights)


def _weights_of(weights):
    if weights is None:
        return (1, 1)
    if hasattr(weights, "weights"):
        return tuple(weights.weights)
    return tuple(weights)


def magnus_expand(w, bound, weights=None, alpha=None):
    """Magnus expansion x -> 1+X, y -> 1+Y, truncated at ``bound``.

    ``weights`` may be None, a (wx, wy) pair or a weighted MonoidInstance.
    Words carry no alphabet, so ``alpha`` is required.
    """
    if bound < 1:
        raise BoundExceeded("bound must be at least 1")
    if alpha is None:
        raise ValueError("magnus_expand needs the alphabet")
    wts = _weights_of(weights)
    if min(wts) < 1:
        raise ValueError("weights must be positive")
    alpha.check(w.letters)
    s = alpha.p + alpha.q
    L = bound // min(wts)
    n = max(len(w), 1)
    dtype = np.int64 if math.comb(n + L - 1, L) < _INT64_SAFE else object
    parts = [np.zeros(s ** d, dtype=dtype) for d in range(L + 1)]
    parts[0][0] = 1
    for a in w.letters:
        j = abs(a) - 1
        if a > 0:
            for d in range(L, 0, -1):
                parts[d].reshape(-1, s)[:, j] += parts[d - 1]
        else:
            for d in range(1, L + 1):
                parts[d].reshape(-1, s)[:, j] -= parts[d - 1]
    return TruncatedSeries(alpha, bound, parts, wts)


def delta_component(w, mn, bound, alpha):
    """Bidegree-(m,n) homogeneous part of the expansion, as a series."""
    m, n = mn
    if m < 0 or n < 0:
        raise ValueError(f"bad bidegree {mn}")
    if m + n > bound:
        raise BoundExceeded(f"degree {m + n} exceeds bound {bound}")
    out = TruncatedSeries.zero(alpha, bound)
    if m + n == 0:
        return out
    theta = magnus_expand(w, m + n, alpha=alpha)
    d = m + n
    mask = _x_counts(alpha.p, alpha.q, d) == m
    out.parts[d] = np.where(mask, theta.parts[d], 0).astype(theta.parts[d].dtype)
    return out


@dataclass(frozen=True)
class Verified:
    bound: int

    def __bool__(self):
        return True

    def to_json(self):
        return {"verdict": "Verified", "bound": self.bound}


@dataclass(frozen=True)
class Refuted:
    monomial: tuple
    coefficient: int
    bidegree: tuple

    def __bool__(self):
        return False

    def to_json(self, p=None):
        out = {"verdict": "Refuted", "coefficient": self.coefficient,
               "bidegree": list(self.bidegree)}
        out["monomial"] = format_monomial(self.monomial, p) if p is not None else list(self.monomial)
        return out


def support_profile(theta):
    """For each bidegree present in theta - 1, its first monomial and coefficient.

    Keys are iterated in (total degree, lex) order of the first witness, so
    the first failing entry for a level is a minimal-degree witness.
    """
    p, q = theta.alpha.p, theta.alpha.q
    s = p + q
    prof = {}
    for d in range(1, len(theta.parts)):
        arr = theta.parts[d]
        nz = np.flatnonzero(arr)
        if not nz.size:
            continue
        nx = _x_counts(p, q, d)[nz]
        for m in np.unique(nx):
            first = int(nz[np.argmax(nx == m)])
            prof[(int(m), d - int(m))] = (_decode(first, s, d), int(arr[first]))
    return prof


def verdict_from_profile(prof, mn, bound):
    """Membership verdict at (m,n) from a precomputed support profile."""
    m, n = max(0, mn[0]), max(0, mn[1])
    best = None
    for (i, j), (mono, c) in prof.items():
        if i >= m and j >= n:
            continue
        key = (i + j, mono)
        if best is None or key < best[0]:
            best = (key, Refuted(mono, c, (i, j)))
    return Verified(bound) if best is None else best[1]


def dmn_membership(w, mn, bound, alpha):
    """Model-level test of w in D_{m,n}: every nonconstant monomial has bidegree >= (m,n)."""
    m, n = mn
    if bound < m + n:
        raise BoundExceeded(f"bound {bound} below degree {m + n}")
    return verdict_from_profile(support_profile(magnus_expand(w, bound, alpha=alpha)), mn, bound)


def gamma_membership(w, k, alpha):
    """Exact test of w in the k-th lower central term."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return True
    theta = magnus_expand(w, k - 1, alpha=alpha)
    return not any(part.any() for part in theta.parts[1:])


def weighted_filtration_level(w, weights=(2, 1), bound=6, alpha=None):
    """Least weighted degree of a nonconstant term within the bound; inf if none."""
    wts = _weights_of(weights)
    theta = magnus_expand(w, bound, wts, alpha=alpha)
    p, q = alpha.p, alpha.q
    best = math.inf
    for d in range(1, len(theta.parts)):
        arr = theta.parts[d]
        if not arr.any():
            continue
        nx = _x_counts(p, q, d)[arr != 0]
        deg = int(np.min(wts[1] * d + (wts[0] - wts[1]) * nx))
        best = min(best, deg)
    return best

