"""Johnson homomorphisms of free-group automorphisms and level probing.

For an automorphism h and a word k, [h, k] means h(k) k^-1.  Four flavours:

* classical tau_n: total-degree leading terms of [h, x_i], [h, y_i]
  (exact, via the lower central series criterion)
* double tau_{m,n}: bidegree leading terms (model-level membership)
* edge tau_{m,-1} / tau_{-1,n}: classical tau_{m-1} landing in one alphabet
* alternative tau^a_m: leading terms for the weight (2,1) grading

Derivations store d(a_i) from [h, x_i] and d(b_i) from [h, y_i]; in tensor
form that is sum a_i (x) d(b_i) - sum b_i (x) d(a_i).
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import snf
from .freelie import (DerivationElement, lie_algebra, lie_project,
                      regrade, wedge3_decode, wedge_normalize, wedge_text, xi_contract)
from .grading import ExtPair, clamp0
from .magnus import (BoundExceeded, TruncatedSeries, Verified,
                     magnus_expand, support_profile, verdict_from_profile)
from .words import (FreeGroupAut, InvalidDegree, NotSurfaceMode, Word, conjugate,
                    format_word, random_word)


class NotInLevel(ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


def hk(h, w):
    """[h, w] = h(w) w^-1 in the semidirect product."""
    return h(w) * w.inverse()


class SeriesAut:
    """An automorphism known through the Magnus images of generators mod degree > bound.

    Composition is substitution, so long products of automorphisms can be
    handled exactly in the truncated quotient without ever forming words.
    """

    def __init__(self, alpha, bound, fwd, inv):
        self.alpha = alpha
        self.bound = bound
        self.fwd = fwd
        self.inv = inv

    @classmethod
    def from_aut(cls, h, bound):
        A = h.alpha
        fwd = [magnus_expand(h.fwd[k], bound, alpha=A) for k in range(1, A.rank + 1)]
        inv = [magnus_expand(h.inv[k], bound, alpha=A) for k in range(1, A.rank + 1)]
        return cls(A, bound, fwd, inv)

    @classmethod
    def identity(cls, alpha, bound):
        gens = [magnus_expand(Word((k,)), bound, alpha=alpha) for k in range(1, alpha.rank + 1)]
        return cls(alpha, bound, gens, list(gens))

    def inverse(self):
        return SeriesAut(self.alpha, self.bound, self.inv, self.fwd)

    def compose(self, other):
        """(self o other)."""
        return SeriesAut(self.alpha, self.bound,
                         [_substitute(s, self.fwd) for s in other.fwd],
                         [_substitute(s, other.inv) for s in self.inv])

    __matmul__ = compose

    def power(self, k):
        out = SeriesAut.identity(self.alpha, self.bound)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out.compose(base)
        return out

    def commutator_series(self, k):
        """Expansion of [h, g_k] for the generator with 1-based id k."""
        return self.fwd[k - 1] * magnus_expand(Word((-k,)), self.bound, alpha=self.alpha)


class _ImageExpander:
    """theta([h, w]) from cached expansions of the images of single letters.

    Battery words are short while h(x_k) can be long, so multiplying a dozen
    cached series beats expanding h(w) letter by letter.
    """

    def __init__(self, h, bound):
        self.h = h
        self.bound = bound
        self._letters = {}

    def _letter(self, a):
        s = self._letters.get(a)
        if s is None:
            img = self.h.fwd[a] if a > 0 else self.h.fwd[-a].inverse()
            s = self._letters[a] = magnus_expand(img, self.bound, alpha=self.h.alpha)
        return s

    # one series product costs about as much as this many single-letter updates
    PRODUCT_COST = 60

    def commutator(self, w):
        image_len = sum(len(self.h.fwd[abs(a)]) for a in w.letters)
        if image_len < self.PRODUCT_COST * len(w):
            return magnus_expand(hk(self.h, w), self.bound, alpha=self.h.alpha)
        out = magnus_expand(w.inverse(), self.bound, alpha=self.h.alpha)
        for a in reversed(w.letters):
            out = self._letter(a) * out
        return out


def _substitute(series, images):
    """Replace each symbol j in ``series`` by images[j] (which has constant 1)."""
    A = series.alpha
    one = TruncatedSeries.one(A, series.bound)
    shifted = [img - one for img in images]
    out = TruncatedSeries.zero(A, series.bound)
    cache = {(): one}
    for mono, c in series.terms():
        for i in range(1, len(mono) + 1):
            if mono[:i] not in cache:
                cache[mono[:i]] = cache[mono[:i - 1]] * shifted[mono[i - 1]]
        prod = cache[mono]
        out = out + TruncatedSeries(A, series.bound, [c * a for a in prod.parts])
    return out


def _as_series_aut(h, bound):
    if isinstance(h, SeriesAut):
        if h.bound < bound:
            raise BoundExceeded(f"series automorphism known only to degree {h.bound}")
        return h
    return None


@dataclass
class TauValue:
    kind: str
    level: tuple
    value: DerivationElement
    symplectic_ok: bool
    regime: str
    wedge: dict | None = None

    def to_json(self):
        out = {"kind": self.kind, "level": list(self.level) if isinstance(self.level, tuple) else self.level,
               "regime": self.regime, "symplectic_ok": self.symplectic_ok,
               "value": self.value.to_json(), "zero": self.value.is_zero()}
        if self.wedge is not None:
            g = self.value.algebra.p
            out["wedge"] = wedge_text(self.wedge, g)
        return out


def _require_surface(alpha):
    if not alpha.surface:
        raise NotSurfaceMode(f"alphabet ({alpha.p},{alpha.q}) is not a surface alphabet")


def _classical_values(h, n, check_bound):
    """Total-degree n+1 leading terms of [h, g] for all generators (exact)."""
    alpha = h.alpha
    sa = _as_series_aut(h, n + 1)
    alg = lie_algebra(alpha.p, alpha.q, "total")
    vals = []
    for k in range(1, alpha.rank + 1):
        if sa is not None:
            theta = sa.commutator_series(k)
            if sa.bound > n + 1:
                theta = theta.truncate(n + 1)
        else:
            theta = magnus_expand(hk(h, Word((k,))), n + 1, alpha=alpha)
        for d in range(1, n + 1):
            if theta.parts[d].any():
                raise NotInLevel(f"[h,{alpha.name(k)}] is not in Gamma_{n + 1}",
                                 {"generator": alpha.name(k), "degree": d})
        poly = {}
        for mono, c in theta.terms():
            if len(mono) == n + 1:
                poly[mono] = c
        vals.append(lie_project(poly, n + 1, alg))
    return alg, vals


def tau_classical(h, n, bound=None):
    """tau_n(h) in degree-n derivations of the free Lie ring on H."""
    _require_surface(h.alpha)
    if n < 1:
        raise InvalidDegree("n must be positive")
    if bound is not None and bound < n + 2:
        raise BoundExceeded(f"bound {bound} must be at least {n + 2}")
    alg, vals = _classical_values(h, n, bound)
    d = DerivationElement(alg, n, vals)
    wedge = wedge3_decode(d) if n == 1 else None
    return TauValue("classical", n, d, xi_contract(d).is_zero(), "exact", wedge)


def battery_words(alpha, battery_size=8, seed=0, max_len=6):
    """Generators followed by seeded random conjugates of every generator.

    Items are (word, is_x).
    """
    gens = [Word((k,)) for k in range(1, alpha.rank + 1)]
    out = [(g, alpha.is_x(g.letters[0])) for g in gens]
    rng = np.random.default_rng(seed)
    for _ in range(battery_size):
        u = random_word(rng, alpha, max_len, min_len=1)
        for g in gens:
            out.append((conjugate(u, g), alpha.is_x(g.letters[0])))
    return out


def _target(level, is_x):
    m, n = level
    return clamp0(m + 1, n) if is_x else clamp0(m, n + 1)


def _check_double_level(h, level, bound, battery_size, seed):
    alpha = h.alpha
    for aut in (h, h.inverse()):
        ex = _ImageExpander(aut, bound)
        for w, is_x in battery_words(alpha, battery_size, seed):
            tgt = _target(level, is_x)
            v = verdict_from_profile(support_profile(ex.commutator(w)), tgt, bound)
            if not isinstance(v, Verified):
                raise NotInLevel(
                    f"[h,{format_word(w, alpha)}] fails membership at {tgt}",
                    {"word": format_word(w, alpha), "target": list(tgt), "verdict": v.to_json(alpha.p),
                     "inverse": aut is not h})


def tau_double(h, mn, bound=6, battery_size=8, seed=0):
    """tau_{m,n}(h) as a bigraded derivation of degree (m,n)."""
    m, n = mn
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidDegree(f"({m},{n}) needs m,n >= 0 and m+n >= 1")
    if bound < m + n + 2:
        raise BoundExceeded(f"bound {bound} must be at least {m + n + 2}")
    alpha = h.alpha
    _require_surface(alpha)
    _check_double_level(h, (m, n), bound, battery_size, seed)
    alg = lie_algebra(alpha.p, alpha.q)
    vals = []
    for k in range(1, alpha.rank + 1):
        grade = (m + 1, n) if alpha.is_x(k) else (m, n + 1)
        theta = magnus_expand(hk(h, Word((k,))), m + n + 1, alpha=alpha)
        vals.append(lie_project(theta.homogeneous(grade), grade, alg))
    d = DerivationElement(alg, (m, n), vals)
    return TauValue("double", (m, n), d, xi_contract(d).is_zero(), "model")


def tau_edge(h, level, bound=6, battery_size=8, seed=0):
    """tau_{m,-1} or tau_{-1,n}: classical tau of one degree less, in one alphabet."""
    m, n = level
    if (m, n) != tuple(ExtPair(m, n)) or not ((n == -1 and m >= 2) or (m == -1 and n >= 2)):
        raise InvalidDegree(f"({m},{n}) is not an edge level")
    alpha = h.alpha
    _require_surface(alpha)
    total = (m if n == -1 else n) - 1
    if bound < total + 2:
        raise BoundExceeded(f"bound {bound} must be at least {total + 2}")
    _check_double_level(h, (m, n), bound, battery_size, seed)
    classical = tau_classical(h, total)
    alg = lie_algebra(alpha.p, alpha.q)
    vals = []
    for k, v in enumerate(classical.value.values):
        grade = alg.add_grade(alg.gen_grade(k), (m, n))
        if v.is_zero():
            vals.append(alg.zero(grade))
            continue
        try:
            u = regrade(v, alg)
        except Exception as exc:
            raise NotInLevel(f"value on generator {k + 1} leaves the edge target", None) from exc
        if u.grade != grade:
            raise NotInLevel(f"value on generator {k + 1} has bidegree {u.grade}, expected {grade}")
        vals.append(u)
    d = DerivationElement(alg, (m, n), vals)
    return TauValue("edge", (m, n), d, xi_contract(d).is_zero(), "model", classical.wedge)


def tau_alt(h, m, bound=None, weights=(2, 1)):
    """tau^a_m(h) for the weighted filtration (a-side weight 2, b-side weight 1)."""
    alpha = h.alpha
    _require_surface(alpha)
    if m < 1:
        raise InvalidDegree("m must be positive")
    top = m + max(weights)
    bound = top if bound is None else bound
    if bound < top:
        raise BoundExceeded(f"bound {bound} must be at least {top}")
    alg = lie_algebra(alpha.p, alpha.q, "weighted", tuple(weights))
    vals = []
    for k in range(1, alpha.rank + 1):
        grade = alg.add_grade(alg.gen_grade(k - 1), m)
        theta = magnus_expand(hk(h, Word((k,))), bound, weights, alpha=alpha)
        low = min((theta.weights[1] * len(mono) + (theta.weights[0] - theta.weights[1])
                   * sum(1 for a in mono if a < alpha.p)
                   for mono, _ in theta.terms() if mono), default=math.inf)
        if low < grade:
            raise NotInLevel(f"[h,{alpha.name(k)}] has weighted level {low} < {grade}",
                             {"generator": alpha.name(k), "level": low, "required": grade})
        vals.append(lie_project(theta.weighted_part(grade), grade, alg))
    d = DerivationElement(alg, m, vals)
    return TauValue("alt", m, d, xi_contract(d).is_zero(), "model")


@dataclass
class ProbeResult:
    bound: int
    battery_size: int
    seed: int
    max_total: int
    verified: list = field(default_factory=list)
    refutations: dict = field(default_factory=dict)

    def verifies(self, level):
        return tuple(ExtPair(*level)) in self.verified

    def refutes(self, level):
        return tuple(ExtPair(*level)) in self.refutations

    @property
    def maximal(self):
        vs = set(self.verified)
        return sorted(v for v in vs
                      if not any(w != v and w[0] >= v[0] and w[1] >= v[1] for w in vs))

    def to_json(self):
        return {"bound": self.bound, "battery": self.battery_size, "seed": self.seed,
                "max_total": self.max_total, "regime": "semi-decision",
                "verified": [list(v) for v in self.verified],
                "maximal": [list(v) for v in self.maximal],
                "refutations": [{"level": list(k), **w} for k, w in sorted(self.refutations.items())]}


def probe_levels(max_total):
    return [(m, n) for m in range(-1, max_total + 2) for n in range(-1, max_total + 2)
            if m + n <= max_total]


def probe(h, max_total=3, bound=None, battery_size=8, seed=0, max_len=6):
    """Semi-decide the extended levels of h: refutations are sound, verification is bound-relative."""
    bound = max_total + 2 if bound is None else bound
    if bound < max_total + 2:
        raise BoundExceeded(f"bound {bound} must be at least {max_total + 2}")
    alpha = h.alpha
    levels = probe_levels(max_total)
    refuted = {}
    for aut, tag in ((h, "h"), (h.inverse(), "h^-1")):
        ex = _ImageExpander(aut, bound)
        for w, is_x in battery_words(alpha, battery_size, seed, max_len):
            open_levels = [lv for lv in levels if lv not in refuted]
            if not open_levels:
                break
            prof = support_profile(ex.commutator(w))
            for lv in open_levels:
                tgt = _target(lv, is_x)
                v = verdict_from_profile(prof, tgt, bound)
                if not isinstance(v, Verified):
                    refuted[lv] = {"automorphism": tag, "word": format_word(w, alpha),
                                   "target": list(tgt), "witness": v.to_json(alpha.p)}
    verified = [lv for lv in levels if lv not in refuted]
    return ProbeResult(bound, battery_size, seed, max_total, verified, refuted)


def split_wedge(triples, g):
    """Split a third-exterior-power vector by the number of a-symbols (3, 2, 1, 0)."""
    parts = {3: {}, 2: {}, 1: {}, 0: {}}
    for t, c in wedge_normalize(triples).items():
        parts[sum(1 for s in t if s < g)][t] = c
    return parts


COMPONENT_LEVELS = {3: (2, -1), 2: (1, 0), 1: (0, 1), 0: (-1, 2)}


def torelli_reconstruct(h, realizers=None, bound=3):
    """Factor tau_1(h) through the four quadrant pieces and check the remainder.

    ``realizers`` maps a component (number of a-symbols) to a list of
    (name, automorphism) pairs from the matching quadrant; by default the
    catalog supplies them.  Returns a report whose ``ok`` field is true when
    tau_1((h1 h2 h3 h4)^-1 h) = 0.
    """
    alpha = h.alpha
    _require_surface(alpha)
    g = alpha.p
    if realizers is None:
        from .catalog import torelli_realizers
        realizers = torelli_realizers(g)
    target = tau_classical(h, 1).wedge
    parts = split_wedge(target, g)
    sh = SeriesAut.from_aut(h, bound) if isinstance(h, FreeGroupAut) else h
    product = SeriesAut.identity(alpha, bound)
    factors = {}
    ok = True
    for comp in (3, 2, 1, 0):
        pool = realizers.get(comp, [])
        triples = sorted({t for t in _component_basis(g, comp)})
        cols = []
        saut = []
        for name, aut in pool:
            w = tau_classical(aut, 1).wedge
            cols.append([wedge_normalize(w).get(t, 0) for t in triples])
            saut.append((name, SeriesAut.from_aut(aut, bound)))
        rhs = [parts[comp].get(t, 0) for t in triples]
        if not any(rhs):
            factors[COMPONENT_LEVELS[comp]] = []
            continue
        A = [[cols[j][i] for j in range(len(cols))] for i in range(len(triples))]
        x = snf.solve_integer(A, rhs) if cols else None
        if x is None:
            ok = False
            factors[COMPONENT_LEVELS[comp]] = None
            continue
        piece = SeriesAut.identity(alpha, bound)
        used = []
        for (name, sa), c in zip(saut, x):
            if c:
                piece = piece.compose(sa.power(c))
                used.append([name, c])
        factors[COMPONENT_LEVELS[comp]] = used
        product = product.compose(piece)
    residual = product.inverse().compose(sh)
    rest = tau_classical(residual, 1)
    ok = ok and rest.value.is_zero()
    return {"tau1": wedge_text(target, g),
            "components": {str(COMPONENT_LEVELS[c]): wedge_text(parts[c], g) for c in (3, 2, 1, 0)},
            "factors": {str(k): v for k, v in factors.items()},
            "residual_tau1": wedge_text(rest.wedge or {}, g),
            "ok": ok}


def _component_basis(g, comp):
    for t in itertools.combinations(range(2 * g), 3):
        if sum(1 for s in t if s < g) == comp:
            yield t
