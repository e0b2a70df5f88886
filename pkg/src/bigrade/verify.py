"""The published-fact checklist behind ``bigrade verify-paper``.

Each check is a small function returning ``(ok, detail)``; checks are grouped
by the module they exercise so a run can be restricted with ``scope``.
"""

import itertools
import math
import time

import numpy as np

from . import catalog as cat
from .filtration import gamma_decomposition_check, graded_span_check, leading_term
from .freelie import (DerivationElement, derivation_apply, dmn_kernel, j_map, ja_map,
                      lie_algebra, lie_bracket, mu_embed, omega, wedge3_encode, wedge_text,
                      xi_contract)
from .grading import (MonoidInstance, Ordinal, check_good_axioms, format_ordinal,
                      hessenberg_sum, parse_ordinal, small_ordinals, standard_instances)
from .johnson import (probe, tau_alt, tau_classical, tau_double, tau_edge,
                      torelli_reconstruct)
from .magnus import (TruncatedSeries, Verified, delta_component, dmn_membership,
                     magnus_expand)
from .words import (Alphabet, Word, commutator, conjugate, enumerate_mn_commutators,
                    aut_commutator, format_word, multibracket, parse_word, phi_ab, phi_abc, random_word)

SCOPES = ("grading", "words", "magnus", "freelie", "filtration", "johnson", "catalog")

_CHECKS = []


def check(scope, anchor):
    def deco(fn):
        _CHECKS.append((scope, anchor, fn))
        return fn
    return deco


def checks(scope=None):
    wanted = set(scope) if scope else set(SCOPES)
    return [(s, a, f) for s, a, f in _CHECKS if s in wanted]


def run(scope=None, catalog_dir=None):
    """Run the selected checks; returns a list of result dicts in a fixed order."""
    out = []
    for s, anchor, fn in checks(scope):
        t = time.perf_counter()
        try:
            ok, detail = fn(catalog_dir) if fn.__code__.co_argcount else fn()
        except Exception as exc:  # a crash is a failed check, reported with its message
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"scope": s, "check": anchor, "ok": bool(ok), "detail": detail,
                    "seconds": round(time.perf_counter() - t, 3)})
    return out


def _alpha_pairs(max_pq=2):
    return [(p, q) for p in range(1, max_pq + 1) for q in range(1, max_pq + 1)]


# grading

@check("grading", "natural sum (w*2+3) # (w+4) = w*3+7")
def _natural_sum():
    v = format_ordinal(hessenberg_sum(parse_ordinal("w*2+3"), parse_ordinal("w+4")))
    return v == "w*3+7", v


@check("grading", "0 is neutral for the natural sum")
def _natural_zero():
    a = parse_ordinal("w^2*3+w+5")
    return hessenberg_sum(Ordinal.finite(0), a) == a == hessenberg_sum(a, Ordinal.finite(0)), None


@check("grading", "lexicographic pairs: (0,5) < (1,0)")
def _lex():
    inst = MonoidInstance("N2_lex")
    v = inst.compare((0, 5), (1, 0))
    return v.name == "LE", v.name


@check("grading", "shipped instances are good ordered monoids")
def _good():
    pairs = [(i, j) for i in range(4) for j in range(4)]
    samples = {"N": list(range(6)), "N2_usual": pairs, "N2_lex": pairs, "N2_total": pairs,
               "weighted_N": list(range(6)), "ordinal": small_ordinals()}
    bad = {k: check_good_axioms(inst, samples[k])[:1] for k, inst in standard_instances().items()}
    bad = {k: v for k, v in bad.items() if v}
    return not bad, bad or None


@check("grading", "the integers are not a good monoid")
def _integers():
    rep = check_good_axioms(MonoidInstance("Z"), [-2, -1, 0, 1, 2])
    return any(r["axiom"] == "0 <= lambda" for r in rep), len(rep)


@check("grading", "natural sum: commutative, associative, cancellative on samples")
def _natural_props():
    rng = np.random.default_rng(0)
    base = small_ordinals()
    for _ in range(200):
        a, b, c = (base[i] for i in rng.integers(0, len(base), 3))
        if hessenberg_sum(a, b) != hessenberg_sum(b, a):
            return False, "commutativity"
        if hessenberg_sum(hessenberg_sum(a, b), c) != hessenberg_sum(a, hessenberg_sum(b, c)):
            return False, "associativity"
        if hessenberg_sum(a, c) == hessenberg_sum(b, c) and a != b:
            return False, "cancellation"
    return True, None


# words

def _comm_identity_failures(rng, alpha, trials):
    for _ in range(trials):
        a, b, c = (random_word(rng, alpha, 5) for _ in range(3))
        lhs = [commutator(a, b).inverse(),
               commutator(a * b, c),
               commutator(a, b * c),
               commutator(commutator(a, b), conjugate(b, c))
               * commutator(commutator(b, c), conjugate(c, a))
               * commutator(commutator(c, a), conjugate(a, b))]
        rhs = [commutator(b, a),
               conjugate(a, commutator(b, c)) * commutator(a, c),
               commutator(a, b) * conjugate(b, commutator(a, c)),
               Word()]
        for name, l, r in zip(("inverse", "product left", "product right", "Hall-Witt"), lhs, rhs):
            if l != r:
                return name, [format_word(x, alpha) for x in (a, b, c)]
    return None


@check("words", "commutator identities on 1000 random triples")
def _identities():
    bad = _comm_identity_failures(np.random.default_rng(0), Alphabet(2, 2), 1000)
    return bad is None, bad


@check("words", "(m,n)-commutator lists for K = <x1,x2,y1,y2>")
def _comm_lists():
    A = Alphabet(2, 2)

    def listed(m, n):
        return sorted(format_word(w, A) for _, w in enumerate_mn_commutators(A, m, n, True))

    def words(*texts):
        return sorted(format_word(_bracket_text(t, A), A) for t in texts)

    expect = {
        (1, 0): words("x1", "x2"),
        (0, 1): words("y1", "y2"),
        (2, 0): words("x1,x2", "x2,x1"),
        (0, 2): words("y1,y2", "y2,y1"),
        (1, 1): words("x1,y1", "x1,y2", "x2,y1", "x2,y2", "y1,x1", "y1,x2", "y2,x1", "y2,x2"),
    }
    bad = {str(k): listed(*k) for k, v in expect.items() if listed(*k) != v}
    some = words("x2,x1,y2", "x2,x2,y1", "x2,x2,y2")
    if not set(some) <= set(listed(2, 1)):
        bad["(2,1)"] = "listed examples missing"
    return not bad, bad or None


def _bracket_text(text, alpha):
    return multibracket([parse_word(t, alpha) for t in text.split(",")])


@check("words", "Magnus generator images b^-1 a b and a[b,c]")
def _magnus_images():
    A = Alphabet(2, 1)
    one = phi_ab(A, 1, 3)(A.x(1)) == A.y(1).inverse() * A.x(1) * A.y(1)
    two = phi_abc(A, 1, 3, 2)(A.x(1)) == A.x(1) * commutator(A.y(1), A.x(2))
    return one and two, None


@check("words", "boundary word of genus 1")
def _boundary():
    from .words import boundary_word
    v = format_word(boundary_word(1), Alphabet(1, 1))
    return v == "x1^-1 y1^-1 x1 y1", v


# magnus

@check("magnus", "delta_{1,1}([x1,y1]) = X1*Y1 - Y1*X1, delta_{1,0} = delta_{0,1} = 0")
def _delta():
    A = Alphabet(1, 1)
    c = commutator(A.x(1), A.y(1))
    d11 = delta_component(c, (1, 1), 3, A).text()
    d10 = delta_component(c, (1, 0), 3, A).text()
    d01 = delta_component(c, (0, 1), 3, A).text()
    return (d11, d10, d01) == ("X1*Y1 - Y1*X1", "0", "0"), [d11, d10, d01]


@check("magnus", "expansion of x1 is 1 + X1")
def _theta_x():
    A = Alphabet(1, 1)
    return magnus_expand(A.x(1), 4, alpha=A).text() == "1 + X1", None


@check("magnus", "multiplicativity, inverses and re-truncation on random words")
def _magnus_props():
    rng = np.random.default_rng(1)
    A = Alphabet(2, 1)
    for _ in range(60):
        u, v = random_word(rng, A, 8), random_word(rng, A, 8)
        for b in (2, 4):
            if magnus_expand(u * v, b, alpha=A) != magnus_expand(u, b, alpha=A) * magnus_expand(v, b, alpha=A):
                return False, "multiplicativity"
            if magnus_expand(u, b, alpha=A) * magnus_expand(u.inverse(), b, alpha=A) != TruncatedSeries.one(A, b):
                return False, "inverse"
        if magnus_expand(u, 5, alpha=A).truncate(3) != magnus_expand(u, 3, alpha=A):
            return False, "re-truncation"
    return True, None


@check("magnus", "(m,n)-commutators pass their level with vanishing lower components")
def _commutator_levels():
    A = Alphabet(2, 2)
    for m in range(4):
        for n in range(4 - m):
            if m + n == 0:
                continue
            for _, w in enumerate_mn_commutators(A, m, n, True):
                if not isinstance(dmn_membership(w, (m, n), 4, A), Verified):
                    return False, format_word(w, A)
                th = magnus_expand(w, m + n, alpha=A)
                if any(th.parts[d].any() for d in range(1, m + n)):
                    return False, format_word(w, A)
    return True, None


# freelie

@check("freelie", "Omega for genus 1 and 2")
def _omega():
    t1, t2 = omega(1).text(), omega(2).text()
    return (t1, t2) == ("[a1,b1]", "[a1,b1] + [a2,b2]"), [t1, t2]


@check("freelie", "mu(a1) = X1")
def _mu_gen():
    alg = lie_algebra(1, 1)
    return mu_embed(alg.a(1)) == {(0,): 1}, None


@check("freelie", "antisymmetry and Jacobi in all bidegrees up to total 6")
def _jacobi():
    rng = np.random.default_rng(2)
    for p, q in _alpha_pairs():
        alg = lie_algebra(p, q)
        grades = [(m, n) for m in range(5) for n in range(5) if 1 <= m + n <= 4 and alg.rank((m, n))]
        for _ in range(12):
            gs = [grades[i] for i in rng.integers(0, len(grades), 3)]
            if sum(g[0] + g[1] for g in gs) > 6:
                continue
            u, v, w = (_random_element(rng, alg, g) for g in gs)
            if lie_bracket(u, v) != -lie_bracket(v, u):
                return False, "antisymmetry"
            jac = (lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u))
                   + lie_bracket(w, lie_bracket(u, v)))
            if not jac.is_zero():
                return False, "Jacobi"
    return True, None


def _random_element(rng, alg, grade):
    from .freelie import LieElement
    return LieElement(alg, grade, tuple(int(c) for c in rng.integers(-3, 4, alg.rank(grade))))


@check("freelie", "ranks agree with the necklace count")
def _witt():
    for p, q in _alpha_pairs():
        alg = lie_algebra(p, q)
        for m in range(6):
            for n in range(6 - m):
                if m + n and alg.rank((m, n)) != bigraded_witt(p, q, m, n):
                    return False, [p, q, m, n]
    return True, None


def bigraded_witt(p, q, m, n):
    """Rank of the (m,n) piece by Moebius inversion over common divisors."""
    total = 0
    for d in range(1, math.gcd(m, n) + 1):
        if m % d == 0 and n % d == 0:
            k = (m + n) // d
            total += _mobius(d) * math.comb(k, m // d) * p ** (m // d) * q ** (n // d)
    return total // (m + n)


def _mobius(d):
    out, k = 1, 2
    while k * k <= d:
        if d % k == 0:
            d //= k
            if d % k == 0:
                return 0
            out = -out
        k += 1
    return -out if d > 1 else out


@check("freelie", "right-nested brackets [a,[a,...,[a,b]]] span Lie_{m,1} for m <= 4")
def _right_nested():
    from . import snf
    for p, q in _alpha_pairs():
        alg = lie_algebra(p, q)
        for m in range(1, 5):
            rows = []
            for xs in itertools.product(range(p), repeat=m):
                for b in range(q):
                    rows.append(list(alg.multibracket(list(xs) + [p + b]).coords))
            divs = snf.elementary_divisors(rows)
            if len(divs) != alg.rank((m, 1)) or any(d != 1 for d in divs):
                return False, [p, q, m]
    return True, None


@check("freelie", "Xi(d) = d(Omega) for random derivations")
def _xi():
    rng = np.random.default_rng(3)
    for g in (1, 2):
        alg = lie_algebra(g, g)
        for shift in ((1, 0), (0, 1), (1, 1), (2, 0)):
            for _ in range(5):
                vals = [_random_element(rng, alg, alg.add_grade(alg.gen_grade(k), shift))
                        for k in range(2 * g)]
                d = DerivationElement(alg, shift, vals)
                if xi_contract(d) != derivation_apply(d, omega(g, alg)):
                    return False, [g, list(shift)]
    return True, None


@check("freelie", "kernel ranks: D_{2,-1} is 0 at genus 2 and 1 at genus 3")
def _kernels():
    r2, r3 = len(dmn_kernel((2, 2), (2, -1))), len(dmn_kernel((3, 3), (2, -1)))
    return (r2, r3) == (0, 1), [r2, r3]


@check("freelie", "encoding of a1^a2^b1 in degree-one derivations")
def _encode():
    d = wedge3_encode({(0, 1, 2): 1}, 2)
    # a1 (x) [a2,b1] + a2 (x) [b1,a1] + b1 (x) [a1,a2], read through sum a (x) d(b) - sum b (x) d(a)
    alg = d.algebra
    a1, a2, b1 = alg.generator(0), alg.generator(1), alg.generator(2)
    want = [-lie_bracket(a1, a2), alg.zero(2), lie_bracket(a2, b1), lie_bracket(b1, a1)]
    return list(d.values) == want, d.text()


# filtration

@check("filtration", "leading terms of (m,n)-commutators are Lie commutators; integral span (m+n <= 5)")
def _leading_term_oracle():
    for p, q in _alpha_pairs():
        A = Alphabet(p, q)
        alg = lie_algebra(p, q)
        for m in range(6):
            for n in range(6 - m):
                if m + n == 0:
                    continue
                for seq, w in enumerate_mn_commutators(A, m, n, True):
                    lt = leading_term(w, (m, n), m + n + 1, A)
                    if lt.value != alg.multibracket([a - 1 for a in seq]):
                        return False, {"p": p, "q": q, "word": format_word(w, A)}
                rep = graded_span_check(A, (m, n))
                if not rep["spanned"]:
                    return False, rep
    return True, None


@check("filtration", "Lie_m(H) is the sum of the Lie_{i,m-i} (m <= 6, g <= 2)")
def _rank_identity():
    for g in (1, 2):
        for m in range(1, 7):
            rep = gamma_decomposition_check(Alphabet(g, g), m)
            if not rep["spanned"]:
                return False, rep
    return True, None


# johnson

@check("johnson", "tau_1 of the twist commutators and of h_ij at genus 3")
def _tau1_values():
    g = 3
    got = {}
    want = {}
    for i, j, k in itertools.combinations(range(1, g + 1), 3):
        h = cat.twist_commutator_x(g, i, j, k)
        got[h.name] = wedge_text(tau_classical(h, 1, 4).wedge, g)
        want[h.name] = wedge_text({(i - 1, j - 1, k - 1): 1}, g)
    for i, j in itertools.permutations(range(1, g + 1), 2):
        h = cat.h_pair(g, i, j)
        got[h.name] = wedge_text(tau_classical(h, 1, 4).wedge, g)
        want[h.name] = wedge_text({(g + i - 1, i - 1, j - 1): 1}, g)
    bad = {k: got[k] for k in got if got[k] != want[k]}
    return not bad, bad or got


@check("johnson", "probe levels of h_12, t_delta and the eyeglass commutator")
def _probe_examples():
    g = 3
    res = {}
    h = cat.h_pair(g, 1, 2)
    pr = probe(h, 3, 6)
    res["h_12"] = pr.verifies((1, 0)) and pr.refutes((2, 0)) and pr.refutes((1, 1))
    res["t_delta"] = probe(cat.boundary_twist(g), 3, 6).verifies((1, 1))
    one, two = cat.eyeglass_pair(g)
    res["eyeglass"] = probe(one, 2, 6).verifies((1, 0))
    res["eyeglass dual"] = probe(two, 2, 6).verifies((0, 1))
    return all(res.values()), res


def compatibility_failures(h, bound=6, battery_size=8, seed=0, max_total=3):
    """Symplecticity and the two comparison maps at every probe-verified level."""
    failures = []
    count = 0
    pr = probe(h, max_total, bound, battery_size, seed)
    for m, n in pr.verified:
        if not 1 <= m + n <= max_total:
            continue
        if m >= 0 and n >= 0:
            tv = tau_double(h, (m, n), bound, battery_size, seed)
        elif (n == -1 and m >= 2) or (m == -1 and n >= 2):
            tv = tau_edge(h, (m, n), bound, battery_size, seed)
        else:
            continue
        count += 1
        d = tv.value
        if not xi_contract(d).is_zero():
            failures.append({"level": [m, n], "check": "symplectic"})
        if j_map(d) != tau_classical(h, m + n).value:
            failures.append({"level": [m, n], "check": "j"})
        if 2 * m + n >= 1 and ja_map(d) != tau_alt(h, 2 * m + n).value:
            failures.append({"level": [m, n], "check": "j^a"})
    return count, failures


@check("johnson", "symplectic values and both comparison maps on the surface catalog")
def _compat(catalog_dir=None):
    bad, total = {}, 0
    for name, entries in sorted(cat.load_catalog(catalog_dir).items()):
        for e in entries:
            if e.mode != "surface":
                continue
            n, f = compatibility_failures(e.aut())
            total += n
            if f:
                bad[f"{name}:{e.name}"] = f
    return not bad and total > 0, bad or {"levels checked": total}


@check("johnson", "Torelli reconstruction from the four quadrant pieces")
def _torelli(catalog_dir=None):
    bad, count = [], 0
    for name, entries in sorted(cat.load_catalog(catalog_dir).items()):
        for e in entries:
            if e.mode != "surface":
                continue
            h = e.aut()
            if not cat.is_torelli(h):
                continue
            count += 1
            if not torelli_reconstruct(h, cat.torelli_realizers(e.p, catalog_dir))["ok"]:
                bad.append(f"{name}:{e.name}")
    return not bad and count > 0, bad or {"elements": count}


# catalog

@check("catalog", "sigma(phi_ik) = diag(e_ik(1), e_ki(-1)) at genus 3")
def _sigma_phi():
    g = 3
    bad = []
    for i, k in itertools.permutations(range(1, g + 1), 2):
        M = cat.sigma(cat.phi(g, i, k))
        want = [[int(r == c) for c in range(2 * g)] for r in range(2 * g)]
        want[i - 1][k - 1] = 1
        want[g + k - 1][g + i - 1] = -1
        if M != want:
            bad.append([i, k])
    return not bad, bad or None


@check("catalog", "block shapes: t_x is T, phi is G, [t_x1,t_y1] is none")
def _shapes():
    g1 = cat.sigma(aut_commutator(cat.twist_x(1, 1), cat.twist_y(1, 1)))
    res = {"t_x1": cat.block_shape_classify(cat.sigma(cat.twist_x(2, 1))),
           "phi_12": cat.block_shape_classify(cat.sigma(cat.phi(2, 1, 2))),
           "[t_x1,t_y1]": cat.block_shape_classify(g1), "matrix": g1}
    ok = (res["t_x1"], res["phi_12"], res["[t_x1,t_y1]"]) == ("T", "G", "none") and g1 == [[1, 1], [1, 2]]
    return ok, res


@check("catalog", "knob twist acts as diag_j(-1) on both blocks")
def _knob():
    M = cat.sigma(cat.knob_twist(2, 2))
    return M == [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]], M


@check("catalog", "every shipped entry passes validation")
def _validate_all(catalog_dir=None):
    bad = {}
    for name, entries in sorted(cat.load_catalog(catalog_dir).items()):
        for e in entries:
            rep = cat.validate(e)
            if not rep["ok"]:
                bad[f"{name}:{e.name}"] = [c["claim"] for c in rep["checks"] if not c["ok"]]
    return not bad, bad or None


@check("catalog", "Magnus families: claimed quadrants verified, next levels refuted")
def _families():
    bad = []
    for p, q in ((2, 2), (3, 3)):
        refuted = {}
        for e in cat.magnus_generators(p, q):
            fam = e.claims["family"]
            lvl = tuple(e.claims["level"])
            pr = probe(e.aut(), 3, 6)
            if not pr.verifies(lvl):
                bad.append([p, q, e.name])
            nxt = [(lvl[0] + 1, lvl[1]), (lvl[0], lvl[1] + 1)]
            refuted[fam] = refuted.get(fam, False) or any(pr.refutes(x) for x in nxt)
        bad += [[p, q, f"family {f} never refuted"] for f, r in refuted.items() if not r]
    return not bad, bad or None


@check("catalog", "a corrupted entry fails with the claim named")
def _negative():
    e = cat.corrupt(cat.CatalogEntry.from_aut(cat.h_pair(2, 1, 2), claims={"level": [1, 0]}))
    rep = cat.validate(e)
    failed = [c["claim"] for c in rep["checks"] if not c["ok"]]
    return (not rep["ok"]) and bool(failed), failed
