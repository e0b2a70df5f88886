"""Generator catalogs for the surface mapping class group and for Aut(F_{p,q}).

Surface entries act on pi_1 of the genus-g surface with one boundary
component, free on x_1..x_g (meridians) and y_1..y_g (parallels) with
boundary word prod [x_i^-1, y_i^-1].  Curves are drawn in figures only, so the
tables here are conventions: each is checked for boundary fixation, its
symplectic image, its probed level and, where known, its tau_1 value.
"""

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .words import (Alphabet, FreeGroupAut, NotAnAutomorphism, NotSurfaceMode, Word,
                    aut_commutator, aut_conjugate, commutator, compose, fixes_boundary,
                    format_word, identity_aut, parse_word, phi_ab, phi_abc)


class SymplecticCheckFailed(ValueError):
    pass


class CatalogError(ValueError):
    pass


# symplectic representation

def _abelianize(w, rank):
    v = [0] * rank
    for a in w.letters:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return v


def action_matrix(h):
    """Integer matrix of h on H_1: column k is the class of h(generator k)."""
    n = h.alpha.rank
    cols = [_abelianize(h.fwd[k], n) for k in range(1, n + 1)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def symplectic_form(g):
    J = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[i][g + i] = 1
        J[g + i][i] = -1
    return J


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def _t(A):
    return [list(r) for r in zip(*A)]


def is_symplectic(M):
    g = len(M) // 2
    J = symplectic_form(g)
    return _mul(_mul(_t(M), J), M) == J


def sigma(h):
    """Symplectic matrix of h in the basis (a_1..a_g, b_1..b_g)."""
    if not h.alpha.surface:
        raise NotSurfaceMode(f"alphabet ({h.alpha.p},{h.alpha.q}) is not a surface alphabet")
    M = action_matrix(h)
    if not is_symplectic(M):
        raise SymplecticCheckFailed(f"{h.name or 'automorphism'} does not preserve the intersection form")
    return M


def _blocks(M):
    g = len(M) // 2
    P = [r[:g] for r in M[:g]]
    Q = [r[g:] for r in M[:g]]
    R = [r[:g] for r in M[g:]]
    S = [r[g:] for r in M[g:]]
    return g, P, Q, R, S


def _is_zero(A):
    return all(v == 0 for r in A for v in r)


def _is_identity(A):
    return all(v == (1 if i == j else 0) for i, r in enumerate(A) for j, v in enumerate(r))


def _is_symmetric(A):
    return A == _t(A)


def block_shape_classify(M):
    """Most specific of G, T, T', H, H' matching M, or 'none'.

    For a symplectic M with zero lower-left block the side conditions
    (S = P^-T and P^-1 Q symmetric) hold automatically; they are checked
    anyway so that non-symplectic input is rejected.
    """
    g, P, Q, R, S = _blocks(M)
    I = [[1 if i == j else 0 for j in range(g)] for i in range(g)]
    pt_s = _mul(_t(P), S)
    if _is_zero(R) and _is_zero(Q) and pt_s == I:
        return "G"
    if _is_zero(R) and _is_identity(P) and _is_identity(S) and _is_symmetric(Q):
        return "T"
    if _is_zero(Q) and _is_identity(P) and _is_identity(S) and _is_symmetric(R):
        return "T'"
    if _is_zero(R) and pt_s == I and _is_symmetric(_mul(_t(S), Q)):
        # P^-1 = S^T, so P^-1 Q = S^T Q
        return "H"
    if _is_zero(Q) and pt_s == I and _is_symmetric(_mul(_t(P), R)):
        return "H'"
    return "none"


# surface builders

def _w(alpha, text):
    return parse_word(text, alpha)


def _c(alpha, l):
    """c_l = [x_l^-1, y_l^-1]."""
    return commutator(alpha.x(l).inverse(), alpha.y(l).inverse())


def _gid(alpha, kind, l):
    return l if kind == "x" else alpha.p + l


def _named(h, name):
    return FreeGroupAut(h.alpha, h.fwd, h.inv, name=name, check=True)


def twist_x(g, k):
    """Twist about the meridian x_k: y_k -> x_k y_k."""
    A = Alphabet(g, g)
    yk = _gid(A, "y", k)
    return FreeGroupAut(A, {yk: A.x(k) * A.y(k)}, {yk: A.x(k).inverse() * A.y(k)}, name=f"t_x{k}")


def twist_y(g, k):
    """Twist about the parallel y_k: x_k -> y_k^-1 x_k."""
    A = Alphabet(g, g)
    return FreeGroupAut(A, {k: A.y(k).inverse() * A.x(k)}, {k: A.y(k) * A.x(k)}, name=f"t_y{k}")


def handle_swap(g, l):
    """Exchange handles l and l+1 (fixes c_l c_{l+1})."""
    A = Alphabet(g, g)
    c, d = _c(A, l), _c(A, l + 1)
    xl, yl, xm, ym = l, A.p + l, l + 1, A.p + l + 1
    fwd = {xl: c * A.x(l + 1) * c.inverse(), yl: c * A.y(l + 1) * c.inverse(),
           xm: A.x(l), ym: A.y(l)}
    inv = {xl: A.x(l + 1), yl: A.y(l + 1),
           xm: d.inverse() * A.x(l) * d, ym: d.inverse() * A.y(l) * d}
    return FreeGroupAut(A, fwd, inv, name=f"s{l}")


def _adjacent_phi_up(A, l):
    """a_{l+1} -> a_{l+1} + a_l, b_l -> b_l - b_{l+1} on handles l, l+1."""
    x1, y1, x2, y2 = A.x(l), A.y(l), A.x(l + 1), A.y(l + 1)
    X1, Y1, X2, Y2 = x1.inverse(), y1.inverse(), x2.inverse(), y2.inverse()
    fwd = {l + 1: y2 * x2 * Y1 * x1 * y1 * X2 * Y2 * x2,
           A.p + l: y1 * X2 * Y2 * x2}
    inv = {l + 1: x2 * Y1 * X1 * y1,
           A.p + l: x1 * y1 * X2 * y2 * x2 * Y1 * X1 * y1}
    return fwd, inv


def _adjacent_phi_down(A, l):
    """a_l -> a_l + a_{l+1}, b_{l+1} -> b_{l+1} - b_l on handles l, l+1."""
    x1, y1, x2, y2 = A.x(l), A.y(l), A.x(l + 1), A.y(l + 1)
    Y1, X2 = y1.inverse(), x2.inverse()
    fwd = {l: x2 * x1, l + 1: x2 * Y1 * x2 * y1 * X2,
           A.p + l: x2 * y1 * X2, A.p + l + 1: x2 * Y1 * X2 * y2}
    inv = {l: y1 * X2 * Y1 * x1, l + 1: y1 * x2 * Y1,
           A.p + l: y1 * X2 * y1 * x2 * Y1, A.p + l + 1: y1 * y2}
    return fwd, inv


def _adjacent_h(A, l):
    """h_{l,l+1}: handle l dragged around x_{l+1}."""
    x1, y1, x2, y2 = A.x(l), A.y(l), A.x(l + 1), A.y(l + 1)
    u = x2 * _c(A, l).inverse()
    U = u.inverse()
    fwd = {l: u * x1 * U, A.p + l: u * y1 * U, l + 1: u * x2 * U, A.p + l + 1: u * x2.inverse() * y2}
    inv = {l: U * x1 * u, A.p + l: U * y1 * u, l + 1: U * x2 * u, A.p + l + 1: U * x2 * y2}
    return fwd, inv


def _moves(f, g):
    """Where each handle goes under f, read from the symplectic matrix."""
    M = action_matrix(f)
    out = {}
    for j in range(g):
        for i in range(g):
            if M[i][j] != 0:
                out[j + 1] = i + 1
    return out


def transporter(g, i, k):
    """A boundary-fixing f in G sending handle 1 to i and handle 2 to k.

    Found by breadth-first search over words in the handle swaps.
    """
    A = Alphabet(g, g)
    start = identity_aut(A)
    if (i, k) == (1, 2):
        return start
    gens = [handle_swap(g, l) for l in range(1, g)]
    gens += [s.inverse() for s in gens]
    frontier = [start]
    seen = {tuple(_moves(start, g).items())}
    for _ in range(2 * g + 2):
        nxt = []
        for f in frontier:
            for s in gens:
                h = compose(s, f)
                mv = _moves(h, g)
                key = tuple(sorted(mv.items()))
                if key in seen:
                    continue
                seen.add(key)
                if mv.get(1) == i and mv.get(2) == k:
                    return h
                nxt.append(h)
        frontier = nxt
    raise CatalogError(f"no handle transporter for ({i},{k}) at genus {g}")


def phi(g, i, k):
    """phi_ik in G with sigma = diag(e_ik(1), e_ki(-1)): a_k -> a_k + a_i, b_i -> b_i - b_k."""
    if i == k or not (1 <= i <= g and 1 <= k <= g):
        raise ValueError(f"bad handle pair ({i},{k})")
    A = Alphabet(g, g)
    if k == i + 1:
        fwd, inv = _adjacent_phi_up(A, i)
        return FreeGroupAut(A, fwd, inv, name=f"phi_{i}{k}")
    if i == k + 1:
        fwd, inv = _adjacent_phi_down(A, k)
        return FreeGroupAut(A, fwd, inv, name=f"phi_{i}{k}")
    f = transporter(g, i, k)
    return _named(aut_conjugate(f, phi(g, 1, 2)), f"phi_{i}{k}")


def h_pair(g, i, j):
    """h_ij in M_{1,0} with tau_1 = b_i ^ a_i ^ a_j."""
    if i == j or not (1 <= i <= g and 1 <= j <= g):
        raise ValueError(f"bad handle pair ({i},{j})")
    A = Alphabet(g, g)
    if j == i + 1:
        fwd, inv = _adjacent_h(A, i)
        return FreeGroupAut(A, fwd, inv, name=f"h_{i}{j}")
    f = transporter(g, i, j)
    return _named(aut_conjugate(f, h_pair(g, 1, 2)), f"h_{i}{j}")


def twist_x_pair(g, i, j):
    """Twist about a meridian-type curve in the class a_i + a_j (lies in T)."""
    return _named(aut_conjugate(phi(g, i, j), twist_x(g, j)), f"t_x{i}{j}")


def twist_y_pair(g, i, j):
    """Dual of :func:`twist_x_pair` under the handle-reversing duality."""
    return _named(dual(twist_x_pair(g, g + 1 - i, g + 1 - j)), f"t_y{i}{j}")


def boundary_twist(g, l=1):
    """Twist about the curve cutting off handle l: conjugates that handle by c_l."""
    A = Alphabet(g, g)
    c = _c(A, l)
    C = c.inverse()
    fwd = {l: c * A.x(l) * C, A.p + l: c * A.y(l) * C}
    inv = {l: C * A.x(l) * c, A.p + l: C * A.y(l) * c}
    return FreeGroupAut(A, fwd, inv, name="t_delta" if l == 1 else f"t_delta{l}")


def knob_twist(g, j):
    """Half rotation of handle j: x_j, y_j go to conjugates of their inverses."""
    A = Alphabet(g, g)
    x, y = A.x(j), A.y(j)
    X, Y = x.inverse(), y.inverse()
    fwd = {j: Y * X * y, A.p + j: Y * X * Y * x * y}
    inv = {j: X * Y * X * y * x, A.p + j: X * Y * x}
    return FreeGroupAut(A, fwd, inv, name=f"knob{j}")


def duality(g):
    """Handle-reversing involution x_l <-> y_{g+1-l}; it inverts the boundary word."""
    A = Alphabet(g, g)
    tab = {}
    for l in range(1, g + 1):
        tab[l] = A.y(g + 1 - l)
        tab[A.p + l] = A.x(g + 1 - l)
    return FreeGroupAut(A, tab, tab, name="iota")


def dual(h):
    """iota h iota: exchanges the roles of the two handlebodies."""
    i = duality(h.alpha.p)
    return compose(compose(i, h), i)


def twist_commutator_x(g, i, j, k):
    """The twist commutator [t_x_ik, t_x_ij] of the meridian side (i < j < k).

    Automorphisms compose as functions, and with that reading the realized
    product is t_x_ij t_x_ik t_x_ij^-1 t_x_ik^-1; it lies in M_{2,-1} with
    tau_1 = a_i ^ a_j ^ a_k.  The other order gives the negative.
    """
    return _named(aut_commutator(twist_x_pair(g, i, j), twist_x_pair(g, i, k)),
                  f"[t_x{i}{k},t_x{i}{j}]")


def twist_commutator_y(g, i, j, k):
    """Parallel-side counterpart (i < j < k): [t_y_kj, t_y_ki] with tau_1 = b_i ^ b_j ^ b_k.

    It is the dual of the meridian-side commutator on the reversed handles.
    """
    a, b, c = g + 1 - k, g + 1 - j, g + 1 - i
    return _named(dual(aut_commutator(twist_x_pair(g, a, b), twist_x_pair(g, a, c))),
                  f"[t_y{k}{j},t_y{k}{i}]")


def h_pair_shift(g, i, j, k):
    """phi_ik^-1 h_ij phi_ik h_ij^-1, with tau_1 = b_k ^ a_i ^ a_j."""
    f = phi(g, i, k).inverse()
    h = h_pair(g, i, j)
    return _named(compose(aut_conjugate(f, h), h.inverse()), f"h_{i}{j}^{k}")


def h_pair_dual(g, i, j):
    """Dual of h_ij, in M_{0,1}."""
    return _named(dual(h_pair(g, g + 1 - i, g + 1 - j)), f"h'_{i}{j}")


def eyeglass_pair(g):
    """Commutators of eyeglass twists lying in M_{1,0} and M_{0,1} (genus >= 3).

    phi_13 and phi_23 drag the meridians x_1, x_2 around the parallel y_3; the
    second commutator is the dual of the first.
    """
    one = _named(aut_commutator(phi(g, 1, 3), phi(g, 2, 3)), "[phi_13,phi_23]")
    two = _named(dual(aut_commutator(phi(g, 1, 3), phi(g, 2, 3))), "iota[phi_13,phi_23]iota")
    return one, two


# catalog entries

@dataclass
class CatalogEntry:
    name: str
    p: int
    q: int
    mode: str
    fwd: dict
    inv: dict
    claims: dict = field(default_factory=dict)

    @property
    def alpha(self):
        return Alphabet(self.p, self.q)

    def aut(self, check=True):
        A = self.alpha
        fwd = {A.gen_id(k): parse_word(v, A) for k, v in self.fwd.items()}
        inv = {A.gen_id(k): parse_word(v, A) for k, v in self.inv.items()}
        return FreeGroupAut(A, fwd, inv, name=self.name, check=check)

    def to_json(self):
        return {"name": self.name, "p": self.p, "q": self.q, "mode": self.mode,
                "fwd": self.fwd, "inv": self.inv, "claims": self.claims}

    @classmethod
    def from_json(cls, d):
        for key in ("name", "p", "q", "mode", "fwd", "inv"):
            if key not in d:
                raise CatalogError(f"catalog entry missing field {key!r}")
        if d["mode"] not in ("surface", "free"):
            raise CatalogError(f"unknown mode {d['mode']!r}")
        return cls(d["name"], int(d["p"]), int(d["q"]), d["mode"], dict(d["fwd"]),
                   dict(d["inv"]), dict(d.get("claims", {})))

    @classmethod
    def from_aut(cls, h, name=None, mode=None, claims=None):
        A = h.alpha
        mode = mode or ("surface" if A.surface else "free")
        fwd = {A.name(k): format_word(w, A) for k, w in h.fwd.items() if w != Word((k,))}
        inv = {A.name(k): format_word(w, A) for k, w in h.inv.items() if w != Word((k,))}
        return cls(name or h.name, A.p, A.q, mode, fwd, inv, dict(claims or {}))


def _surface_claims(h, level, refutes=(), tau1=None, torelli_component=None, shape=None,
                    sigma_exact=False):
    M = sigma(h)
    claims = {"fixes_boundary": True, "level": list(level)}
    claims["shape"] = shape or block_shape_classify(M)
    if sigma_exact:
        claims["sigma"] = M
    if refutes:
        claims["refutes"] = [list(r) for r in refutes]
    if tau1 is not None:
        claims["tau1"] = tau1
    if torelli_component is not None:
        claims["torelli_component"] = torelli_component
    return claims


def surface_catalog(g):
    """Default catalog entries for genus g."""
    from .freelie import wedge_text
    out = []

    def add(h, level, **kw):
        out.append(CatalogEntry.from_aut(h, claims=_surface_claims(h, level, **kw)))

    for k in range(1, g + 1):
        add(twist_x(g, k), (1, -1), refutes=[(2, -1), (1, 0)], sigma_exact=True)
        add(twist_y(g, k), (-1, 1), refutes=[(0, 1), (-1, 2)], sigma_exact=True)
        add(knob_twist(g, k), (0, 0), refutes=[(1, 0), (0, 1)], sigma_exact=True)
    add(boundary_twist(g), (1, 1), refutes=[(2, 1), (1, 2)], shape="G")
    add(_named(aut_commutator(twist_x(g, 1), twist_y(g, 1)), "[t_x1,t_y1]"), (-1, -1),
        refutes=[(0, -1), (-1, 0)], sigma_exact=True)
    for l in range(1, g):
        add(handle_swap(g, l), (0, 0), refutes=[(1, 0), (0, 1)], sigma_exact=True)
    for i in range(1, g + 1):
        for k in range(1, g + 1):
            if i != k:
                add(phi(g, i, k), (0, 0), refutes=[(1, 0), (0, 1)], sigma_exact=True)
    for i in range(1, g + 1):
        for j in range(1, g + 1):
            if i == j:
                continue
            # b_i ^ a_i ^ a_j
            text = wedge_text({(g + i - 1, i - 1, j - 1): 1}, g)
            add(h_pair(g, i, j), (1, 0), refutes=[(2, 0), (1, 1)], tau1=text, torelli_component=2)
            hd = h_pair_dual(g, i, j)
            add(hd, (0, 1), refutes=[(1, 1), (0, 2)], tau1=_tau1_text(hd), torelli_component=1)
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            add(twist_x_pair(g, i, j), (1, -1), refutes=[(2, -1), (1, 0)], sigma_exact=True)
            add(twist_y_pair(g, i, j), (-1, 1), refutes=[(0, 1), (-1, 2)], sigma_exact=True)
    for i in range(1, g + 1):
        for j in range(i + 1, g + 1):
            for k in range(1, g + 1):
                if k in (i, j):
                    continue
                hs = h_pair_shift(g, i, j, k)
                add(hs, (1, 0), refutes=[(2, 0), (1, 1)], tau1=_tau1_text(hs), torelli_component=2)
                hsd = _named(dual(h_pair_shift(g, g + 1 - i, g + 1 - j, g + 1 - k)), f"h'_{i}{j}^{k}")
                add(hsd, (0, 1), refutes=[(1, 1), (0, 2)], tau1=_tau1_text(hsd), torelli_component=1)
    if g >= 3:
        for i in range(1, g + 1):
            for j in range(i + 1, g + 1):
                for k in range(j + 1, g + 1):
                    tx = twist_commutator_x(g, i, j, k)
                    add(tx, (2, -1), refutes=[(3, -1), (2, 0)], tau1=_tau1_text(tx), torelli_component=3)
                    ty = twist_commutator_y(g, i, j, k)
                    add(ty, (-1, 2), refutes=[(0, 2), (-1, 3)], tau1=_tau1_text(ty), torelli_component=0)
        one, two = eyeglass_pair(g)
        add(one, (1, 0), refutes=[(2, 0), (1, 1)])
        add(two, (0, 1), refutes=[(1, 1), (0, 2)])
    return out


def _tau1_text(h):
    from .freelie import wedge_text
    from .johnson import tau_classical
    return wedge_text(tau_classical(h, 1).wedge, h.alpha.p)


FAMILY_LEVELS = {1: (1, 0), 4: (1, 0), 5: (1, 0), 9: (1, 0),
                 2: (0, 1), 3: (0, 1), 6: (0, 1), 8: (0, 1),
                 7: (-1, 2), 10: (2, -1)}


def magnus_generators(p, q):
    """The ten Magnus families generating IA(F_{p+q}), with quadrant claims."""
    if p + q < 3:
        raise ValueError("the Magnus generating set needs p+q >= 3")
    A = Alphabet(p, q)
    X = list(range(1, p + 1))
    Y = [p + j for j in range(1, q + 1)]
    fams = {
        1: [(a, b) for a in X for b in X if a != b],
        2: [(a, b) for a in Y for b in Y if a != b],
        3: [(a, b) for a in X for b in Y],
        4: [(a, b) for a in Y for b in X],
        5: [(a, b, c) for a in X for b in X for c in X if len({a, b, c}) == 3 and b < c],
        6: [(a, b, c) for a in X for b in X for c in Y if a != b],
        7: [(a, b, c) for a in X for b in Y for c in Y if b < c],
        8: [(a, b, c) for a in Y for b in Y for c in Y if len({a, b, c}) == 3 and b < c],
        9: [(a, b, c) for a in Y for b in X for c in Y if a != c],
        10: [(a, b, c) for a in Y for b in X for c in X if b < c],
    }
    out = []
    for fam in range(1, 11):
        lvl = FAMILY_LEVELS[fam]
        for idx in fams[fam]:
            h = phi_ab(A, *idx) if len(idx) == 2 else phi_abc(A, *idx)
            claims = {"family": fam, "level": list(lvl),
                      "refutes": [[lvl[0] + 1, lvl[1]], [lvl[0], lvl[1] + 1]]}
            out.append(CatalogEntry.from_aut(h, mode="free", claims=claims))
    return out


SURFACE_GENERA = (1, 2, 3)
FREE_RANKS = ((2, 1), (2, 2), (3, 3))


def default_catalog_files():
    """File name -> list of entries for the shipped catalog."""
    files = {}
    for g in SURFACE_GENERA:
        files[f"surface_g{g}.json"] = surface_catalog(g)
    for p, q in FREE_RANKS:
        files[f"free_p{p}_q{q}.json"] = magnus_generators(p, q)
    return files


def dump_entries(entries):
    return json.dumps([e.to_json() for e in entries], indent=1, sort_keys=True) + "\n"


def write_default_catalog(directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, entries in default_catalog_files().items():
        (directory / name).write_text(dump_entries(entries))


def catalog_dir():
    env = os.environ.get("BIGRADE_CATALOG_DIR")
    if env:
        return Path(env)
    return Path(str(resources.files("bigrade") / "data" / "catalog"))


def load_file(path):
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = [data]
    return [CatalogEntry.from_json(d) for d in data]


def load_catalog(directory=None):
    """All entries from every JSON file of the catalog directory, by file name."""
    directory = Path(directory) if directory else catalog_dir()
    if not directory.is_dir():
        raise CatalogError(f"catalog directory {directory} not found")
    return {p.name: load_file(p) for p in sorted(directory.glob("*.json"))}


def find_entry(name, directory=None, g=None):
    """Look an entry up by name (optionally restricted to one alphabet size)."""
    for entries in load_catalog(directory).values():
        for e in entries:
            if e.name == name and (g is None or (e.p == g and e.q == g)):
                return e
    raise CatalogError(f"no catalog entry named {name!r}")


def torelli_realizers(g, directory=None):
    """Catalog automorphisms grouped by the exterior-power component they realize."""
    out = {3: [], 2: [], 1: [], 0: []}
    for entries in load_catalog(directory).values():
        for e in entries:
            comp = e.claims.get("torelli_component")
            if e.mode == "surface" and e.p == g and comp is not None:
                out[comp].append((e.name, e.aut()))
    return out


def is_torelli(h):
    M = action_matrix(h)
    return _is_identity(M)


# validation

def validate(entry, bound=6, battery_size=8, seed=0, max_total=None):
    """Check every claim of an entry; failures are listed by claim name."""
    from .freelie import wedge_text
    from .johnson import probe, tau_classical
    checks = []

    def record(claim, ok, detail=None):
        checks.append({"claim": claim, "ok": bool(ok), **({"detail": detail} if detail is not None else {})})

    try:
        h = entry.aut(check=True)
        record("inverse", True)
    except (NotAnAutomorphism, ValueError) as exc:
        record("inverse", False, str(exc))
        return {"name": entry.name, "ok": False, "checks": checks}
    claims = entry.claims
    if entry.mode == "surface":
        fb = fixes_boundary(h)
        record("fixes_boundary", fb == claims.get("fixes_boundary", True), None if fb else "boundary word moved")
        try:
            M = sigma(h)
            record("symplectic", True)
            if "sigma" in claims:
                record("sigma", M == claims["sigma"], None if M == claims["sigma"] else {"found": M})
            if "shape" in claims:
                shape = block_shape_classify(M)
                record("shape", shape == claims["shape"], None if shape == claims["shape"] else {"found": shape})
        except SymplecticCheckFailed as exc:
            record("symplectic", False, str(exc))
    if "level" in claims:
        level = tuple(claims["level"])
        refutes = [tuple(r) for r in claims.get("refutes", [])]
        top = max([level[0] + level[1]] + [r[0] + r[1] for r in refutes])
        mt = max(max_total or 0, top, 0)
        b = max(bound, mt + 2)
        res = probe(h, mt, b, battery_size, seed)
        record("level", res.verifies(level), None if res.verifies(level) else res.refutations.get(level))
        for r in refutes:
            record(f"refutes {list(r)}", res.refutes(r))
    if "tau1" in claims and entry.mode == "surface":
        try:
            t = tau_classical(h, 1)
            found = wedge_text(t.wedge, h.alpha.p)
            record("tau1", found == claims["tau1"], None if found == claims["tau1"] else {"found": found})
        except Exception as exc:
            record("tau1", False, str(exc))
    return {"name": entry.name, "ok": all(c["ok"] for c in checks), "checks": checks}


def corrupt(entry):
    """Negative control: flip the sign of one letter in the first image."""
    e = CatalogEntry.from_json(json.loads(json.dumps(entry.to_json())))
    A = e.alpha
    key = sorted(e.fwd)[0]
    w = parse_word(e.fwd[key], A)
    letters = list(w.letters)
    letters[-1] = -letters[-1]
    e.fwd[key] = format_word(Word(letters), A)
    e.name = entry.name + "~corrupt"
    return e
