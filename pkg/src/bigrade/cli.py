"""Command-line front end.

Every subcommand builds a JSON payload; ``--text`` (the default) renders it
for people, ``--json`` prints it verbatim with sorted keys so repeated runs
are byte-identical.  Exit codes: 0 ok, 1 evaluation or verification failure,
2 usage error.
"""

import argparse
import json
import re
import sys
from pathlib import Path

from . import catalog as cat
from . import verify
from .filtration import conjecture2_evidence, gamma_decomposition_check, graded_span_check
from .freelie import (GradeMismatch, NotALieElement, NotInImage, bracket_text, j_map,
                      lie_algebra, lie_project)
from .grading import OrdinalSyntaxError, format_ordinal, hessenberg_sum, parse_ordinal
from .johnson import (NotInLevel, probe, tau_alt, tau_classical, tau_double, tau_edge,
                      torelli_reconstruct)
from .magnus import (BoundExceeded, SeriesSyntaxError, delta_component, dmn_membership,
                     gamma_membership, magnus_expand, parse_terms, weighted_filtration_level)
from .words import (Alphabet, InvalidDegree, InvalidLetter, NotAnAutomorphism, NotSurfaceMode,
                    parse_word)

USAGE_ERRORS = (InvalidLetter, InvalidDegree, BoundExceeded, SeriesSyntaxError, OrdinalSyntaxError,
                cat.CatalogError, NotSurfaceMode, GradeMismatch)
EVAL_ERRORS = (NotInLevel, NotALieElement, NotInImage, NotAnAutomorphism, cat.SymplecticCheckFailed)


class UsageError(Exception):
    pass


class Failure(Exception):
    """Raised with a payload when a verification command finds a failing check."""

    def __init__(self, payload, text):
        super().__init__(text)
        self.payload = payload
        self.text = text


# argument helpers

def _pair(text):
    try:
        m, n = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected m,n but got {text!r}")
    return m, n


def _letters_in(text):
    xs = [int(k) for k in re.findall(r"x(\d+)", text)]
    ys = [int(k) for k in re.findall(r"y(\d+)", text)]
    return max(xs, default=0), max(ys, default=0)


def _alphabet(args, *texts):
    if getattr(args, "g", None):
        return Alphabet(args.g, args.g)
    p, q = getattr(args, "p", None), getattr(args, "q", None)
    if p is None or q is None:
        ip, iq = 0, 0
        for t in texts:
            a, b = _letters_in(t)
            ip, iq = max(ip, a), max(iq, b)
        p = ip if p is None else p
        q = iq if q is None else q
    if p + q < 1:
        raise UsageError("cannot infer an alphabet; pass --p/--q or --g")
    return Alphabet(p, q)


def _word(args):
    A = _alphabet(args, args.word)
    return A, parse_word(args.word, A)


def _resolve_aut(args):
    """--aut names a catalog entry or a JSON file holding one (or a list with --name)."""
    ref = args.aut
    path = Path(ref)
    if path.suffix == ".json" and path.exists():
        entries = cat.load_file(path)
        if getattr(args, "name", None):
            entries = [e for e in entries if e.name == args.name]
        if len(entries) != 1:
            raise UsageError(f"{path} holds {len(entries)} matching entries; select one with --name")
        return entries[0]
    matches = []
    for entries in cat.load_catalog(args.catalog_dir).values():
        for e in entries:
            if e.name != ref:
                continue
            if args.g and (e.p, e.q) != (args.g, args.g):
                continue
            if args.p is not None and e.p != args.p or args.q is not None and e.q != args.q:
                continue
            matches.append(e)
    if not matches:
        raise UsageError(f"no catalog entry named {ref!r} for the given alphabet")
    sizes = sorted({(e.p, e.q) for e in matches})
    if len(sizes) > 1:
        raise UsageError(f"{ref!r} exists for alphabets {sizes}; pass --g or --p/--q")
    return matches[0]


def _matrix_text(M):
    w = max((len(str(v)) for r in M for v in r), default=1)
    return "\n".join(" ".join(str(v).rjust(w) for v in r) for r in M)


# commands: each returns (payload, text)

def cmd_expand(args):
    A, w = _word(args)
    weights = args.weights or (1, 1)
    th = magnus_expand(w, args.bound, weights if args.weights else None, alpha=A)
    text = th.text()
    return {"word": args.word, "bound": args.bound, "weights": list(weights), "series": text}, text


def cmd_delta(args):
    A, w = _word(args)
    text = delta_component(w, args.grade, args.bound, A).text()
    return {"word": args.word, "grade": list(args.grade), "bound": args.bound, "delta": text}, text


def cmd_member(args):
    A, w = _word(args)
    payload = {"word": args.word, "bound": args.bound}
    if args.weights:
        lvl = weighted_filtration_level(w, args.weights, args.bound, A)
        payload.update(weights=list(args.weights), level=None if lvl == float("inf") else lvl)
        return payload, f"weighted level {payload['level'] if payload['level'] is not None else 'beyond bound'}"
    if args.grade is None:
        raise UsageError("member needs --grade m,n (or --weights)")
    v = dmn_membership(w, args.grade, args.bound, A)
    js = v.to_json(A.p) if hasattr(v, "monomial") else v.to_json()
    payload.update(grade=list(args.grade), verdict=js, model="monomial-bidegree ideal")
    if hasattr(v, "monomial"):
        text = f"refuted: {js['monomial']} has coefficient {js['coefficient']} in bidegree {tuple(js['bidegree'])}"
    else:
        text = f"verified up to degree {args.bound}"
    return payload, text


def cmd_gamma(args):
    A, w = _word(args)
    ok = gamma_membership(w, args.k, A)
    return {"word": args.word, "k": args.k, "member": ok, "regime": "exact"}, str(ok).lower()


def _lie_alg(args):
    if args.kind == "bigraded":
        grade = args.grade
    else:
        if len(args.grade) != 1:
            raise UsageError("total and weighted grades are single integers")
        grade = args.grade[0]
    return lie_algebra(args.p, args.q, args.kind, tuple(args.weights or (2, 1))), grade


def cmd_lie_dim(args):
    alg, grade = _lie_alg(args)
    r = alg.rank(grade)
    return {"p": args.p, "q": args.q, "kind": args.kind, "grade": grade, "rank": r}, str(r)


def cmd_lie_basis(args):
    alg, grade = _lie_alg(args)
    basis = [bracket_text(w, args.p) for w in alg.basis(grade)]
    return {"p": args.p, "q": args.q, "kind": args.kind, "grade": grade, "basis": basis}, "\n".join(basis)


def cmd_lie_project(args):
    alg, grade = _lie_alg(args)
    poly = parse_terms(args.poly, args.p, args.q)
    u = lie_project(poly, grade, alg)
    return {"poly": args.poly, "grade": grade, "element": u.text(), "coords": list(u.coords)}, u.text()


def cmd_tau(args):
    entry = _resolve_aut(args)
    h = entry.aut()
    kind = args.kind
    if kind == "classical":
        n = args.level[0] if len(args.level) == 1 else sum(args.level)
        tv = tau_classical(h, n, args.bound)
    elif kind == "double":
        tv = tau_double(h, tuple(args.level), args.bound, args.battery, args.seed)
    elif kind == "edge":
        tv = tau_edge(h, tuple(args.level), args.bound, args.battery, args.seed)
    else:
        m = args.level[0] if len(args.level) == 1 else 2 * args.level[0] + args.level[1]
        tv = tau_alt(h, m, args.bound)
    payload = {"aut": entry.name, **tv.to_json()}
    text = tv.value.text()
    if "wedge" in payload:
        text += f"\nwedge: {payload['wedge']}"
    if kind in ("double", "edge"):
        payload["j"] = j_map(tv.value).text()
    return payload, text


def cmd_probe(args):
    entry = _resolve_aut(args)
    res = probe(entry.aut(), args.max_total, args.bound, args.battery, args.seed)
    payload = {"aut": entry.name, **res.to_json()}
    text = "maximal verified levels: " + ", ".join(str(tuple(v)) for v in res.maximal)
    return payload, text


def cmd_sigma(args):
    entry = _resolve_aut(args)
    M = cat.sigma(entry.aut())
    shape = cat.block_shape_classify(M)
    return {"aut": entry.name, "sigma": M, "shape": shape}, f"{_matrix_text(M)}\nshape: {shape}"


def cmd_ordinal_sum(args):
    v = format_ordinal(hessenberg_sum(parse_ordinal(args.a), parse_ordinal(args.b)))
    return {"a": args.a, "b": args.b, "sum": v}, v


def cmd_torelli(args):
    entry = _resolve_aut(args)
    rep = torelli_reconstruct(entry.aut(), cat.torelli_realizers(entry.p, args.catalog_dir))
    payload = {"aut": entry.name, **rep}
    text = f"tau_1 = {rep['tau1']}; residual tau_1 = {rep['residual_tau1']}"
    if not rep["ok"]:
        raise Failure(payload, text)
    return payload, text


def cmd_span(args):
    A = Alphabet(args.p, args.q)
    if args.report == "span":
        rep = graded_span_check(A, args.grade)
    elif args.report == "gamma":
        rep = gamma_decomposition_check(A, args.grade[0])
    else:
        rep = conjecture2_evidence(A, args.grade, args.bound)
    text = f"rank {rep['rank_found']} of {rep['rank_expected']}, divisors {rep['elementary_divisors']}"
    return rep, text


def cmd_catalog(args):
    if args.action == "write":
        if not args.file:
            raise UsageError("catalog write needs a target directory")
        cat.write_default_catalog(args.file)
        return {"written": args.file}, f"wrote default catalog to {args.file}"
    if args.file:
        files = {Path(args.file).name: cat.load_file(args.file)}
    else:
        files = cat.load_catalog(args.catalog_dir)
    if args.action == "list":
        rows = [{"file": f, "name": e.name, "p": e.p, "q": e.q, "mode": e.mode,
                 "level": e.claims.get("level")} for f, es in files.items() for e in es]
        return {"entries": rows}, "\n".join(f"{r['file']}: {r['name']} level {r['level']}" for r in rows)
    reports = []
    for f, es in files.items():
        for e in es:
            rep = cat.validate(e, args.bound, args.battery, args.seed)
            rep["file"] = f
            reports.append(rep)
    failed = [r for r in reports if not r["ok"]]
    lines = [f"{'PASS' if r['ok'] else 'FAIL'} {r['file']}:{r['name']}"
             + ("" if r["ok"] else " [" + ", ".join(c["claim"] for c in r["checks"] if not c["ok"]) + "]")
             for r in reports]
    lines.append(f"{len(reports) - len(failed)}/{len(reports)} entries pass")
    payload = {"entries": reports, "passed": len(reports) - len(failed), "total": len(reports)}
    if failed:
        raise Failure(payload, "\n".join(lines))
    return payload, "\n".join(lines)


def cmd_verify_paper(args):
    scope = args.scope or None
    if scope:
        unknown = [s for s in scope if s not in verify.SCOPES]
        if unknown:
            raise UsageError(f"unknown scope {unknown}; choose from {list(verify.SCOPES)}")
    results = verify.run(scope, args.catalog_dir)
    if not args.timings:
        for r in results:
            r.pop("seconds")
    lines = [f"{'PASS' if r['ok'] else 'FAIL'}  {r['scope']:<10} {r['check']}"
             + (f"  ({r['seconds']} s)" if args.timings else "")
             + ("" if r["ok"] else f"\n      {r['detail']}") for r in results]
    failed = sum(not r["ok"] for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks pass")
    payload = {"checks": results, "passed": len(results) - failed, "total": len(results)}
    if failed:
        raise Failure(payload, "\n".join(lines))
    return payload, "\n".join(lines)


# parser

def _weights(text):
    return _pair(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json")
    out.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.add_argument("--bound", type=int, default=6)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--battery", type=int, default=8)
    common.add_argument("--weights", type=_weights, default=None, help="wx,wy")
    common.add_argument("--p", type=int, default=None)
    common.add_argument("--q", type=int, default=None)
    common.add_argument("--g", type=int, default=None, help="surface genus (p = q = g)")
    common.add_argument("--catalog-dir", default=None)

    parser = argparse.ArgumentParser(prog="bigrade", description="Double filtrations of free groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("expand", cmd_expand, "Magnus expansion of a word")
    sp.add_argument("--word", required=True)
    sp = add("delta", cmd_delta, "bidegree component of the expansion")
    sp.add_argument("--word", required=True)
    sp.add_argument("--grade", type=_pair, required=True)
    sp = add("member", cmd_member, "membership in the bidegree model (or weighted level)")
    sp.add_argument("--word", required=True)
    sp.add_argument("--grade", type=_pair)
    sp = add("gamma", cmd_gamma, "exact lower central series membership")
    sp.add_argument("--word", required=True)
    sp.add_argument("--k", type=int, required=True)
    for name, fn, h in (("lie-dim", cmd_lie_dim, "rank of a graded piece of the free Lie ring"),
                        ("lie-basis", cmd_lie_basis, "Lyndon basis of a graded piece"),
                        ("lie-project", cmd_lie_project, "write a polynomial in the Lyndon basis")):
        sp = add(name, fn, h)
        sp.add_argument("--grade", type=lambda t: tuple(int(v) for v in t.split(",")), required=True)
        sp.add_argument("--kind", choices=("bigraded", "total", "weighted"), default="bigraded")
        if name == "lie-project":
            sp.add_argument("--poly", required=True)
    sp = add("tau", cmd_tau, "Johnson homomorphisms of a catalog automorphism")
    sp.add_argument("--kind", choices=("classical", "double", "edge", "alt"), default="classical")
    sp.add_argument("--level", type=lambda t: [int(v) for v in t.split(",")], required=True)
    sp.add_argument("--aut", required=True)
    sp.add_argument("--name")
    sp = add("probe", cmd_probe, "semi-decide the filtration levels of an automorphism")
    sp.add_argument("--aut", required=True)
    sp.add_argument("--name")
    sp.add_argument("--max-total", type=int, default=3)
    sp = add("sigma", cmd_sigma, "symplectic matrix and block shape")
    sp.add_argument("--aut", required=True)
    sp.add_argument("--name")
    sp = add("torelli", cmd_torelli, "split tau_1 of a Torelli element into quadrant factors")
    sp.add_argument("--aut", required=True)
    sp.add_argument("--name")
    sp = add("span", cmd_span, "rank reports for the associated graded")
    sp.add_argument("report", choices=("span", "gamma", "conjecture"))
    sp.add_argument("--grade", type=lambda t: tuple(int(v) for v in t.split(",")), required=True)
    sp = add("ordinal-sum", cmd_ordinal_sum, "natural sum of two ordinals in Cantor normal form")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("catalog", cmd_catalog, "list, validate or regenerate the generator catalog")
    sp.add_argument("action", choices=("validate", "list", "write"))
    sp.add_argument("file", nargs="?")
    sp = add("verify-paper", cmd_verify_paper, "run the checklist of published facts")
    sp.add_argument("--scope", nargs="*", default=None)
    sp.add_argument("--timings", action="store_true")
    return parser


def _emit(payload, text, fmt, stream):
    if fmt == "json":
        stream.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
    else:
        stream.write(text + "\n")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.fmt or "text"
    if args.command in ("lie-dim", "lie-basis", "lie-project", "span") and (args.p is None or args.q is None):
        if not args.g:
            parser.error("--p and --q (or --g) are required")
        args.p = args.q = args.g
    try:
        payload, text = args.func(args)
    except Failure as f:
        _emit({"status": "error", **f.payload}, f.text, fmt, sys.stdout)
        return 1
    except (UsageError, *USAGE_ERRORS) as exc:
        _emit({"status": "error", "error": type(exc).__name__, "message": str(exc)},
              f"error: {exc}", fmt, sys.stderr)
        return 2
    except EVAL_ERRORS as exc:
        body = {"status": "error", "error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "witness", None) is not None:
            body["witness"] = exc.witness
        _emit(body, f"error: {exc}", fmt, sys.stdout)
        return 1
    _emit({"status": "ok", **payload}, text, fmt, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
