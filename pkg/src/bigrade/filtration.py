"""Leading terms of words in the double lower central series, and rank evidence.

Everything here works at the associated-graded level: a word's class in
bidegree (m, n) is read off its Magnus expansion and projected onto the
Lyndon basis, and spanning statements are checked with Smith normal form over
the integers.
"""

import math
from dataclasses import dataclass

from . import snf
from .freelie import LieElement, lie_algebra, lie_project, regrade_total
from .magnus import (BoundExceeded, Refuted, Verified, magnus_expand, support_profile,
                     verdict_from_profile)
from .words import InvalidDegree, enumerate_mn_commutators, format_word


@dataclass(frozen=True)
class LeadingTerm:
    word: object
    grade: tuple
    value: LieElement | None
    verdict: object

    def to_json(self, alpha):
        return {"word": format_word(self.word, alpha), "grade": list(self.grade),
                "verdict": self.verdict.to_json(alpha.p) if isinstance(self.verdict, Refuted)
                else self.verdict.to_json(),
                "value": None if self.value is None else self.value.text()}


def leading_term_from_series(theta, mn, alg=None):
    """Project the bidegree-(m,n) part of an expansion onto the Lyndon basis."""
    alpha = theta.alpha
    alg = alg or lie_algebra(alpha.p, alpha.q)
    return lie_project(theta.homogeneous(mn), mn, alg)


def leading_term(w, mn, bound, alpha):
    """Class of w in bidegree (m,n) together with the membership verdict.

    The value is None when the word is refuted at (m,n).
    """
    m, n = mn
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidDegree(f"({m},{n}) is not a positive bidegree")
    if bound < m + n + 1:
        raise BoundExceeded(f"bound {bound} must be at least {m + n + 1}")
    theta = magnus_expand(w, bound, alpha=alpha)
    verdict = verdict_from_profile(support_profile(theta), mn, bound)
    if not isinstance(verdict, Verified):
        return LeadingTerm(w, (m, n), None, verdict)
    return LeadingTerm(w, (m, n), leading_term_from_series(theta, mn), verdict)


def _report(grade, rank_expected, rows, witnesses):
    divisors = snf.elementary_divisors(rows) if rows else []
    return {
        "grade": list(grade) if isinstance(grade, tuple) else grade,
        "rank_expected": rank_expected,
        "rank_found": len(divisors),
        "elementary_divisors": divisors,
        "witnesses": witnesses,
        "spanned": len(divisors) == rank_expected and all(d == 1 for d in divisors) and not witnesses,
    }


def graded_span_check(alpha, mn, bound=None):
    """Do the leading terms of (m,n)-commutators span Lie_{m,n} over Z?"""
    m, n = mn
    if m < 0 or n < 0 or m + n < 1:
        raise InvalidDegree(f"({m},{n}) is not a positive bidegree")
    bound = bound or m + n + 1
    alg = lie_algebra(alpha.p, alpha.q)
    rows, witnesses = [], []
    for seq, w in enumerate_mn_commutators(alpha, m, n, nontrivial_only=True):
        lt = leading_term(w, mn, bound, alpha)
        if lt.value is None:
            witnesses.append({"word": format_word(w, alpha), "verdict": lt.verdict.to_json(alpha.p)})
            continue
        rows.append(list(lt.value.coords))
    return _report(mn, alg.rank(mn), rows, witnesses)


def gamma_decomposition_check(alpha, m):
    """Total-degree m Lie ring against the sum of its bigraded pieces."""
    if m < 1:
        raise InvalidDegree("m must be positive")
    big = lie_algebra(alpha.p, alpha.q)
    tot = lie_algebra(alpha.p, alpha.q, "total")
    rows = []
    parts = []
    for i in range(m + 1):
        grade = (i, m - i)
        parts.append(big.rank(grade))
        for w in big.basis(grade):
            rows.append(list(regrade_total(big.basis_element(w)).coords))
    rep = _report(m, tot.rank(m), rows, [])
    rep["bigraded_ranks"] = parts
    rep["rank_identity"] = sum(parts) == tot.rank(m)
    rep["spanned"] = rep["spanned"] and rep["rank_identity"]
    return rep


def conjecture2_evidence(alpha, mn, bound=None):
    """Model-level evidence for K_{m,n} = K_{m,0} cap K_{0,n}; never a proof."""
    m, n = mn
    if m < 1 or n < 1:
        raise InvalidDegree("both degrees must be at least 1")
    bound = bound or m + n + 1
    witnesses = []
    count = 0
    rows = []
    for seq, w in enumerate_mn_commutators(alpha, m, n, nontrivial_only=True):
        count += 1
        theta = magnus_expand(w, bound, alpha=alpha)
        prof = support_profile(theta)
        for level in ((m, 0), (0, n)):
            v = verdict_from_profile(prof, level, bound)
            if not isinstance(v, Verified):
                witnesses.append({"word": format_word(w, alpha), "level": list(level),
                                  "verdict": v.to_json(alpha.p)})
        if isinstance(verdict_from_profile(prof, mn, bound), Verified):
            rows.append(list(leading_term_from_series(theta, mn).coords))
    rank_lie = lie_algebra(alpha.p, alpha.q).rank(mn)
    rep = _report(mn, rank_lie, rows, witnesses)
    rep["commutators_checked"] = count
    rep["easy_inclusion"] = not witnesses
    # monomials of total degree m+n that are >= (m,0) and >= (0,n) are exactly bidegree (m,n)
    rep["intersection_monomials"] = math.comb(m + n, m) * alpha.p ** m * alpha.q ** n
    rep["model"] = "monomial-bidegree ideal model; evidence only"
    return rep
