import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import right_nested_poly
from bigrade.filtration import (conjecture2_evidence, gamma_decomposition_check, graded_span_check,
                                leading_term)
from bigrade.freelie import lie_algebra, mu_embed
from bigrade.magnus import BoundExceeded, Refuted
from bigrade.words import Alphabet, InvalidDegree, Word, commutator, multibracket

A = Alphabet(2, 2)


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (2, 2)])
def test_leading_term_is_tensor_commutator(m, n):
    xs, ys = range(1, 3), range(3, 5)
    for xpos in itertools.combinations(range(m + n), m):
        pools = [xs if k in xpos else ys for k in range(m + n)]
        for seq in itertools.product(*pools):
            w = multibracket([Word((a,)) for a in seq])
            lt = leading_term(w, (m, n), m + n + 1, A)
            want = right_nested_poly([a - 1 for a in seq]) if m + n > 1 else {(seq[0] - 1,): 1}
            want = {k: v for k, v in want.items() if v}
            assert mu_embed(lt.value) == want


one_one = st.tuples(st.sampled_from([1, 2]), st.sampled_from([3, 4]), st.booleans())


@given(st.lists(one_one, min_size=1, max_size=4))
def test_leading_term_is_additive(pieces):
    words = [commutator(Word((a,)), Word((b,))) if flip else commutator(Word((b,)), Word((a,)))
             for a, b, flip in pieces]
    prod = Word()
    for w in words:
        prod = prod * w
    total = lie_algebra(2, 2).zero((1, 1))
    for w in words:
        total = total + leading_term(w, (1, 1), 3, A).value
    assert leading_term(prod, (1, 1), 3, A).value == total


def test_refuted_word_has_no_value():
    lt = leading_term(A.x(1), (1, 1), 3, A)
    assert lt.value is None and isinstance(lt.verdict, Refuted)
    assert lt.to_json(A)["value"] is None
    with pytest.raises(InvalidDegree):
        leading_term(A.x(1), (0, 0), 3, A)
    with pytest.raises(BoundExceeded):
        leading_term(A.x(1), (1, 1), 2, A)


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_span_is_unimodular(p, q):
    B = Alphabet(p, q)
    for m in range(4):
        for n in range(4 - m):
            if m + n:
                rep = graded_span_check(B, (m, n))
                assert rep["spanned"] and rep["witnesses"] == []
                assert set(rep["elementary_divisors"]) <= {1}


@pytest.mark.parametrize("g", [1, 2])
def test_rank_identity(g):
    for m in range(1, 7):
        rep = gamma_decomposition_check(Alphabet(g, g), m)
        assert rep["rank_identity"] and rep["spanned"]
        assert sum(rep["bigraded_ranks"]) == rep["rank_expected"]


def test_conjecture_evidence_is_labelled_evidence():
    rep = conjecture2_evidence(Alphabet(1, 1), (1, 2))
    assert rep["easy_inclusion"] and rep["spanned"]
    assert rep["intersection_monomials"] == 3
    assert "evidence" in rep["model"]
    with pytest.raises(InvalidDegree):
        conjecture2_evidence(A, (2, 0))
    with pytest.raises(InvalidDegree):
        graded_span_check(A, (0, 0))
