import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import dict_magnus, dict_mul
from bigrade.magnus import (BoundExceeded, BoundMismatch, Refuted, SeriesSyntaxError,
                            TruncatedSeries, Verified, delta_component, dmn_membership,
                            format_terms, gamma_membership, magnus_expand, parse_terms,
                            weighted_filtration_level)
from bigrade.words import Alphabet, Word, commutator, multibracket

A = Alphabet(2, 1)
raw = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=10)
words = raw.map(Word)
bounds = st.integers(1, 5)


def oracle_dict(w, bound):
    return dict_magnus(w.letters, bound)


@given(words, bounds)
def test_expansion_matches_dict_oracle(w, b):
    assert magnus_expand(w, b, alpha=A).to_dict() == oracle_dict(w, b)


@given(words, words, bounds)
def test_multiplicative(u, v, b):
    th = lambda w: magnus_expand(w, b, alpha=A)
    assert th(u * v) == th(u) * th(v)
    assert th(u) * th(u.inverse()) == TruncatedSeries.one(A, b)


@given(words, words, bounds)
def test_series_product_matches_dict_product(u, v, b):
    prod = magnus_expand(u, b, alpha=A) * magnus_expand(v, b, alpha=A)
    assert prod.to_dict() == dict_mul(oracle_dict(u, b), oracle_dict(v, b), b)


@given(words, st.integers(1, 3), st.integers(0, 3))
def test_retruncation_coherent(w, low, extra):
    assert magnus_expand(w, low + extra, alpha=A).truncate(low) == magnus_expand(w, low, alpha=A)


@given(words, st.integers(2, 6))
def test_weighted_truncation_is_filtered_oracle(w, b):
    wx, wy = 2, 1
    want = {m: c for m, c in oracle_dict(w, b).items()
            if sum(wx if s < A.p else wy for s in m) <= b}
    assert magnus_expand(w, b, weights=(wx, wy), alpha=A).to_dict() == want


@given(words, st.integers(1, 4), st.integers(0, 3))
def test_membership_matches_support_oracle(w, m, n):
    b = m + n + 1
    got = dmn_membership(w, (m, n), b, A)
    bad = [mono for mono in oracle_dict(w, b)
           if mono and (sum(s < A.p for s in mono) < m or sum(s >= A.p for s in mono) < n)]
    assert bool(got) == (not bad)
    if bad:
        # the witness is a minimal-length offending monomial
        assert len(got.monomial) == min(len(x) for x in bad)
        assert got.coefficient == oracle_dict(w, b)[got.monomial]


def test_worked_deltas():
    B = Alphabet(1, 1)
    c = commutator(B.x(1), B.y(1))
    assert delta_component(c, (1, 1), 3, B).text() == "X1*Y1 - Y1*X1"
    assert delta_component(c, (1, 0), 3, B).text() == "0"
    assert delta_component(c, (0, 1), 3, B).text() == "0"
    assert magnus_expand(B.x(1).inverse(), 3, alpha=B).text() == "1 - X1 + X1^2 - X1^3"
    with pytest.raises(BoundExceeded):
        delta_component(c, (2, 2), 3, B)


def test_commutator_levels():
    w = multibracket([A.x(1), A.x(2), A.y(1)])
    assert isinstance(dmn_membership(w, (2, 1), 4, A), Verified)
    r = dmn_membership(w, (3, 1), 4, A)
    assert isinstance(r, Refuted) and r.bidegree == (2, 1)
    assert gamma_membership(w, 3, A) and not gamma_membership(w, 4, A)
    assert gamma_membership(A.x(1), 1, A)
    assert weighted_filtration_level(w, (2, 1), 6, A) == 5
    assert weighted_filtration_level(Word(), (2, 1), 6, A) == math.inf


def test_membership_clamps_negative_indices():
    assert dmn_membership(A.y(1), (-1, 1), 2, A)
    assert not dmn_membership(A.y(1), (1, -1), 2, A)


def test_large_coefficients_switch_to_exact_integers():
    B = Alphabet(1, 1)
    th = magnus_expand(B.x(1) ** 3000, 8, alpha=B)
    assert th.coefficient((0,) * 8) == math.comb(3000, 8)
    assert th.coefficient((0,) * 8) > 2 ** 63


@given(words, bounds)
def test_text_round_trip(w, b):
    th = magnus_expand(w, b, alpha=A)
    assert parse_terms(th.text(), A.p, A.q) == th.to_dict()


@pytest.mark.parametrize("text", ["X1 +", "2 X3", "X1 Z1", "++X1"])
def test_series_syntax_errors(text):
    with pytest.raises(SeriesSyntaxError):
        parse_terms(text, 2, 1)


def test_formatting():
    assert format_terms([((), 1), ((0, 0, 2), -3)], 2) == "1 - 3*X1^2*Y1"
    assert format_terms([], 2) == "0"


def test_mismatched_bounds():
    with pytest.raises(BoundMismatch):
        TruncatedSeries.one(A, 2) * TruncatedSeries.one(A, 3)
    with pytest.raises(BoundExceeded):
        TruncatedSeries.one(A, 2).truncate(3)
    with pytest.raises(BoundExceeded):
        magnus_expand(A.x(1), 0, alpha=A)


def test_homogeneous_and_weighted_parts():
    th = magnus_expand(commutator(A.x(1), A.y(1)), 3, alpha=A)
    assert th.homogeneous((1, 1)) == {(0, 2): 1, (2, 0): -1}
    thw = magnus_expand(commutator(A.x(1), A.y(1)), 3, weights=(2, 1), alpha=A)
    assert thw.weighted_part(3) == {(0, 2): 1, (2, 0): -1}
    assert isinstance(th.parts[0], np.ndarray)
