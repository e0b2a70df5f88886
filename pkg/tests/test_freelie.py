import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import commutator_poly, is_lyndon_bruteforce, lyndon_count_bruteforce, right_nested_poly
from bigrade.freelie import (DerivationElement, GradeMismatch, LieElement, NotALieElement,
                            NotInImage, derivation_apply, dmn_kernel, is_lyndon, j_map, ja_map,
                            lie_algebra, lie_bracket, lie_project, lyndon_basis, mu_embed, omega,
                            parse_wedge, regrade, regrade_total, wedge3_decode, wedge3_encode,
                            wedge_text, xi_contract, xi_matrix)
from bigrade.words import InvalidDegree, NotSurfaceMode

GRADES = [(m, n) for m in range(5) for n in range(5) if 1 <= m + n <= 4]


def element(draw, alg, grade):
    coords = draw(st.lists(st.integers(-3, 3), min_size=alg.rank(grade), max_size=alg.rank(grade)))
    return LieElement(alg, grade, coords)


@st.composite
def graded_elements(draw, k=1, max_total=6):
    p, q = draw(st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2)]))
    alg = lie_algebra(p, q)
    grades = [g for g in GRADES if alg.rank(g)]
    out = []
    for _ in range(k):
        out.append(element(draw, alg, draw(st.sampled_from(grades))))
    if sum(sum(u.grade) for u in out) > max_total:
        out = [u for u in out[:1]] * k
    return out


@given(st.lists(st.integers(0, 2), min_size=1, max_size=7))
def test_lyndon_predicate(w):
    assert is_lyndon(tuple(w)) == is_lyndon_bruteforce(w)


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_basis_counts_against_brute_force(p, q):
    alg = lie_algebra(p, q)
    for m in range(5):
        for n in range(5 - m):
            if m + n:
                assert alg.rank((m, n)) == lyndon_count_bruteforce(p, q, m, n)


def test_total_and_weighted_ranks_sum_bigraded():
    big, tot, wt = lie_algebra(2, 2), lie_algebra(2, 2, "total"), lie_algebra(2, 2, "weighted")
    for k in range(1, 7):
        assert tot.rank(k) == sum(big.rank((i, k - i)) for i in range(k + 1))
        assert wt.rank(k) == sum(big.rank((m, k - 2 * m)) for m in range(k // 2 + 1)
                                 if (m, k - 2 * m) != (0, 0))


@given(graded_elements())
def test_mu_then_project_is_identity(us):
    (u,) = us
    assert lie_project(mu_embed(u), u.grade, u.algebra) == u


@given(graded_elements(2))
def test_bracket_matches_tensor_commutator(us):
    u, v = us
    assert mu_embed(lie_bracket(u, v)) == commutator_poly(mu_embed(u), mu_embed(v))
    assert lie_bracket(u, v) == -lie_bracket(v, u)
    assert lie_bracket(u, u).is_zero()


@given(graded_elements(3))
def test_jacobi(us):
    u, v, w = us
    jac = (lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u))
           + lie_bracket(w, lie_bracket(u, v)))
    assert jac.is_zero()


def test_multibracket_matches_tensor_oracle():
    alg = lie_algebra(2, 2)
    for syms in itertools.product(range(4), repeat=3):
        assert mu_embed(alg.multibracket(syms)) == right_nested_poly(list(syms))


def test_non_lie_polynomials_rejected():
    alg = lie_algebra(2, 1)
    with pytest.raises(NotALieElement):
        lie_project({(0, 2): 1}, (1, 1), alg)
    with pytest.raises(NotALieElement):
        lie_project({(0, 0): 1}, (2, 0), alg)
    with pytest.raises(GradeMismatch):
        lie_project({(0, 2): 1, (2, 0): -1, (0,): 1}, (1, 1), alg)
    with pytest.raises(NotALieElement):
        alg.basis_element((2, 0))


def test_lyndon_basis_order_and_text():
    alg = lie_algebra(1, 1)
    assert lyndon_basis(alg, (2, 1)) == ((0, 0, 1),)
    assert alg.basis_element((0, 0, 1)).text() == "[a1,[a1,b1]]"
    assert omega(2).text() == "[a1,b1] + [a2,b2]"
    with pytest.raises(NotSurfaceMode):
        omega(2, lie_algebra(2, 1))


def random_derivation(draw, alg, shift):
    vals = [element(draw, alg, alg.add_grade(alg.gen_grade(k), shift)) for k in range(alg.nsym)]
    return DerivationElement(alg, shift, vals)


@st.composite
def derivations(draw, surface=True):
    g = draw(st.sampled_from([1, 2]))
    alg = lie_algebra(g, g) if surface else lie_algebra(g, 1)
    shift = draw(st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]))
    return random_derivation(draw, alg, shift)


@given(derivations())
def test_contraction_is_derivative_of_omega(d):
    g = d.algebra.p
    assert xi_contract(d) == derivation_apply(d, omega(g, d.algebra))


@given(derivations(), st.data())
def test_derivation_leibniz(d, data):
    alg = d.algebra
    u = element(data.draw, alg, data.draw(st.sampled_from([(1, 0), (0, 1), (1, 1)])))
    v = element(data.draw, alg, data.draw(st.sampled_from([(1, 0), (0, 1)])))
    lhs = derivation_apply(d, lie_bracket(u, v))
    rhs = lie_bracket(derivation_apply(d, u), v) + lie_bracket(u, derivation_apply(d, v))
    assert lhs == rhs


@pytest.mark.parametrize("g,mn", [(1, (1, 0)), (2, (1, 0)), (2, (0, 1)), (2, (1, 1)),
                                  (2, (2, -1)), (3, (2, -1)), (2, (-1, 2))])
def test_kernel_is_exact_kernel(g, mn):
    alg = lie_algebra(g, g)
    basis = dmn_kernel(alg, mn)
    rows, ncols = xi_matrix(alg, mn)
    from bigrade import snf
    assert len(basis) == ncols - snf.rank(rows)
    for d in basis:
        assert xi_contract(d).is_zero()


def test_kernel_errors():
    with pytest.raises(NotSurfaceMode):
        dmn_kernel((2, 1), (1, 0))
    with pytest.raises(InvalidDegree):
        dmn_kernel((2, 2), (-1, -1))
    assert [len(dmn_kernel((g, g), (2, -1))) for g in (2, 3)] == [0, 1]


triples = st.dictionaries(st.tuples(*[st.integers(0, 5)] * 3), st.integers(-3, 3), max_size=4)


@given(triples)
def test_wedge_encode_decode(t):
    from bigrade.freelie import wedge_normalize
    d = wedge3_encode(t, 3)
    assert wedge3_decode(d) == wedge_normalize(t)
    assert xi_contract(d).is_zero()
    assert parse_wedge(wedge_text(t, 3), 3) == wedge_normalize(t)


def test_decode_rejects_non_image():
    alg = lie_algebra(2, 2, "total")
    vals = [None] * 4
    vals[0] = lie_bracket(alg.generator(0), alg.generator(1))
    with pytest.raises(NotInImage):
        wedge3_decode(DerivationElement(alg, 1, vals))
    with pytest.raises(NotInImage):
        wedge3_decode(DerivationElement.zero(lie_algebra(2, 2), (1, 0)))


@given(graded_elements())
def test_regrading_preserves_polynomial(us):
    (u,) = us
    t = regrade_total(u)
    assert t.grade == sum(u.grade) and mu_embed(t) == mu_embed(u)
    w = regrade(u, lie_algebra(u.algebra.p, u.algebra.q, "weighted"))
    assert w.grade == 2 * u.grade[0] + u.grade[1]
    if not u.is_zero():
        # a zero of total degree k has no unique bidegree
        assert regrade(t, u.algebra) == u


def test_regrade_needs_homogeneity():
    tot = lie_algebra(1, 1, "total")
    u = lie_bracket(tot.generator(0), tot.generator(1))
    v = lie_bracket(tot.generator(0), u)
    mixed = lie_project(mu_embed(v), 3, tot) + lie_project(
        mu_embed(lie_bracket(tot.generator(1), u)), 3, tot)
    with pytest.raises(GradeMismatch):
        regrade(mixed, lie_algebra(1, 1))
    with pytest.raises(GradeMismatch):
        regrade(tot.zero(2), lie_algebra(1, 1))
    assert regrade_total(lie_algebra(1, 1).zero((2, 1))) == tot.zero(3)


@given(derivations())
def test_comparison_maps_keep_values(d):
    m, n = d.shift
    jd, jad = j_map(d), ja_map(d)
    assert jd.shift == m + n and jad.shift == 2 * m + n
    for k in range(d.algebra.nsym):
        assert mu_embed(jd.values[k]) == mu_embed(d.values[k]) == mu_embed(jad.values[k])
