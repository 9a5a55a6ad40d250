import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcurrent.hwclass import NodePolynomial, hw_from_poly
from qcurrent.linalg import SparseMatrix, commutator
from qcurrent.presentation import GenSymbol
from qcurrent.repmodule import (GlnFundamental, LevelOverflow, build_from_spec, classify_roundtrip,
                                cyclic_submodule, gln_fundamental, gram_matrices, hw_of, module_report,
                                one_dim_module, relations_ok, singular_vectors, sl2_eval_explicit,
                                sl2_eval_module, simple_top, solve_loop_action, tensor, tensor_all,
                                verify_appendix_identities, verify_dagger_relations, verify_relations)
from qcurrent.scalars import ONE, QDIFF, ZERO, qpow, qq

q = qpow(1)
gammas = st.sampled_from([ONE, qq(2), q, -q ** -1, qq(3) * q ** 2, qq(-5)])


def is_simple_brute_force(M):
    """Simple iff a single line of singular vectors exists and it generates M."""
    sing = singular_vectors(M)
    vecs = [v for vs in sing.values() for v in vs]
    return len(vecs) == 1 and cyclic_submodule(M, vecs[0]).dim == M.dim


def test_one_dim_highest_weight():
    for Q, beta in [(0, 1), (0, -1), (2, q), (q, qq(-3))]:
        M = one_dim_module([Q], [beta], 4)
        rep = hw_of(M, 4)
        assert rep.hw[1] == hw_from_poly(Q, NodePolynomial(beta, []), 4)


def test_one_dim_rejects_bad_beta():
    with pytest.raises(ValueError):
        one_dim_module([0], [qq(2)])
    with pytest.raises(ValueError):
        one_dim_module([2], [0])


@pytest.mark.parametrize('gamma', [ZERO, qq(2), q ** -1 * 3])
def test_eval_module_derived_matches_explicit(gamma):
    M = sl2_eval_module(gamma, 5)
    for t in range(6):
        for kind in ('X+', 'X-', 'J'):
            assert M.matrix(GenSymbol(kind, 1, t)) == sl2_eval_explicit(gamma, kind, t), (kind, t)


def test_level_overflow():
    M = sl2_eval_module(qq(2), 2)
    with pytest.raises(LevelOverflow):
        M.matrix(GenSymbol('J', 1, 3))


def test_weight_grading():
    assert tensor(sl2_eval_module(qq(2)), sl2_eval_module(q)).check_weights()


def test_rank_one_fundamental_is_the_evaluation_module():
    F = gln_fundamental(2, 1, qq(3), 4).module
    V = sl2_eval_module(qq(3) * q, 4)
    for t in range(4):
        for kind in ('X+', 'X-', 'J'):
            assert F.matrix(GenSymbol(kind, 1, t)) == V.matrix(GenSymbol(kind, 1, t))


@pytest.mark.parametrize('n,i', [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)])
def test_fundamental_affine_relations(n, i):
    G = GlnFundamental(n, i, qq(2) * q, 2, solve_loop=False)
    k0inv = G.Tp[1] @ G.Tm[n]
    assert commutator(G.e0, G.f0) == (G.k0 - k0inv).scale(QDIFF.inverse())
    assert G.k0 @ G.e0 @ k0inv == G.e0.scale(q ** 2)
    assert G.central_element() == SparseMatrix.identity(G.dim)


def test_fundamental_at_zero_point_has_no_f0():
    G = GlnFundamental(3, 1, ZERO, 2, solve_loop=False)
    assert G.f0 is None


def test_solve_loop_action_highest_weight():
    M = solve_loop_action(3, 2, qq(2), 4)
    rep = hw_of(M, 4)
    assert rep.hw[1].lam == ONE and rep.hw[2].lam == q


def test_solve_loop_action_validation():
    with pytest.raises(ValueError):
        solve_loop_action(3, 3, qq(2))


def test_generic_and_resonant_tensor_squares():
    a, b = sl2_eval_module(qq(2), 4), sl2_eval_module(qq(5), 4)
    generic = tensor(a, b)
    assert is_simple_brute_force(generic)
    # roots differing by q^2 make the tensor square reducible
    c = sl2_eval_module(qq(2) * q ** -2, 4)
    resonant = tensor(a, c)
    assert not is_simple_brute_force(resonant)
    top = simple_top(cyclic_submodule(resonant, 0))
    assert top.dim == 3 and is_simple_brute_force(top)
    assert relations_ok(verify_relations(top, 3))


def test_simple_top_matches_brute_force_on_triple():
    D = one_dim_module([2], [q], 4)
    M = tensor_all([D, sl2_eval_module(qq(3), 4), sl2_eval_module(qq(3) * q ** 2, 4)])
    top = simple_top(cyclic_submodule(M, 0))
    assert is_simple_brute_force(top)
    assert hw_of(top, 4).hw == hw_of(cyclic_submodule(M, 0), 4).hw


def test_gram_matrix_top_entry():
    sub = cyclic_submodule(tensor(sl2_eval_module(qq(2), 3), sl2_eval_module(qq(5), 3)), 0)
    grams = gram_matrices(sub)
    idx, G = grams[sub.weights[0]]
    assert G == [[ONE]]


def test_cyclic_submodule_records_words():
    M = tensor(sl2_eval_module(qq(2), 3), sl2_eval_module(qq(5), 3))
    sub = cyclic_submodule(M, 0)
    for vec, w in zip(sub.basis, sub.words):
        assert M.apply(_word_element(w), {0: ONE}) == vec


def _word_element(w):
    from qcurrent.presentation import AlgebraElement
    return AlgebraElement._raw({w: ONE})


def test_dagger_relations_vanish():
    M = tensor(sl2_eval_module(qq(2), 4), sl2_eval_module(q, 4))
    rep = verify_dagger_relations(M, 3)
    assert rep['failures'] == 0 and rep['instances'] > 0


def test_rank_one_identities_report_skips():
    M = sl2_eval_module(qq(2), 2)
    rep = verify_appendix_identities(M, 3)
    assert any(r['pass'] is None for r in rep)
    assert all(r['pass'] is not False for r in rep)
    with pytest.raises(ValueError):
        verify_appendix_identities(one_dim_module([0, 0], [ONE, ONE]), 1)


def test_classify_roundtrip_rejects_noncanonical():
    with pytest.raises(ValueError):
        classify_roundtrip([ONE], [NodePolynomial(qpow(-1), [q ** 2])])
    with pytest.raises(ValueError):
        classify_roundtrip([ZERO], [NodePolynomial(qq(2), [])])


def test_build_from_spec_and_report():
    spec = {'type': 'tensor', 'factors': [{'type': 'onedim', 'Q': ['2'], 'beta': ['q']},
                                          {'type': 'sl2eval', 'gamma': '3'}]}
    M = build_from_spec(spec, 3)
    rep = module_report(M)
    assert rep['dim'] == 2 and rep['hw'] is not None
    assert relations_ok(rep['relationChecks'])
    with pytest.raises(ValueError):
        build_from_spec({'type': 'nothing'})


@settings(max_examples=8, deadline=None)
@given(gammas, gammas, gammas)
def test_tensor_products_are_modules_and_associative(a, b, c):
    T = 3
    A, B, C = (sl2_eval_module(x, T) for x in (a, b, c))
    left, right = tensor(tensor(A, B), C), tensor(A, tensor(B, C))
    for g in [GenSymbol('X+', 1, 2), GenSymbol('X-', 1, 1), GenSymbol('J', 1, 3)]:
        assert left.matrix(g) == right.matrix(g)
    assert relations_ok(verify_relations(left, 2))


@settings(max_examples=8, deadline=None)
@given(st.sampled_from([qq(2), q, qq(-3) * q]), st.sampled_from([q, qq(2), -ONE]), gammas)
def test_q_left_leg_tensor_is_a_module(Q, beta, g):
    M = tensor(one_dim_module([Q], [beta], 3), sl2_eval_module(g, 3))
    assert relations_ok(verify_relations(M, 3))
