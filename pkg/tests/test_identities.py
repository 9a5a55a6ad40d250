import pytest

from qcurrent.identities import identity_catalog, raise0_lower0_split
from qcurrent.repmodule import one_dim_module, sl2_eval_module, tensor_all, verify_appendix_identities
from qcurrent.scalars import ONE, qpow, qq

q = qpow(1)


def module_q(Q, T=5):
    beta = ONE if not Q else q
    return tensor_all([one_dim_module([Q], [beta], T)] + [sl2_eval_module(g, T) for g in (qq(3), q, qq(2) * q ** 2)])


def test_catalog_contents_depend_on_parameter():
    names0 = {name for name, *_ in identity_catalog(0, 2)}
    names2 = {name for name, *_ in identity_catalog(2, 2)}
    assert 'raise1-lower0-congruence' in names0 and 'raise1-lower0-congruence' not in names2
    assert 'j-shift-top' in names2 and 'j-shift-top' not in names0


@pytest.mark.parametrize('Q', [0, qq(2), q ** -1])
def test_all_identities_hold(Q):
    rep = verify_appendix_identities(module_q(Q), 3)
    assert all(r['pass'] for r in rep), [r for r in rep if not r['pass']]


@pytest.mark.parametrize('exponent', [-1, 0, 1])
def test_split_identity_is_sensitive_to_the_j0_exponent(exponent):
    M = module_q(qq(2))
    assert not M.act(raise0_lower0_split(2, qq(2), exponent)).is_zero()
    assert M.act(raise0_lower0_split(2, qq(2))).is_zero()


def test_congruences_fail_as_operators():
    # they only hold on vectors killed by the raising operators
    M = module_q(0)
    for name, params, kind, el in identity_catalog(0, 2):
        if kind == 'congruence' and params == (2,):
            assert not M.act(el).is_zero()
