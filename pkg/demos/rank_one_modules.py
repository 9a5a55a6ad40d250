"""Rank-one tour: tensor products of evaluation modules, their simple tops,
and the highest weight predicted from the node polynomial.

    python demos/rank_one_modules.py
"""

from qcurrent.hwclass import NodePolynomial, hw_from_poly
from qcurrent.repmodule import (cyclic_submodule, hw_of, one_dim_module, relations_ok, simple_top,
                                sl2_eval_module, tensor_all, verify_relations)
from qcurrent.scalars import ONE, ZERO, qpow, qq

q = qpow(1)
T = 4


def show(Q, beta, roots):
    factors = [one_dim_module([Q], [beta], T)] + [sl2_eval_module(g, T) for g in roots]
    M = tensor_all(factors)
    top = simple_top(cyclic_submodule(M, 0))
    seen = hw_of(top, T).hw[1]
    want = hw_from_poly(Q, NodePolynomial(beta, roots), T)
    print(f'Q={Q}  beta={beta}  roots={[str(r) for r in roots]}')
    print(f'  tensor dim {M.dim}, simple top dim {top.dim}, relations ok: {relations_ok(verify_relations(M, 3))}')
    print(f'  lambda = {seen.lam}')
    for t, u in enumerate(seen.u, start=1):
        print(f'  u_{t} = {u}')
    print(f'  matches the closed formula: {seen == want}\n')


show(ZERO, ONE, [qq(2), qq(5)])
# roots in a q^2 string: the tensor square is no longer simple
show(ZERO, ONE, [qq(2), qq(2) * q ** -2])
show(qq(2), q, [qq(3)])
