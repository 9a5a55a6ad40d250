"""Psi eigen-series of a highest weight vector and the highest weights of
Weyl modules for a two-block shape.

    python demos/series_and_weyl.py
"""

from qcurrent.hwclass import Multipartition, NodePolynomial, psi_series, weyl_hw
from qcurrent.scalars import ONE, ZERO, qpow, qq

q = qpow(1)

for Q, phi in [(ZERO, NodePolynomial(ONE, [qq(2)])), (qq(2), NodePolynomial(q, [qq(3)]))]:
    s = psi_series(Q, phi, 4)
    print(f'Psi series for Q={Q}, phi={phi}:')
    for e in range(s.low, 5):
        print(f'  omega^{e}: {s.coeff(e)}')
    print()

print('Weyl module, shape (2,2), lambda = ((1),(1)), Qhat = (2,3):')
for row in weyl_hw((2, 2), Multipartition([(1,), (1,)]), [qq(2), qq(3)], 3):
    hw = row['hw']
    print(f'  node {row["node"]}: Q={row["Q"]}, phi={row["phi"]}, lambda={hw.lam}, u_1={hw.u[0]}')
