"""Acceptance criteria 1-11, one function each.

Every check returns ``(ok, detail)``; the pytest wrappers print one
PASS/FAIL line per criterion.  Run ``python tests/test_acceptance.py``
for the summary table without pytest.
"""

import random
import time

import pytest
import sympy
from sympy.polys.rings import ring
from sympy.polys.ring_series import rs_mul, rs_series_inversion

from qcurrent import presentation as pr
from qcurrent.hwclass import (Multipartition, NodePolynomial, canonicalize, equivalent, equivalent_by_sequences,
                              forbidden_root, hw_from_poly, in_CxQ, node_position, psi_from_hw, psi_series,
                              weyl_hw)
from qcurrent.pbwcheck import pbw_verify
from qcurrent.repmodule import (classify_roundtrip, gln_fundamental, one_dim_module, relations_ok,
                                sl2_eval_module, solve_loop_action, tensor, tensor_all,
                                verify_appendix_identities, verify_relations)
from qcurrent.scalars import ONE, QDIFF, ZERO, qint, qpow, qq, random_scalar
from qcurrent.symfun import gen_series_P, identity_suite, partitions, q_power_sum_by_definition

q = qpow(1)


# -- 1 ---------------------------------------------------------------------------------

def criterion_1():
    bad, total = [], 0
    for k in range(1, 6):
        recs = identity_suite(k, 8, range(50))
        total += len(recs)
        bad += [r for r in recs if not r['pass']]
    names = sorted({r['identity'] for r in identity_suite(1, 2, [0])})
    return not bad, f'{total} checks over {names}, {len(bad)} failures'


# -- 2 ---------------------------------------------------------------------------------

def _poly_mul_trunc(a, b, T):
    out = [ZERO] * (T + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= T:
                out[i + j] = out[i + j] + x * y
    return out


def criterion_2():
    T = 8
    rng = random.Random(2)
    checked = 0
    for k in range(0, 5):
        for _ in range(6):
            v = [random_scalar(rng) for _ in range(k)]
            # numerator factors and geometric series multiplied out by hand
            acc = [ONE] + [ZERO] * T
            for g in v:
                acc = _poly_mul_trunc(acc, [ONE, -qpow(-2) * g], T)
                acc = _poly_mul_trunc(acc, [g ** t for t in range(T + 1)], T)
            got = gen_series_P(v, T)
            if [got.coeff(e) for e in range(T + 1)] != acc:
                return False, f'mismatch at gammas={v}'
            checked += 1
    return True, f'{checked} tuples, k <= 4, through omega^{T}'


# -- 3 ---------------------------------------------------------------------------------

def _strip_case(rng, Q, d, perturb):
    k = rng.randint(0, 2)
    beta2 = random_scalar(rng)
    roots2 = [random_scalar(rng) for _ in range(k)]
    beta = qpow(-d) * beta2
    base = forbidden_root(Q, beta)
    roots = roots2 + [qpow(-2 * z) * base for z in range(d)]
    if perturb == 'root' and roots:
        roots[-1] = roots[-1] * qq(3)
    elif perturb == 'beta':
        beta = beta * qq(-2)
    return NodePolynomial(beta, roots), NodePolynomial(beta2, roots2)


def criterion_3():
    rng = random.Random(3)
    agree, positives, negatives = 0, 0, 0
    for case in range(30):
        Q = random_scalar(rng)
        d = rng.randint(0, 3)
        perturb = [None, None, 'root', 'beta'][case % 4]
        phi, phi2 = _strip_case(rng, Q, d, perturb)
        T = max(phi.degree, phi2.degree) + 4
        a = equivalent(Q, phi, phi2)
        b = equivalent_by_sequences(Q, phi, phi2, T)
        if a != b:
            return False, f'routes disagree: Q={Q} phi={phi} phi2={phi2}'
        if perturb is None and not a:
            return False, f'constructed equivalent pair rejected: {phi} vs {phi2}'
        positives += a
        negatives += not a
        for p in (phi, phi2):
            c = canonicalize(Q, p)
            if not in_CxQ(Q, c) or canonicalize(Q, c) != c:
                return False, f'canonicalize not idempotent/canonical for {p}'
            if not equivalent_by_sequences(Q, p, c, max(p.degree, c.degree) + 4):
                return False, f'canonicalize changed the highest weight of {p}'
        agree += 1
    return True, f'{agree} cases agree ({positives} equivalent, {negatives} not)'


# -- 4 ---------------------------------------------------------------------------------

_qs = sympy.Symbol('q')
_FIELD = sympy.QQ.frac_field(_qs)
_RING, _w = ring('w', _FIELD)


def _to_field(x):
    return _FIELD.from_sympy(sympy.sympify(str(x).replace('^', '**'), locals={'q': _qs}))


def _sympy_psi(Q, phi, T):
    """Closed rational forms of the Psi eigen-series, expanded with sympy's ring series."""
    beta = _to_field(phi.beta)
    qk = _to_field(qpow(phi.degree))
    num = _RING(1)
    den = _RING(1)
    for g in phi.roots:
        g = _to_field(g)
        num *= 1 - _to_field(qpow(-2)) * g * _w
        den *= 1 - g * _w
    ratio = rs_mul(num, rs_series_inversion(den, _w, T + 2), _w, T + 2)
    c = [ratio.coeff(_w ** e) if e else ratio.coeff(1) for e in range(T + 2)]
    if Q.is_zero():
        return {e: (qk * beta * c[e] if e >= 0 else _FIELD(0)) for e in range(-1, T + 1)}
    Qf = _to_field(Q)
    out = {}
    for e in range(-1, T + 1):
        head = c[e] / beta if e >= 0 else _FIELD(0)
        out[e] = qk * (head - Qf * beta * c[e + 1])
    return out


def criterion_4():
    T = 8
    cases = [
        (ZERO, NodePolynomial(ONE, [])),
        (ZERO, NodePolynomial(ONE, [qq(2)])),
        (ZERO, NodePolynomial(-ONE, [q, qq(3) * q ** -1])),
        (ZERO, NodePolynomial(ONE, [qq(2), q ** 2, -ONE])),
        (qq(2), NodePolynomial(q, [])),
        (qq(2), NodePolynomial(ONE, [qq(3)])),
        (q, NodePolynomial(qq(-2), [q ** 2, qq(5)])),
        (qq(3) * q ** -1, NodePolynomial(q ** -1, [qq(2), q, -q ** 3])),
    ]
    for Q, phi in cases:
        series = psi_series(Q, phi, T)
        direct = psi_from_hw(Q, hw_from_poly(Q, phi, T + 1))
        if direct.truncate(T) != series.truncate(T):
            return False, f'coefficient formula mismatch for Q={Q}, phi={phi}'
        ref = _sympy_psi(Q, phi, T)
        for e in range(-1, T + 1):
            if _to_field(series.coeff(e)) != ref[e]:
                return False, f'rational form mismatch at omega^{e} for Q={Q}, phi={phi}'
    return True, f'{len(cases)} polynomials of degree <= 3, through omega^{T}'


# -- 5 ---------------------------------------------------------------------------------

def _criterion5_modules(T):
    mods = []
    for Q, beta in [(0, 1), (0, -1), (2, q), (2, -q), (q, qq(3)), (q ** -1, -ONE)]:
        mods.append((f'onedim Q={Q} beta={beta}', one_dim_module([Q], [beta], T)))
    for g in [ZERO, ONE, qq(3) * q, -q ** -2, qq(2) + q]:
        mods.append((f'sl2eval gamma={g}', sl2_eval_module(g, T)))
    for n in (2, 3, 4):
        for i in range(1, n):
            mods.append((f'fundamental n={n} i={i}', gln_fundamental(n, i, qq(2) * q, T).module))
    for i in (1, 2):
        mods.append((f'solve_loop n=3 i={i}', solve_loop_action(3, i, qq(3), T)))
    D = one_dim_module([2], [q], T)
    V1, V2 = sl2_eval_module(qq(2), T), sl2_eval_module(q ** 2, T)
    mods.append(('D(Q=2) x V', tensor(D, V1)))
    mods.append(('V x V', tensor(V1, V2)))
    mods.append(('D(Q=2) x V x V', tensor_all([D, V1, V2])))
    D3 = one_dim_module([0, 2], [ONE, q], T)
    F1 = solve_loop_action(3, 1, qq(2), T, verify=False)
    F2 = solve_loop_action(3, 2, qq(3) * q, T, verify=False)
    mods.append(('F1 x F2 (n=3)', tensor(F1, F2)))
    mods.append(('D(0,2) x F1 x F2 (n=3)', tensor_all([D3, F1, F2])))
    return mods


def criterion_5():
    T = 4
    count = 0
    mods = _criterion5_modules(T)
    for name, M in mods:
        rep = verify_relations(M, T)
        if not relations_ok(rep):
            fails = {k: v['failures'] for k, v in rep.items() if v['failures']}
            return False, f'{name}: {fails}'
        count += sum(v['instances'] for v in rep.values())
    return True, f'{len(mods)} modules, {count} relation instances vanish'


# -- 6 ---------------------------------------------------------------------------------

def criterion_6():
    T = 4
    zero_cases = [
        NodePolynomial(ONE, []),
        NodePolynomial(-ONE, [qq(2)]),
        NodePolynomial(ONE, [qq(2), qq(5) * q]),
        NodePolynomial(-ONE, [q ** 3, qq(-3)]),
    ]
    for phi in zero_cases:
        rep = classify_roundtrip([ZERO], [phi], T)
        if not rep['pass'] or rep['simple_dim'] != 2 ** phi.degree:
            return False, f'Q=0 phi={phi}: pass={rep["pass"]} simple_dim={rep["simple_dim"]}'
    nonzero_cases = [
        (qq(2), NodePolynomial(q, [])),
        (qq(2), NodePolynomial(ONE, [qq(3)])),
        (q, NodePolynomial(qq(-2), [q ** 2, qq(5)])),
    ]
    for Q, phi in nonzero_cases:
        rep = classify_roundtrip([Q], [phi], T)
        if not rep['hw_match'] or not rep['top_hw_match']:
            return False, f'Q={Q} phi={phi}: {rep}'
    return True, f'{len(zero_cases)} Q=0 and {len(nonzero_cases)} Q!=0 polynomials'


# -- 7 ---------------------------------------------------------------------------------

def criterion_7():
    T = 4
    cases = [
        ([ZERO, ZERO], [NodePolynomial(ONE, [qq(2)]), NodePolynomial(-ONE, [qq(3) * q])]),
        ([ZERO, ZERO], [NodePolynomial(ONE, [qq(2), q]), NodePolynomial(ONE, [])]),
        ([ZERO, qq(2)], [NodePolynomial(ONE, [qq(3)]), NodePolynomial(q, [qq(5)])]),
        ([ZERO, q], [NodePolynomial(-ONE, []), NodePolynomial(qq(2), [q ** 2])]),
    ]
    for Q, phis in cases:
        rep = classify_roundtrip(Q, phis, T)
        if not rep['hw_match']:
            return False, f'Q={[str(x) for x in Q]}: expected {rep["expected"]} observed {rep["observed"]}'
    return True, f'{len(cases)} n=3 highest weights match through level {T}'


# -- 8 ---------------------------------------------------------------------------------

def criterion_8():
    T = 5
    mods = [
        ('Q=0, D x V x V x V', tensor_all([one_dim_module([0], [ONE], T)]
                                          + [sl2_eval_module(g, T) for g in (qq(2), qq(3) * q, q ** -2)])),
        ('Q=0, V x V', tensor(sl2_eval_module(qq(2), T), sl2_eval_module(qq(-1), T))),
        ('Q=2, D x V x V x V', tensor_all([one_dim_module([2], [q], T)]
                                          + [sl2_eval_module(g, T) for g in (qq(3), q, qq(5) * q ** 2)])),
        ('Q=q, D x V x V', tensor_all([one_dim_module([q], [qq(-2)], T)]
                                      + [sl2_eval_module(g, T) for g in (qq(3), q ** 2)])),
    ]
    checked = skipped = 0
    for name, M in mods:
        assert M.dim <= 8
        for r in verify_appendix_identities(M, 3):
            if r['pass'] is None:
                skipped += 1
            elif not r['pass']:
                return False, f'{name}: {r["identity"]} {r["params"]}'
            else:
                checked += 1
    if skipped:
        return False, f'{skipped} identities exceeded the truncation'
    return True, f'{checked} identity checks on {len(mods)} modules (k <= 3, T = {T})'


# -- 9 ---------------------------------------------------------------------------------

def criterion_9():
    a = pbw_verify(2, 3, 3, 3)
    b = pbw_verify(3, 2, 3, 3)
    n = len(a['slices']) + len(b['slices'])
    bad = [s for s in a['slices'] + b['slices'] if not s['match']]
    return not bad, f'{n} slices, {len(bad)} mismatches'


# -- 10 --------------------------------------------------------------------------------

def _same_action(M, N, T):
    for i in range(1, M.n1 + 1):
        syms = [pr.GenSymbol('K+', i), pr.GenSymbol('K-', i)]
        for t in range(T + 1):
            syms += [pr.GenSymbol('X+', i, t), pr.GenSymbol('X-', i, t), pr.GenSymbol('J', i, t)]
        for s in syms:
            if M.matrix(s) != N.matrix(s):
                return s
    return None


def criterion_10():
    T = 4
    triples = [
        [one_dim_module([2], [q], T), sl2_eval_module(qq(3), T), sl2_eval_module(q ** 2, T)],
        [sl2_eval_module(qq(2), T), sl2_eval_module(-q, T), sl2_eval_module(ZERO, T)],
        [one_dim_module([0, q], [ONE, qq(2)], T), solve_loop_action(3, 1, qq(2), T, verify=False),
         solve_loop_action(3, 2, qq(3), T, verify=False)],
    ]
    for A, B, C in triples:
        bad = _same_action(tensor(tensor(A, B), C), tensor(A, tensor(B, C)), T)
        if bad is not None:
            return False, f'bracketings differ on {bad}'
    coideal = [
        tensor(one_dim_module([q], [qq(-2)], T), sl2_eval_module(qq(5), T)),
        tensor(sl2_eval_module(qq(3), T), sl2_eval_module(q, T)),
        tensor(one_dim_module([2, 3], [q, ONE], T), solve_loop_action(3, 1, qq(2), T, verify=False)),
        tensor(one_dim_module([0, 3], [ONE, q], T), solve_loop_action(3, 2, q, T, verify=False)),
    ]
    for M in coideal:
        rep = verify_relations(M, T)
        if not relations_ok(rep):
            return False, f'relations fail on a tensor with left parameters {M.Q}'
    return True, f'{len(triples)} triple products associative; {len(coideal)} tensors satisfy the relations'


# -- 11 --------------------------------------------------------------------------------

def _display_J(i, j, k, nbar, lam, Qhat, t):
    """J_{i,t} eigenvalue on the Weyl highest weight vector, summed term by term before simplification."""
    a = lam.part(k, j)
    if j != nbar[k - 1]:
        b = lam.part(k, j + 1)
        inner = q ** ((2 * t - 1) * a) * qint(a) - q ** b * qint(b)
        for z in range(1, t):
            inner = inner - QDIFF * q ** ((2 * (t - z) - 1) * a + b) * qint(a) * qint(b)
        return q ** ((i - 2 * j) * t) * Qhat[k - 1] ** t * inner
    b = lam.part(k + 1, 1)
    A, B = Qhat[k - 1], Qhat[k]
    inner = A ** t * q ** ((2 * t - 1) * a) * qint(a) - B ** t * q ** (2 * j * t + b) * qint(b)
    for z in range(1, t):
        inner = inner - QDIFF * A ** (t - z) * B ** z * q ** (2 * j * z + (2 * (t - z) - 1) * a + b) * qint(a) * qint(b)
    return q ** ((i - 2 * j) * t) * inner


def criterion_11():
    T = 4
    # p_z(b, b q^-2, ..., b q^-2(c-1)) = b^z q^-c [c]
    for b in (qq(2), q, qq(3) * q ** -1):
        for c in range(1, 4):
            for z in range(1, 5):
                lhs = q_power_sum_by_definition(z, [b * q ** (-2 * p) for p in range(c)])
                if lhs != b ** z * q ** -c * qint(c):
                    return False, f'string identity fails at b={b}, c={c}, z={z}'
    checked = 0
    Qhat_sets = {1: [[qq(2)], [q]], 2: [[qq(2), qq(3)], [ZERO, q]]}
    for r in (1, 2):
        nbar = (2,) * r
        comps = [p for size in range(3) for p in partitions(size, 2)]
        for lam in _multis(comps, r):
            if sum(p.size for p in lam) > 2:
                continue
            lam = Multipartition(lam)
            for Qhat in Qhat_sets[r]:
                rows = weyl_hw(nbar, lam, Qhat, T)
                for row in rows:
                    i = row['node']
                    j, k = node_position(nbar, i)
                    hw = row['hw']
                    nxt = lam.part(k + 1, 1) if j == nbar[k - 1] else lam.part(k, j + 1)
                    if hw.lam != q ** (lam.part(k, j) - nxt):
                        return False, f'K eigenvalue at node {i}, lam={lam}'
                    for t in range(1, T + 1):
                        if hw.u[t - 1] != _display_J(i, j, k, nbar, lam, Qhat, t):
                            return False, f'J_{i},{t} mismatch for lam={lam}, Qhat={Qhat}'
                    checked += 1
    return True, f'{checked} node highest weights match the eigenvalue display'


def _multis(comps, r):
    if r == 0:
        return [()]
    return [(c,) + rest for c in comps for rest in _multis(comps, r - 1)]


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def run(n):
    start = time.perf_counter()
    ok, detail = CRITERIA[n - 1]()
    dt = time.perf_counter() - start
    print(f'{"PASS" if ok else "FAIL"} criterion {n}: {detail} ({dt:.1f}s)')
    return ok, detail


@pytest.mark.parametrize('n', range(1, 12))
def test_criterion(n, capsys):
    ok, detail = run(n)
    with capsys.disabled():
        print(f'\n{"PASS" if ok else "FAIL"} criterion {n}: {detail}')
    assert ok, detail


if __name__ == '__main__':
    results = [run(n)[0] for n in range(1, 12)]
    print(f'{sum(results)}/11 criteria pass')
