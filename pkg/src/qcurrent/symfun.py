"""Partitions and the q-deformed symmetric polynomials.

All functions evaluate symmetric polynomials at exact values
``(g_1, ..., g_k)``; nothing is kept symbolic in the variables.
"""

import functools
import itertools
import random

from .scalars import (ONE, ZERO, QDIFF, OmegaSeries, poly_from_roots, qint, qpow,
                      qq, random_scalar, series_expand)


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f'partition parts must be positive: {parts}')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f'partition parts must be weakly decreasing: {parts}')
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    @property
    def length(self):
        return len(self)

    def __repr__(self):
        return f'Partition{tuple(self)}'


@functools.lru_cache(maxsize=None)
def partitions(t, max_length=None, max_part=None):
    """All partitions of t with at most max_length parts, in lexicographic order."""
    if max_part is None:
        max_part = t
    if max_length is None:
        max_length = t
    if t == 0:
        return (Partition(),)
    if max_length == 0:
        return ()
    out = []
    for first in range(1, min(t, max_part) + 1):
        for rest in partitions(t - first, max_length - 1, first):
            out.append(Partition((first,) + rest))
    return tuple(out)


def _values(v):
    return tuple(qq(x) for x in v)


def _monomial(exponents, v):
    r = ONE
    for e, x in zip(exponents, v):
        if e:
            r = r * x ** e
    return r


def monomial_sym(lam, v):
    """m_lambda evaluated at v, summing over distinct rearrangements."""
    lam = Partition(lam)
    v = _values(v)
    if len(lam) > len(v):
        raise ValueError(f'partition {tuple(lam)} longer than {len(v)} variables')
    padded = tuple(lam) + (0,) * (len(v) - len(lam))
    total = ZERO
    for perm in set(itertools.permutations(padded)):
        total = total + _monomial(perm, v)
    return total


def elem_syms(v, tmax=None):
    """[e_0, e_1, ..., e_tmax] at v (entries beyond len(v) are zero)."""
    v = _values(v)
    e = [ONE]
    for x in v:
        nxt = e + [ZERO]
        for j in range(len(e), 0, -1):
            nxt[j] = nxt[j] + x * e[j - 1]
        e = nxt
    if tmax is not None:
        e = (e + [ZERO] * (tmax + 1))[:tmax + 1]
    return e


def elem_sym(t, v):
    """e_t at v; e_0 = 1 and e_t = 0 for t > len(v)."""
    if t < 0:
        raise ValueError('negative degree')
    return elem_syms(v, t)[t]


def q_power_sums(tmax, v):
    """[p_1(q), ..., p_tmax(q)] at v via the one-variable-at-a-time recursion."""
    v = _values(v)
    if not v:
        raise ValueError('q-power sums need at least one variable')
    qinv = qpow(-1)
    c = qinv * QDIFF
    p = [ZERO] * (tmax + 1)
    for x in v:
        xp = [ONE]
        for _ in range(tmax):
            xp.append(xp[-1] * x)
        new = [ZERO]
        for t in range(1, tmax + 1):
            acc = p[t] + qinv * xp[t]
            s = ZERO
            for z in range(1, t):
                if p[z] and xp[t - z]:
                    s = s + p[z] * xp[t - z]
            if s:
                acc = acc + c * s
            new.append(acc)
        p = new
    return p[1:]


def q_power_sum(t, v):
    """p_t(q) at v."""
    if t <= 0:
        raise ValueError('degree must be positive')
    return q_power_sums(t, v)[-1]


def q_power_sum_by_definition(t, v):
    """p_t(q) straight from its monomial expansion (slow; used as a cross-check)."""
    v = _values(v)
    if not v:
        raise ValueError('q-power sums need at least one variable')
    total = ZERO
    for lam in partitions(t, len(v)):
        ell = len(lam)
        total = total + qpow(-ell) * QDIFF ** (ell - 1) * monomial_sym(lam, v)
    return total


def beta_tilde(beta):
    """(1 - beta^-2)/(q - q^-1)."""
    beta = qq(beta)
    return (ONE - beta ** -2) / QDIFF


def q_power_sums_shifted(tmax, Q, beta, v):
    """[p^<Q>_1, ..., p^<Q>_tmax] at v."""
    Q, beta = qq(Q), qq(beta)
    if Q.is_zero() or beta.is_zero():
        raise ValueError('Q and beta must be nonzero')
    p = q_power_sums(tmax, v)
    bt = beta_tilde(beta)
    qinv = Q.inverse()
    qneg = [ONE]
    for _ in range(tmax):
        qneg.append(qneg[-1] * qinv)
    out = []
    for t in range(1, tmax + 1):
        acc = p[t - 1] + bt * qneg[t]
        s = ZERO
        for z in range(1, t):
            s = s + qneg[t - z] * p[z - 1]
        if s:
            acc = acc + QDIFF * bt * s
        out.append(acc)
    return out


def q_power_sum_shifted(t, Q, beta, v):
    """p^<Q>_t(q; beta) at v."""
    if t <= 0:
        raise ValueError('degree must be positive')
    return q_power_sums_shifted(t, Q, beta, v)[-1]


def shifted_boundary(Q, beta, k):
    """The degree-zero value (1 - (beta q^k)^-2)/(q - q^-1) used in the recursion."""
    return (ONE - (qq(beta) * qpow(k)) ** -2) / QDIFF


def _pmul(a, b):
    """Product of two polynomials in the p_lambda basis."""
    out = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            lam = Partition(sorted(la + lb, reverse=True))
            out[lam] = out.get(lam, ZERO) + ca * cb
    return {k: c for k, c in out.items() if c}


def _padd(a, b, c=ONE):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, ZERO) + c * v
    return {k: v for k, v in out.items() if v}


@functools.lru_cache(maxsize=None)
def _elem_in_p(t):
    # solve the q-Newton formula for e_t
    if t == 0:
        return {Partition(): ONE}
    rhs = {Partition((t,)): ONE}
    for z in range(1, t):
        sign = -1 if (t + z - 1) % 2 else 1
        rhs = _padd(rhs, _pmul({Partition((z,)): ONE}, _elem_in_p(t - z)), -sign)
    lead = (-1) ** (t - 1) * qpow(t) / qint(t)
    return {k: lead * v for k, v in rhs.items()}


def expand_elem_in_qpowersums(t, k):
    """Coefficients a_lambda with e_t = sum a_lambda p_lambda(q) in k variables."""
    if t < 1 or t > k:
        raise ValueError('need 1 <= t <= k')
    return dict(_elem_in_p(t))


def eval_p_expansion(coeffs, v):
    """Evaluate sum a_lambda p_lambda(q) at v."""
    if not coeffs:
        return ZERO
    tmax = max((max(lam) if lam else 0) for lam in coeffs)
    p = q_power_sums(max(tmax, 1), v)
    total = ZERO
    for lam, c in coeffs.items():
        term = c
        for part in lam:
            term = term * p[part - 1]
        total = total + term
    return total


def newton_diagonal(t):
    """Diagonal entry (-1)^(t-1) q^-t [t] of the triangular p/e change of basis."""
    return (-1) ** (t - 1) * qpow(-t) * qint(t)


def gen_series_P(v, T):
    """1 + (q - q^-1) sum_t p_t(q) omega^t through order T."""
    v = _values(v)
    if not v:
        return OmegaSeries(0, [ONE], T)
    p = q_power_sums(T, v) if T >= 1 else []
    return OmegaSeries(0, [ONE] + [QDIFF * x for x in p], T)


def gen_series_rational(v, T):
    """Expansion of prod(1 - q^-2 g omega)/prod(1 - g omega) through order T."""
    v = _values(v)
    return series_expand(poly_from_roots(v, qpow(-2)), poly_from_roots(v), T)


# -- identity suite ---------------------------------------------------------------

def _record(identity, params, ok):
    return {'identity': identity, 'params': params, 'pass': bool(ok)}


def check_ptq_split(t, v):
    """p_t(g_1..g_k) = p_t(g_1..g_{k-1}) + q^-1 g_k^t + q^-1(q-q^-1) sum p_z(..) g_k^(t-z)."""
    v = _values(v)
    lhs = q_power_sum_by_definition(t, v)
    head, x = v[:-1], v[-1]
    rest = q_power_sums(t, head) if head else [ZERO] * t
    rhs = rest[t - 1] + qpow(-1) * x ** t
    for z in range(1, t):
        rhs = rhs + qpow(-1) * QDIFF * rest[z - 1] * x ** (t - z)
    return lhs == rhs


def check_ptq_newton(t, v):
    """p_t = (-1)^(t-1) q^-t [t] e_t + sum_z (-1)^(t+z-1) p_z e_(t-z)."""
    p = q_power_sums(t, v)
    e = elem_syms(v, t)
    rhs = newton_diagonal(t) * e[t]
    for z in range(1, t):
        rhs = rhs + (-1) ** (t + z - 1) * p[z - 1] * e[t - z]
    return p[t - 1] == rhs


def check_ptq_reduction(t, v):
    """p_(k+t) = sum_(z<k) (-1)^(k+z-1) p_(t+z) e_(k-z)."""
    k = len(v)
    p = q_power_sums(k + t, v)
    e = elem_syms(v, k)
    rhs = ZERO
    for z in range(k):
        rhs = rhs + (-1) ** (k + z - 1) * p[t + z - 1] * e[k - z]
    return p[k + t - 1] == rhs


def check_ptQ_newton(t, Q, beta, v):
    """Shifted analogue of the q-Newton formula."""
    Q, beta = qq(Q), qq(beta)
    pQ = q_power_sums_shifted(t, Q, beta, v)
    e = elem_syms(v, t)
    bt = beta_tilde(beta)
    rhs = newton_diagonal(t) * e[t] + bt * Q ** -t
    for z in range(1, t):
        inner = pQ[z - 1] - qpow(-2 * (t - z)) * bt * Q ** -z
        rhs = rhs + (-1) ** (t - z + 1) * inner * e[t - z]
    return pQ[t - 1] == rhs


def check_ptQ_reduction(t, Q, beta, v):
    """Shifted degree-(k+t) reduction with the degree-zero boundary value."""
    Q, beta = qq(Q), qq(beta)
    k = len(v)
    pQ = [shifted_boundary(Q, beta, k)] + q_power_sums_shifted(k + t, Q, beta, v)
    e = elem_syms(v, k)
    qinv = Q.inverse()
    rhs = qinv * pQ[k + t - 1]
    for z in range(k):
        rhs = rhs + (-1) ** (k - z + 1) * (pQ[t + z] - qinv * pQ[t + z - 1]) * e[k - z]
    return pQ[k + t] == rhs


def random_instance(rng, k):
    """Random exact (Q, beta, gammas) with Q, beta nonzero."""
    Q = random_scalar(rng)
    beta = random_scalar(rng)
    gammas = [random_scalar(rng, nonzero=False) for _ in range(k)]
    return Q, beta, gammas


def identity_suite(k, tmax, seeds):
    """Check the split, Newton and reduction identities (plain and shifted).

    Returns a list of ``{identity, params, pass}`` records, one per
    identity, size and seed.  Failures are reported, never raised.
    """
    if k < 1 or tmax < 1:
        raise ValueError('need k >= 1 and tmax >= 1')
    if isinstance(seeds, int):
        seeds = range(seeds)
    report = []
    for seed in seeds:
        rng = random.Random(seed)
        Q, beta, v = random_instance(rng, k)
        params = {'k': k, 'seed': seed, 'Q': str(Q), 'beta': str(beta),
                  'gammas': [str(g) for g in v]}
        for t in range(1, tmax + 1):
            pt = dict(params, t=t)
            # the split identity is checked against the monomial definition,
            # which is expensive; keep it to small degrees
            if t <= 6:
                report.append(_record('ptq-split', pt, check_ptq_split(t, v)))
            report.append(_record('ptq-newton', pt, check_ptq_newton(t, v)))
            report.append(_record('ptq-reduction', pt, check_ptq_reduction(t, v)))
            report.append(_record('ptQ-newton', pt, check_ptQ_newton(t, Q, beta, v)))
            report.append(_record('ptQ-reduction', pt, check_ptQ_reduction(t, Q, beta, v)))
    return report
