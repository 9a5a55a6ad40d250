"""Rank-one commutation identities used by the finiteness arguments.

Each builder returns ``LHS - RHS`` as an AlgebraElement in the symbols of
node 1.  ``operator`` identities must act as the zero matrix; ``congruence``
identities only hold modulo the left ideal generated by the X+_t, so they
are checked on vectors killed by every X+_t.
"""

from .presentation import J, Km, Kp, ONE_ELEMENT, Xm, Xp, divided_power, j_bracket_0, j_shift
from .scalars import ZERO, qint, qpow, qq


def _xp(t):
    return Xp(1, t)


def _xm(t):
    return Xm(1, t)


def _J(t):
    return J(1, t)


def raise_lift(k, t=0):
    """X+_{t+1} X+_t^(k) = q^k/[2] (J_1 X+_t^(k+1) - X+_t^(k+1) J_1)."""
    d1 = divided_power(_xp(t), k + 1)
    lhs = _xp(t + 1) * divided_power(_xp(t), k)
    return lhs - (_J(1) * d1 - d1 * _J(1)).scale(qpow(k) / qint(2))


def lower_lift(k, t=0):
    """X-_t^(k) X-_{t+1} = -q^k/[2] (J_1 X-_t^(k+1) - X-_t^(k+1) J_1)."""
    d1 = divided_power(_xm(t), k + 1)
    lhs = divided_power(_xm(t), k) * _xm(t + 1)
    return lhs + (_J(1) * d1 - d1 * _J(1)).scale(qpow(k) / qint(2))


def raise1_lower0(k):
    """X+_1 X-_0^(k) commuted past, Q = 0."""
    q = qpow(1)
    lhs = _xp(1) * divided_power(_xm(0), k)
    rhs = (divided_power(_xm(0), k) * _xp(1)
           + (divided_power(_xm(0), k - 1) * Kp(1) * _J(1)).scale(q ** (1 - k))
           - (divided_power(_xm(0), k - 2) * _xm(1) * Kp(1)).scale(q ** (-2 * (k - 1))))
    return lhs - rhs


def raise1_power_lower0(k):
    """X+_1^(k) X-_0 commuted past, Q = 0."""
    q = qpow(1)
    lhs = divided_power(_xp(1), k) * _xm(0)
    rhs = (_xm(0) * divided_power(_xp(1), k)
           + (Kp(1) * _J(1) * divided_power(_xp(1), k - 1)).scale(q ** (1 - k))
           - (Kp(1) * _xp(2) * divided_power(_xp(1), k - 2)).scale(q ** (-2 * (k - 1))))
    return lhs - rhs


def raise1_lower0_split(k):
    """Expansion of X+_1^(k) X-_0^(k+1) one step down, Q = 0 (k >= 1)."""
    q = qpow(1)
    a = divided_power(_xp(1), k - 1)
    b = divided_power(_xm(0), k)
    lhs = divided_power(_xp(1), k) * divided_power(_xm(0), k + 1)
    rhs = ((_xm(0) * _xp(1) * a * b).scale(q ** -k / qint(k))
           + ((_J(1) * a * b - a * b * _J(1)) * Kp(1)).scale(q ** (-2 * k) / qint(2))
           - (a * divided_power(_xm(0), k + 1) * _xp(1)).scale(q ** (-k - 1)))
    return lhs - rhs


def raise1_lower0_congruence(k):
    """X+_1^(k) X-_0^(k+1) against its J_[t] expansion, modulo the X+ left ideal (Q = 0)."""
    q = qpow(1)
    lhs = divided_power(_xp(1), k) * divided_power(_xm(0), k + 1)
    rhs = ONE_ELEMENT.scale(ZERO)
    kp = Kp(1) ** k
    for z in range(k + 1):
        term = _xm(z) * kp * j_bracket_0(k - z)
        rhs = rhs + (term if z % 2 == 0 else -term)
    return lhs - rhs.scale(q ** (-k * (k + 1)))


def j_shift_lower(k, t, Q):
    """J_[k;t] = K-^2 J_[k-1;t-1] + q^-2k Q J_[k-1;t] for 1 <= t < k."""
    Q = qq(Q)
    rhs = Km(1) * Km(1) * j_shift(k - 1, t - 1, Q) + j_shift(k - 1, t, Q).scale(qpow(-2 * k) * Q)
    return j_shift(k, t, Q) - rhs


def j_shift_top(k, Q):
    """J_[k;k] written through J_[k-1;.]."""
    Q = qq(Q)
    q = qpow(1)
    head = _J(1).scale(Q) - _J(0).scale(q ** (2 * k)) + ONE_ELEMENT.scale(q ** k * qint(k))
    acc = head * j_shift(k - 1, k - 1, Q)
    for z in range(1, k):
        term = (_J(z) - _J(z + 1).scale(Q)) * j_shift(k - 1, k - z - 1, Q)
        acc = acc + (term if z % 2 else -term)
    return j_shift(k, k, Q) - acc.scale(q ** -k / qint(k))


def raise0_lower0(k, Q):
    """X+_0 X-_0^(k) commuted past."""
    Q = qq(Q)
    q = qpow(1)
    mid = _J(0).scale(q ** (k - 1)) - _J(1).scale(q ** (1 - k) * Q)
    lhs = _xp(0) * divided_power(_xm(0), k)
    rhs = (divided_power(_xm(0), k) * _xp(0)
           + divided_power(_xm(0), k - 1) * Kp(1) * mid
           - (_xm(0) - _xm(1).scale(q ** -2 * Q)) * divided_power(_xm(0), k - 2) * Kp(1))
    return lhs - rhs


def raise0_power_lower0(k, Q):
    """X+_0^(k) X-_0 commuted past."""
    Q = qq(Q)
    q = qpow(1)
    mid = _J(0).scale(q ** (k - 1)) - _J(1).scale(q ** (1 - k) * Q)
    lhs = divided_power(_xp(0), k) * _xm(0)
    rhs = (_xm(0) * divided_power(_xp(0), k)
           + Kp(1) * mid * divided_power(_xp(0), k - 1)
           - Kp(1) * divided_power(_xp(0), k - 2) * (_xp(0) - _xp(1).scale(q ** -2 * Q)))
    return lhs - rhs


def raise0_lower0_split(k, Q, left_j0=None):
    """Expansion of X+_0^(k) X-_0^(k+1) one step down (k >= 1).

    ``left_j0`` is the power of q multiplying J_0 in the left-hand factor;
    the default -3 is the value for which the identity holds.
    """
    Q = qq(Q)
    q = qpow(1)
    if left_j0 is None:
        left_j0 = -3
    a = divided_power(_xp(0), k - 1)
    b = divided_power(_xm(0), k)
    c2 = q ** (-2 * k) / qint(2) * Q
    lhs = divided_power(_xp(0), k) * divided_power(_xm(0), k + 1)
    left = _J(0).scale(q ** left_j0) - _J(1).scale(c2)
    right = _J(0).scale(q ** -1) - _J(1).scale(c2) - ONE_ELEMENT.scale(q ** -2)
    rhs = ((_xm(0) * _xp(0) * a * b).scale(q ** -k / qint(k))
           + left * a * b * Kp(1)
           - a * b * right * Kp(1)
           - (a * divided_power(_xm(0), k + 1) * _xp(0)).scale(q ** (-k - 1)))
    return lhs - rhs


def raise0_lower0_congruence(k, Q):
    """X+_0^(k) X-_0^(k+1) against its J_[k;t] expansion, modulo the X+ left ideal."""
    Q = qq(Q)
    lhs = divided_power(_xp(0), k) * divided_power(_xm(0), k + 1)
    rhs = ONE_ELEMENT.scale(ZERO)
    kp = Kp(1) ** k
    for z in range(k + 1):
        term = _xm(z) * kp * j_shift(k, k - z, Q)
        rhs = rhs + (term if (k - z) % 2 == 0 else -term)
    return lhs - rhs


def identity_catalog(Q, kmax):
    """``(name, params, kind, element)`` for every identity applicable at parameter Q."""
    Q = qq(Q)
    out = []
    for k in range(0, kmax + 1):
        for t in (0, 1):
            out.append(('raise-lift', (k, t), 'operator', raise_lift(k, t)))
            out.append(('lower-lift', (k, t), 'operator', lower_lift(k, t)))
    for k in range(1, kmax + 1):
        out.append(('raise0-lower0', (k,), 'operator', raise0_lower0(k, Q)))
        out.append(('raise0-power-lower0', (k,), 'operator', raise0_power_lower0(k, Q)))
        out.append(('raise0-lower0-split', (k,), 'operator', raise0_lower0_split(k, Q)))
    if Q.is_zero():
        for k in range(1, kmax + 1):
            out.append(('raise1-lower0', (k,), 'operator', raise1_lower0(k)))
            out.append(('raise1-power-lower0', (k,), 'operator', raise1_power_lower0(k)))
            out.append(('raise1-lower0-split', (k,), 'operator', raise1_lower0_split(k)))
            out.append(('raise1-lower0-congruence', (k,), 'congruence', raise1_lower0_congruence(k)))
    else:
        for k in range(1, kmax + 1):
            for t in range(1, k):
                out.append(('j-shift-lower', (k, t), 'operator', j_shift_lower(k, t, Q)))
            out.append(('j-shift-top', (k,), 'operator', j_shift_top(k, Q)))
            out.append(('raise0-lower0-congruence', (k,), 'congruence', raise0_lower0_congruence(k, Q)))
    return out
