"""Classification data for highest weights.

A node polynomial ``beta * prod(x - gamma_p)`` determines a highest weight
``(lambda, (u_t)_t)`` through the maps implemented here.  For Q = 0 only
leading coefficients +-1 are allowed; for Q != 0 several polynomials
share a highest weight and :func:`canonicalize` picks the representative
whose roots avoid ``beta**-2 / Q``.
"""

from collections import Counter

from .scalars import ONE, ZERO, QDIFF, OmegaSeries, poly_from_roots, qpow, qq, series_expand
from .symfun import Partition, beta_tilde, q_power_sums, q_power_sums_shifted


class NodePolynomial:
    """``beta * (x - r_1) ... (x - r_k)`` kept in factored form."""

    __slots__ = ('beta', 'roots')

    def __init__(self, beta=ONE, roots=()):
        self.beta = qq(beta)
        if self.beta.is_zero():
            raise ValueError('leading coefficient must be nonzero')
        self.roots = tuple(qq(r) for r in roots)

    @property
    def degree(self):
        return len(self.roots)

    def __eq__(self, other):
        if not isinstance(other, NodePolynomial):
            return NotImplemented
        return self.beta == other.beta and Counter(self.roots) == Counter(other.roots)

    def __hash__(self):
        return hash((self.beta, frozenset(Counter(self.roots).items())))

    def __mul__(self, other):
        return NodePolynomial(self.beta * other.beta, self.roots + other.roots)

    def coefficients(self):
        """Expanded coefficients in ascending powers of x."""
        c = [self.beta]
        for r in self.roots:
            nxt = [ZERO] + c
            for j in range(len(c)):
                nxt[j] = nxt[j] - r * c[j]
            c = nxt
        return c

    def flat(self):
        """Ascending coefficients of prod(1 - r*omega)."""
        return poly_from_roots(self.roots)

    def to_json(self):
        return {'beta': str(self.beta), 'roots': [str(r) for r in self.roots]}

    def __repr__(self):
        return f'NodePolynomial(beta={self.beta}, roots={[str(r) for r in self.roots]})'


class HighestWeightNode:
    """Eigenvalue ``lam`` of K^+ and ``u[t-1]`` of J_t, t = 1..T, on a highest weight vector."""

    __slots__ = ('lam', 'u', 'T')

    def __init__(self, lam, u):
        self.lam = qq(lam)
        if self.lam.is_zero():
            raise ValueError('lambda must be nonzero')
        self.u = tuple(qq(x) for x in u)
        self.T = len(self.u)

    def truncate(self, T):
        if T > self.T:
            raise ValueError(f'cannot extend truncation {self.T} to {T}')
        return HighestWeightNode(self.lam, self.u[:T])

    def __eq__(self, other):
        if not isinstance(other, HighestWeightNode):
            return NotImplemented
        return self.lam == other.lam and self.u == other.u

    def __hash__(self):
        return hash((self.lam, self.u))

    def j0(self):
        """Eigenvalue of J_0, forced by K^-K^- = 1 - (q - q^-1) J_0."""
        return (ONE - self.lam ** -2) / QDIFF

    def to_json(self):
        return {'lambda': str(self.lam), 'u': [str(x) for x in self.u], 'T': self.T}

    def __repr__(self):
        return f'HighestWeightNode(lam={self.lam}, u={[str(x) for x in self.u]})'


class HighestWeight:
    """One :class:`HighestWeightNode` per node 1..n-1."""

    __slots__ = ('nodes',)

    def __init__(self, nodes):
        nodes = tuple(nodes)
        if len({nd.T for nd in nodes}) > 1:
            raise ValueError('all nodes must share the same truncation')
        self.nodes = nodes

    @property
    def T(self):
        return self.nodes[0].T if self.nodes else 0

    def __eq__(self, other):
        if not isinstance(other, HighestWeight):
            return NotImplemented
        return self.nodes == other.nodes

    def __getitem__(self, i):
        """Node i, numbered from 1."""
        return self.nodes[i - 1]

    def __len__(self):
        return len(self.nodes)

    def to_json(self):
        return [dict(node=i + 1, **nd.to_json()) for i, nd in enumerate(self.nodes)]

    def __repr__(self):
        return f'HighestWeight({list(self.nodes)})'


class Multipartition(tuple):
    """An r-tuple of partitions."""

    def __new__(cls, components=()):
        return super().__new__(cls, tuple(Partition(c) for c in components))

    @property
    def size(self):
        return sum(p.size for p in self)

    def part(self, k, j):
        """lambda^(k)_j with 1-based k and j; zero past the end."""
        comp = self[k - 1]
        return comp[j - 1] if j <= len(comp) else 0


def default_truncation(phi):
    return 2 * phi.degree + 4


def _check_zero_case(phi):
    if phi.beta not in (ONE, -ONE):
        raise ValueError('for Q = 0 the leading coefficient must be 1 or -1')


def hw_from_poly(Q, phi, T=None):
    """The highest weight attached to phi for parameter Q."""
    Q = qq(Q)
    if T is None:
        T = default_truncation(phi)
    if T < 1:
        raise ValueError('truncation must be at least 1')
    k = phi.degree
    if Q.is_zero():
        _check_zero_case(phi)
        if k == 0:
            return HighestWeightNode(phi.beta, [ZERO] * T)
        return HighestWeightNode(phi.beta * qpow(k), q_power_sums(T, phi.roots))
    if k == 0:
        bt = beta_tilde(phi.beta)
        qinv = Q.inverse()
        u, x = [], ONE
        for _ in range(T):
            x = x * qinv
            u.append(bt * x)
        return HighestWeightNode(phi.beta, u)
    return HighestWeightNode(phi.beta * qpow(k), q_power_sums_shifted(T, Q, phi.beta, phi.roots))


def in_CxQ(Q, phi):
    """Whether phi is a canonical classification polynomial for Q."""
    Q = qq(Q)
    if Q.is_zero():
        return phi.beta in (ONE, -ONE)
    return forbidden_root(Q, phi.beta) not in phi.roots


def forbidden_root(Q, beta):
    return qq(beta) ** -2 * qq(Q).inverse()


def canonicalize(Q, phi):
    """The canonical polynomial with the same highest weight as phi."""
    Q = qq(Q)
    if Q.is_zero():
        _check_zero_case(phi)
        return phi
    beta, roots = phi.beta, list(phi.roots)
    while True:
        r = forbidden_root(Q, beta)
        if r not in roots:
            return NodePolynomial(beta, roots)
        roots.remove(r)
        beta = beta * qpow(1)


def equivalent(Q, phi, phi2):
    """Whether phi and phi2 give the same highest weight, by the factor criterion."""
    Q = qq(Q)
    if Q.is_zero():
        return phi == phi2
    if phi.degree < phi2.degree:
        phi, phi2 = phi2, phi
    d = phi.degree - phi2.degree
    if phi.beta != qpow(-d) * phi2.beta:
        return False
    base = forbidden_root(Q, phi.beta)
    extra = [qpow(-2 * z) * base for z in range(d)]
    return Counter(phi.roots) == Counter(phi2.roots + tuple(extra))


def equivalent_by_sequences(Q, phi, phi2, T=None):
    """Whether the truncated highest weights agree (the direct route)."""
    if T is None:
        T = max(phi.degree, phi2.degree) + 4
    return hw_from_poly(Q, phi, T) == hw_from_poly(Q, phi2, T)


def psi_series(Q, phi, T=8):
    """Eigen-series of Psi^+(omega) on a highest weight vector, through omega^T."""
    Q = qq(Q)
    if not in_CxQ(Q, phi):
        raise ValueError('polynomial is not canonical for this Q')
    k = phi.degree
    if Q.is_zero():
        ratio = series_expand(poly_from_roots(phi.roots, qpow(-2)), phi.flat(), T)
        return ratio.scale(phi.beta * qpow(k))
    ratio = series_expand(poly_from_roots(phi.roots, qpow(-2)), phi.flat(), T + 1)
    tail = OmegaSeries(-1, [-Q * phi.beta, phi.beta.inverse()], T + 1)
    return (ratio * tail).scale(qpow(k))


def psi_from_hw(Q, node):
    """Psi^+ coefficients from (lambda, u): the defining composites on the hw vector.

    Needs ``node.T >= 1``; the result is truncated at ``node.T`` for Q = 0
    and ``node.T - 1`` otherwise.
    """
    Q = qq(Q)
    lam, u = node.lam, node.u
    if Q.is_zero():
        return OmegaSeries(0, [lam] + [QDIFF * lam * x for x in u], node.T)
    T = node.T - 1
    coeffs = [-Q * lam, lam - QDIFF * Q * lam * u[0]]
    coeffs += [QDIFF * lam * (u[t - 1] - Q * u[t]) for t in range(1, T + 1)]
    return OmegaSeries(-1, coeffs, T)


def sharp(gammas):
    """(1 - g_1 x)...(1 - g_k x)  ->  (x - g_1)...(x - g_k)."""
    gammas = tuple(qq(g) for g in gammas)
    if any(g.is_zero() for g in gammas):
        raise ValueError('Drinfeld polynomial factors need nonzero parameters')
    return NodePolynomial(ONE, gammas)


def combine_hw(a, b):
    """Highest weight of the product rule: lambda multiplies, u convolves."""
    T = min(a.T, b.T)
    u = []
    for t in range(1, T + 1):
        acc = a.u[t - 1] + b.u[t - 1]
        for z in range(1, t):
            acc = acc + QDIFF * a.u[z - 1] * b.u[t - z - 1]
        u.append(acc)
    return HighestWeightNode(a.lam * b.lam, u)


def product_hw_check(phi, psi, T=None):
    """Whether u(phi*psi) equals the product rule applied to u(phi) and u(psi) (Q = 0)."""
    if T is None:
        T = default_truncation(phi * psi)
    direct = hw_from_poly(ZERO, phi * psi, T)
    return direct == combine_hw(hw_from_poly(ZERO, phi, T), hw_from_poly(ZERO, psi, T))


def node_position(nbar, i):
    """(j, k) with i = n_1 + ... + n_(k-1) + j and 1 <= j <= n_k."""
    offset = 0
    for k, nk in enumerate(nbar, start=1):
        if i <= offset + nk:
            return i - offset, k
        offset += nk
    raise ValueError(f'node {i} out of range for shape {tuple(nbar)}')


def weyl_hw(nbar, lam, Qhat, T=4):
    """Node polynomials and parameters of the Weyl-module highest weight.

    ``nbar`` is the shape (n_1, ..., n_r), ``lam`` a :class:`Multipartition`
    with r components and ``Qhat`` the parameters (Qhat_0, ..., Qhat_(r-1)).
    Returns a list of dicts ``{node, phi, Q, hw}`` for nodes 1..n-1.
    """
    nbar = tuple(int(x) for x in nbar)
    lam = Multipartition(lam)
    Qhat = [qq(x) for x in Qhat]
    r = len(nbar)
    if any(x <= 0 for x in nbar):
        raise ValueError('shape entries must be positive')
    if len(lam) != r or len(Qhat) != r:
        raise ValueError('multipartition and parameters must have one entry per block')
    for k in range(r):
        if len(lam[k]) > nbar[k]:
            raise ValueError(f'component {k + 1} longer than n_{k + 1}')
    for k in range(1, r):
        if Qhat[k].is_zero():
            raise ValueError('Qhat_k must be nonzero for k >= 1')
    n = sum(nbar)
    out = []
    for i in range(1, n):
        j, k = node_position(nbar, i)
        lj = lam.part(k, j)
        base = Qhat[k - 1]
        if j < nbar[k - 1]:
            c = lj - lam.part(k, j + 1)
            roots = [qpow(i - 2 * j + 2 * lj - 2 * p) * base for p in range(c)]
            phi, Qi = NodePolynomial(ONE, roots), ZERO
        else:
            nxt = lam.part(k + 1, 1)
            roots = [qpow(i - 2 * j + 2 * lj - 2 * p) * base for p in range(lj)]
            phi = NodePolynomial(qpow(-nxt), roots)
            Qi = qpow(-i) * Qhat[k].inverse()
        out.append({'node': i, 'phi': phi, 'Q': Qi, 'hw': hw_from_poly(Qi, phi, T)})
    return out


def node_json(i, Q, phi, T=None):
    """JSON record for one node: polynomial, highest weight and canonicity."""
    Q = qq(Q)
    hw = hw_from_poly(Q, phi, T)
    return {'node': i, 'Q': str(Q), 'phi': phi.to_json(), 'lambda': str(hw.lam),
            'u': [str(x) for x in hw.u], 'T': hw.T, 'canonical': in_CxQ(Q, phi)}
