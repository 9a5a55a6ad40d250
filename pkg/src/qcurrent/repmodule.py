"""Finite-dimensional modules over Q(q) and checks on them.

A :class:`Module` stores matrices only for the generating symbols
X+-_{i,0}, J_{i,1}, K+-_i.  Every other generator is derived on demand
from the level recursions, so the stored data cannot drift out of sync.
"""

from fractions import Fraction
from itertools import combinations

from . import presentation as pr
from .hwclass import HighestWeight, HighestWeightNode, NodePolynomial, hw_from_poly, in_CxQ
from .linalg import (Echelon, InconsistentSystem, SparseMatrix, commutator, nullspace, solve,
                     vec_add, vec_is_zero)
from .presentation import GenSymbol
from .scalars import ONE, ZERO, QDIFF, qint, qpow, qq


class LevelOverflow(ValueError):
    """A symbol's level exceeds the module truncation."""


class NoLoopSolution(ValueError):
    """The linear system for the loop action has no solution."""


class LoopSolutionNotUnique(ValueError):
    """The linear system for the loop action has a positive-dimensional solution space."""


def cartan_matrix(n1):
    return [[pr.cartan(i, j) for j in range(1, n1 + 1)] for i in range(1, n1 + 1)]


def simple_root(n1, i):
    return tuple(pr.cartan(j, i) for j in range(1, n1 + 1))


class Module:
    """A module given by generator matrices.

    ``weights[a]`` is the sl-weight of basis vector a (one integer per node).
    """

    def __init__(self, Q, weights, gens, T=4, labels=None, name=''):
        self.Q = [qq(x) for x in Q]
        self.n1 = len(self.Q)
        self.weights = [tuple(w) for w in weights]
        self.dim = len(self.weights)
        self.T = T
        self.labels = list(labels) if labels is not None else [str(a) for a in range(self.dim)]
        self.name = name
        self.gens = {}
        for g in pr.generating_set(self.n1):
            m = gens.get(g)
            if m is None:
                raise ValueError(f'missing generator matrix for {g}')
            if m.shape() != (self.dim, self.dim):
                raise ValueError(f'{g} has shape {m.shape()}, expected {self.dim}x{self.dim}')
            self.gens[g] = m
        self._cache = dict(self.gens)
        self._words = {}

    # -- derived actions ---------------------------------------------------------

    def matrix(self, sym):
        if sym.node > self.n1:
            raise ValueError(f'node {sym.node} out of range for rank {self.n1}')
        if sym.level is not None and sym.level > self.T:
            raise LevelOverflow(f'{sym} exceeds truncation T={self.T}')
        m = self._cache.get(sym)
        if m is None:
            m = self._derive(sym)
            self._cache[sym] = m
        return m

    def _derive(self, sym):
        i, t = sym.node, sym.level
        if sym.kind == 'J' and t == 0:
            km = self.matrix(GenSymbol('K-', i))
            return (SparseMatrix.identity(self.dim) - km @ km).scale(QDIFF.inverse())
        if sym.kind in ('X+', 'X-'):
            j1 = self.matrix(GenSymbol('J', i, 1))
            prev = self.matrix(GenSymbol(sym.kind, i, t - 1))
            c = qint(2).inverse()
            return commutator(j1, prev).scale(c if sym.kind == 'X+' else -c)
        # J_{i,t} for t >= 2
        km = self.matrix(GenSymbol('K-', i))
        xm0 = self.matrix(GenSymbol('X-', i, 0))
        Qi = self.Q[i - 1]
        if not Qi:
            return km @ commutator(self.matrix(GenSymbol('X+', i, t)), xm0)
        prev = self.matrix(GenSymbol('J', i, t - 1))
        br = km @ commutator(self.matrix(GenSymbol('X+', i, t - 1)), xm0)
        return (prev - br).scale(Qi.inverse())

    def word(self, w):
        m = self._words.get(w)
        if m is not None:
            return m
        if not w:
            m = SparseMatrix.identity(self.dim)
        elif len(w) == 1:
            m = self.matrix(w[0])
        else:
            m = self.matrix(w[0]) @ self.word(w[1:])
        self._words[w] = m
        return m

    def act(self, x):
        """Matrix of an AlgebraElement (or scalar)."""
        x = pr.as_element(x)
        out = SparseMatrix(self.dim, self.dim)
        for w, c in x.terms.items():
            out = out + self.word(w).scale(c)
        return out

    def apply(self, x, vec):
        """Apply an AlgebraElement to a sparse vector, word by word from the right."""
        x = pr.as_element(x)
        out = {}
        for w, c in x.terms.items():
            v = dict(vec)
            for s in reversed(w):
                v = self.matrix(s).apply(v)
                if not v:
                    break
            if v:
                out = vec_add(out, v, c)
        return out

    # -- structure --------------------------------------------------------------

    def weight_spaces(self):
        out = {}
        for a, w in enumerate(self.weights):
            out.setdefault(w, []).append(a)
        return out

    def check_weights(self, T=None):
        """Raise unless X shift weights by +-alpha_i and J, K preserve them (levels <= T)."""
        T = self.T if T is None else T
        for i in range(1, self.n1 + 1):
            alpha = simple_root(self.n1, i)
            syms = [(GenSymbol('K+', i), 0), (GenSymbol('K-', i), 0)]
            for t in range(T + 1):
                syms += [(GenSymbol('X+', i, t), 1), (GenSymbol('X-', i, t), -1), (GenSymbol('J', i, t), 0)]
            for sym, sign in syms:
                m = self.matrix(sym)
                for r, row in m.rows.items():
                    for c in row:
                        want = tuple(a + sign * b for a, b in zip(self.weights[c], alpha))
                        if self.weights[r] != want:
                            raise ValueError(f'{sym} breaks the weight grading at ({r}, {c})')
        return True

    def restricted_to(self, sym):
        return self.matrix(sym)

    def __repr__(self):
        return f'Module({self.name or "anonymous"}, n1={self.n1}, dim={self.dim}, T={self.T})'


# -- constructors -----------------------------------------------------------------

def one_dim_module(Q, beta, T=4):
    """The one-dimensional module: X = 0, K+-_i = beta_i^{+-1}, J_{i,1} per node parameter."""
    Q = [qq(x) for x in Q]
    beta = [qq(b) for b in beta]
    if len(Q) != len(beta):
        raise ValueError('Q and beta must have the same length')
    gens = {}
    for i, (Qi, b) in enumerate(zip(Q, beta), start=1):
        if b.is_zero():
            raise ValueError(f'beta_{i} must be nonzero')
        if Qi.is_zero() and b not in (ONE, -ONE):
            raise ValueError(f'beta_{i} must be 1 or -1 when Q_{i} = 0')
        j1 = ZERO if Qi.is_zero() else (ONE - b ** -2) / QDIFF / Qi
        gens[GenSymbol('X+', i, 0)] = SparseMatrix(1, 1)
        gens[GenSymbol('X-', i, 0)] = SparseMatrix(1, 1)
        gens[GenSymbol('J', i, 1)] = SparseMatrix.diagonal([j1])
        gens[GenSymbol('K+', i)] = SparseMatrix.diagonal([b])
        gens[GenSymbol('K-', i)] = SparseMatrix.diagonal([b.inverse()])
    return Module(Q, [(0,) * len(Q)], gens, T, labels=['v'], name='one-dim')


def _sl2_pieces():
    e = SparseMatrix(2, 2, {0: {1: ONE}})
    f = SparseMatrix(2, 2, {1: {0: ONE}})
    kp = SparseMatrix.diagonal([qpow(1), qpow(-1)])
    km = SparseMatrix.diagonal([qpow(-1), qpow(1)])
    return e, f, kp, km


def sl2_eval_explicit(gamma, kind, t):
    """Matrix of a generator on the two-dimensional evaluation module, straight from the
    evaluation formulas (used as an oracle for the derived matrices)."""
    gamma = qq(gamma)
    e, f, kp, km = _sl2_pieces()
    g = ONE if t == 0 else gamma ** t
    kpt = SparseMatrix.identity(2)
    for _ in range(t):
        kpt = kpt @ kp
    if kind == 'X+':
        return (kpt @ e).scale(g * qpow(-t))
    if kind == 'X-':
        return (f @ kpt).scale(g * qpow(-t))
    if kind == 'J':
        j0 = (SparseMatrix.identity(2) - km @ km).scale(QDIFF.inverse())
        first = (kpt @ j0).scale(g * qpow(-t))
        if t == 0:
            return first
        kpt1 = SparseMatrix.identity(2)
        for _ in range(t - 1):
            kpt1 = kpt1 @ kp
        return first - (kpt1 @ f @ e).scale(g * (qpow(t) - qpow(-t)))
    raise ValueError(f'unknown kind {kind!r}')


def sl2_eval_module(gamma, T=4):
    """Two-dimensional evaluation module at gamma (rank 1, Q = 0); gamma = 0 allowed."""
    gamma = qq(gamma)
    e, f, kp, km = _sl2_pieces()
    gens = {
        GenSymbol('X+', 1, 0): e,
        GenSymbol('X-', 1, 0): f,
        GenSymbol('J', 1, 1): sl2_eval_explicit(gamma, 'J', 1),
        GenSymbol('K+', 1): kp,
        GenSymbol('K-', 1): km,
    }
    return Module([ZERO], [(1,), (-1,)], gens, T, labels=['v0', 'v1'], name=f'V1({gamma})')


class GlnFundamental:
    """Quantum exterior power V(w_i) of the natural gl_n module.

    Holds the finite-type matrices E_j, F_j (j < n), T_j (j <= n), the affine
    Chevalley matrices e_0, f_0, k_0 at the evaluation point, and ``module``,
    the loop-algebra action obtained by :func:`solve_loop_action`.
    """

    def __init__(self, n, i, gamma=ZERO, T=4, solve_loop=True):
        if n < 2 or not 1 <= i <= n - 1:
            raise ValueError(f'need 1 <= i <= n-1, got n={n}, i={i}')
        self.n, self.i, self.gamma = n, i, qq(gamma)
        self.basis = [frozenset(c) for c in combinations(range(1, n + 1), i)]
        index = {s: a for a, s in enumerate(self.basis)}
        d = len(self.basis)
        self.dim = d
        self.E, self.F = {}, {}
        for j in range(1, n):
            er, fr = {}, {}
            for a, s in enumerate(self.basis):
                if j + 1 in s and j not in s:
                    er.setdefault(index[(s - {j + 1}) | {j}], {})[a] = ONE
                if j in s and j + 1 not in s:
                    fr.setdefault(index[(s - {j}) | {j + 1}], {})[a] = ONE
            self.E[j] = SparseMatrix(d, d, er)
            self.F[j] = SparseMatrix(d, d, fr)
        self.Tp = {j: SparseMatrix.diagonal([qpow(1 if j in s else 0) for s in self.basis])
                   for j in range(1, n + 1)}
        self.Tm = {j: SparseMatrix.diagonal([qpow(-1 if j in s else 0) for s in self.basis])
                   for j in range(1, n + 1)}
        self.weights = [tuple((1 if j in s else 0) - (1 if j + 1 in s else 0) for j in range(1, n))
                        for s in self.basis]
        self.labels = ['{' + ','.join(map(str, sorted(s))) + '}' for s in self.basis]
        self.hw_index = index[frozenset(range(1, i + 1))]
        self.k0 = self.Tm[1] @ self.Tp[n]
        self.e0, self.f0 = self._affine()
        self.module = solve_loop_action(n, i, self.gamma, T, _data=self) if solve_loop else None

    def K(self, j, sign=1):
        if sign > 0:
            return self.Tp[j] @ self.Tm[j + 1]
        return self.Tm[j] @ self.Tp[j + 1]

    def _affine(self):
        n = self.n
        qinv = qpow(-1)
        nest_f = self.F[1]
        nest_e = self.E[1]
        for j in range(2, n):
            nest_f = commutator(self.F[j], nest_f, qinv)
            nest_e = commutator(self.E[j], nest_e, qinv)
        e0 = (self.Tp[1] @ self.Tp[n] @ nest_f).scale(self.gamma * qpow(-1))
        if self.gamma.is_zero():
            return e0, None
        sign = ONE if n % 2 == 0 else -ONE
        f0 = (self.Tm[1] @ self.Tm[n] @ nest_e).scale(sign * self.gamma.inverse() * qpow(n - 1))
        return e0, f0

    def central_element(self):
        """k_0 k_1 ... k_{n-1}; acts as the identity."""
        c = self.k0
        for j in range(1, self.n):
            c = c @ self.K(j)
        return c


def gln_fundamental(n, i, gamma=ZERO, T=4):
    return GlnFundamental(n, i, gamma, T)


class _Lin:
    """Matrix whose entries are affine-linear in unknowns: ``{(r, c): {var | None: coeff}}``."""

    def __init__(self, d, entries=None):
        self.d = d
        self.entries = entries or {}

    @classmethod
    def known(cls, m):
        return cls(m.nrows, {(r, c): {None: v} for r, row in m.rows.items() for c, v in row.items()})

    def __add__(self, other):
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, lin in other.entries.items():
            tgt = out.setdefault(k, {})
            for var, c in lin.items():
                s = tgt.get(var, ZERO) + c
                if s:
                    tgt[var] = s
                else:
                    tgt.pop(var, None)
        return _Lin(self.d, out)

    def scale(self, c):
        c = qq(c)
        return _Lin(self.d, {k: {var: c * x for var, x in lin.items()} for k, lin in self.entries.items()})

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def lmul(self, m):
        """m @ self for a known matrix m."""
        out = {}
        for r, row in m.rows.items():
            for k, a in row.items():
                for (kk, c), lin in self.entries.items():
                    if kk != k:
                        continue
                    tgt = out.setdefault((r, c), {})
                    for var, x in lin.items():
                        tgt[var] = tgt.get(var, ZERO) + a * x
        return _Lin(self.d, out)

    def rmul(self, m):
        """self @ m for a known matrix m."""
        out = {}
        for (r, k), lin in self.entries.items():
            row = m.rows.get(k)
            if not row:
                continue
            for c, b in row.items():
                tgt = out.setdefault((r, c), {})
                for var, x in lin.items():
                    tgt[var] = tgt.get(var, ZERO) + x * b
        return _Lin(self.d, out)

    def equations(self):
        """Rows ``({var: coeff}, rhs)`` for self == 0."""
        out = []
        for lin in self.entries.values():
            row = {var: c for var, c in lin.items() if var is not None and c}
            rhs = -lin.get(None, ZERO)
            if row or rhs:
                out.append((row, rhs))
        return out


def solve_loop_action(n, i, gamma, T=4, verify=True, _data=None):
    """Extend the finite-type action on V(w_i) to the Q = 0 current algebra.

    Unknowns are weight-homogeneous matrices for J_{j,1} and X+-_{j,1}.
    The constraints are the relation instances linear in them together with
    the highest-weight eigenvalue conditions at gamma.
    """
    gamma = qq(gamma)
    data = _data if _data is not None else GlnFundamental(n, i, gamma, T, solve_loop=False)
    n1 = n - 1
    d = data.dim
    weights = data.weights
    q = qpow(1)

    # unknown layout
    var = 0
    unknown = {}

    def new_unknown(kind, j, shift):
        nonlocal var
        alpha = simple_root(n1, j)
        entries = {}
        for r in range(d):
            for c in range(d):
                want = tuple(a + shift * b for a, b in zip(weights[c], alpha))
                if weights[r] == want:
                    entries[(r, c)] = {var: ONE}
                    var += 1
        unknown[(kind, j)] = _Lin(d, entries)

    for j in range(1, n):
        new_unknown('J', j, 0)
        new_unknown('X+', j, 1)
        new_unknown('X-', j, -1)
    nvars = var

    Kp = {j: data.K(j, 1) for j in range(1, n)}
    Km = {j: data.K(j, -1) for j in range(1, n)}
    J0 = {j: (SparseMatrix.identity(d) - Km[j] @ Km[j]).scale(QDIFF.inverse()) for j in range(1, n)}
    X0 = {('X+', j): data.E[j] for j in range(1, n)}
    X0.update({('X-', j): data.F[j] for j in range(1, n)})

    def comm_known(lin, m, v=ONE):
        """lin @ m - v * m @ lin."""
        return lin.rmul(m) - lin.lmul(m).scale(v)

    eqs = []
    for j in range(1, n):
        for l in range(1, n):
            a = pr.cartan(j, l)
            J1 = unknown[('J', j)]
            for sign, ab in (('+', a), ('-', -a)):
                kind = 'X' + sign
                x0 = X0[(kind, l)]
                x1 = unknown[(kind, l)]
                # [J_{j,1}, X_{l,0}] = q^a J_{j,0} X_{l,1} - q^-a X_{l,1} J_{j,0}
                expr = comm_known(J1, x0) - x1.lmul(J0[j]).scale(q ** ab) + x1.rmul(J0[j]).scale(q ** -ab)
                eqs += expr.equations()
                # X_{j,1} X_{l,0} - q^a X_{l,0} X_{j,1} = q^a X_{j,0} X_{l,1} - X_{l,1} X_{j,0}
                xj1 = unknown[(kind, j)]
                xj0 = X0[(kind, j)]
                expr = (xj1.rmul(x0) - xj1.lmul(x0).scale(q ** ab)
                        - x1.lmul(xj0).scale(q ** ab) + x1.rmul(xj0))
                eqs += expr.equations()
                if abs(j - l) > 1:
                    eqs += comm_known(xj1, x0).equations()
            # Q6 at total level one
            xp1 = unknown[('X+', j)]
            xm1 = unknown[('X-', l)]
            expr = xp1.rmul(data.F[l]) - xp1.lmul(data.F[l])
            expr2 = xm1.lmul(data.E[j]) - xm1.rmul(data.E[j])
            if j == l:
                expr = expr - J1.lmul(Kp[j])
                expr2 = expr2 - J1.lmul(Kp[j])
            eqs += expr.equations() + expr2.equations()
            # [J_{j,1}, J_{l,0}] = 0
            eqs += comm_known(J1, J0[l]).equations()

    # highest-weight conditions
    v0 = data.hw_index
    shift = gamma * q ** (2 - i)
    for j in range(1, n):
        target = (q ** -1 * shift) if j == i else ZERO
        J1 = unknown[('J', j)]
        for (r, c), lin in J1.entries.items():
            if c == v0:
                want = target if r == v0 else ZERO
                row = {x: y for x, y in lin.items() if x is not None}
                eqs.append((row, want))
    xm1 = unknown[('X-', i)]
    fv0 = data.F[i].column(v0)
    for (r, c), lin in xm1.entries.items():
        if c == v0:
            row = {x: y for x, y in lin.items() if x is not None}
            eqs.append((row, shift * fv0.get(r, ZERO)))

    try:
        sol, kernel = solve([e[0] for e in eqs], [e[1] for e in eqs], nvars)
    except InconsistentSystem:
        raise NoLoopSolution(f'no loop action on V(w_{i}) for n={n}, gamma={gamma}') from None
    if kernel:
        raise LoopSolutionNotUnique(
            f'loop action on V(w_{i}) for n={n} has a {len(kernel)}-dimensional solution family')

    def realize(kind, j):
        lin = unknown[(kind, j)]
        rows = {}
        for (r, c), lv in lin.entries.items():
            (x,) = [k for k in lv if k is not None]
            v = sol.get(x, ZERO)
            if v:
                rows.setdefault(r, {})[c] = v
        return SparseMatrix(d, d, rows)

    gens = {}
    for j in range(1, n):
        gens[GenSymbol('X+', j, 0)] = data.E[j]
        gens[GenSymbol('X-', j, 0)] = data.F[j]
        gens[GenSymbol('J', j, 1)] = realize('J', j)
        gens[GenSymbol('K+', j)] = Kp[j]
        gens[GenSymbol('K-', j)] = Km[j]
    M = Module([ZERO] * n1, weights, gens, T, labels=data.labels, name=f'V(w{i};{gamma})')
    for j in range(1, n):
        for kind in ('X+', 'X-'):
            if M.matrix(GenSymbol(kind, j, 1)) != realize(kind, j):
                raise NoLoopSolution(f'solved {kind}_{j},1 disagrees with the derived matrix')
    if verify:
        rep = verify_relations(M)
        bad = {k: v for k, v in rep.items() if v['failures']}
        if bad:
            raise NoLoopSolution(f'solved loop action violates relations: {bad}')
    M.hw_index = v0
    return M


# -- tensor products ----------------------------------------------------------------

def tensor(M, N):
    """M (x) N through the coproduct; N must have Q = 0.

    When M carries nonzero parameters the right coproduct is used, with
    its left leg read in M's algebra.  Basis index of a (x) b is a*dim(N) + b.
    """
    if M.n1 != N.n1:
        raise ValueError(f'rank mismatch: {M.n1} vs {N.n1}')
    if any(N.Q):
        raise ValueError('the right tensor factor must have Q = 0')
    gens = {}
    for g in pr.generating_set(M.n1):
        te = pr.delta_r_display(M.Q, g)
        m = SparseMatrix(M.dim * N.dim, M.dim * N.dim)
        for (a, b), c in te.terms.items():
            m = m + M.word(a).kron(N.word(b)).scale(c)
        gens[g] = m
    weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in M.weights for wb in N.weights]
    labels = [f'{la}*{lb}' for la in M.labels for lb in N.labels]
    return Module(M.Q, weights, gens, min(M.T, N.T), labels=labels, name=f'({M.name})x({N.name})')


def tensor_all(modules):
    """Left-nested tensor product ((M1 (x) M2) (x) M3) ..."""
    out = modules[0]
    for m in modules[1:]:
        out = tensor(out, m)
    return out


# -- submodules and quotients ---------------------------------------------------------

def _basis_vector(a):
    return {a: ONE}


class _WeightBasis:
    """Per-weight basis with coordinate extraction via tagged elimination."""

    def __init__(self, dim):
        self.dim = dim
        self.vectors = []          # global list
        self.weight_of = []
        self._ech = {}             # weight -> Echelon
        self._local = {}           # weight -> list of global indices

    def add(self, wt, v):
        e = self._ech.setdefault(wt, Echelon())
        loc = self._local.setdefault(wt, [])
        tagged = dict(v)
        tagged[self.dim + len(loc)] = ONE
        red = e.reduce(tagged)
        if not any(k < self.dim for k in red):
            return None
        e.add(tagged)
        loc.append(len(self.vectors))
        self.vectors.append(v)
        self.weight_of.append(wt)
        return len(self.vectors) - 1

    def coords(self, wt, v):
        """Global-index coordinates of v (which must lie in the span)."""
        e = self._ech.get(wt)
        if e is None:
            if vec_is_zero(v):
                return {}
            raise ValueError('vector not in span')
        red = e.reduce(dict(v))
        if any(k < self.dim for k in red):
            raise ValueError('vector not in span')
        loc = self._local[wt]
        return {loc[k - self.dim]: -c for k, c in red.items()}


def _split_by_weight(M, v):
    out = {}
    for a, c in v.items():
        out.setdefault(M.weights[a], {})[a] = c
    return out


def cyclic_submodule(M, v):
    """The submodule generated by v, with matrices in a basis of vectors x.v.

    The result records ``basis`` (vectors in M) and, when v is a weight
    vector, ``words`` with ``basis[k] = words[k] . v``.
    """
    if isinstance(v, int):
        v = _basis_vector(v)
    v = {a: qq(c) for a, c in v.items() if qq(c)}
    if not v:
        raise ValueError('generating vector must be nonzero')
    parts = _split_by_weight(M, v)
    homogeneous = len(parts) == 1
    wb = _WeightBasis(M.dim)
    words = []
    queue = []
    gens = pr.generating_set(M.n1)
    if homogeneous:
        (wt, vec), = parts.items()
        wb.add(wt, vec)
        words.append(())
        queue.append(0)
    else:
        # the submodule is graded by the K eigenvalues, so weight components lie in it;
        # they are reached by the closure below starting from v itself
        seeds = [v]
        closure = _closure_ungraded(M, seeds, gens)
        for vec in closure:
            for wt, part in _split_by_weight(M, vec).items():
                k = wb.add(wt, part)
                if k is not None:
                    words.append(None)
                    queue.append(k)
    while queue:
        k = queue.pop(0)
        vec = wb.vectors[k]
        for g in gens:
            img = M.matrix(g).apply(vec)
            if not img:
                continue
            for wt, part in _split_by_weight(M, img).items():
                idx = wb.add(wt, part)
                if idx is not None:
                    w = words[k]
                    words.append(None if w is None else (g,) + w)
                    queue.append(idx)
    return _restrict(M, wb, words)


def _closure_ungraded(M, seeds, gens):
    e = Echelon()
    out = []
    queue = list(seeds)
    while queue:
        v = queue.pop(0)
        if not e.add(dict(v)):
            continue
        out.append(v)
        for g in gens:
            img = M.matrix(g).apply(v)
            if img:
                queue.append(img)
    return out


def _restrict(M, wb, words):
    d = len(wb.vectors)
    gens = {}
    for g in pr.generating_set(M.n1):
        rows = {}
        for k, vec in enumerate(wb.vectors):
            img = M.matrix(g).apply(vec)
            for wt, part in _split_by_weight(M, img).items():
                for r, c in wb.coords(wt, part).items():
                    rows.setdefault(r, {})[k] = c
        gens[g] = SparseMatrix(d, d, rows)
    sub = Module(M.Q, wb.weight_of, gens, M.T, labels=[f'b{k}' for k in range(d)], name=f'sub({M.name})')
    sub.basis = wb.vectors
    sub.words = words if all(w is not None for w in words) else None
    sub.hw_index = 0
    return sub


def _dagger_word(w):
    return tuple(GenSymbol(pr._DAGGER_KIND[s.kind], s.node, s.level) for s in reversed(w))


def gram_matrices(M):
    """Contravariant form of a cyclic module from :func:`cyclic_submodule`, per weight."""
    words = getattr(M, 'words', None)
    if words is None:
        raise ValueError('module is not presented as cyclic over a weight vector')
    top = M.weights[0]
    if len(M.weight_spaces()[top]) != 1:
        raise ValueError('top weight space of a cyclic highest-weight module must be one-dimensional')
    out = {}
    for wt, idx in M.weight_spaces().items():
        G = []
        for k in idx:
            dw = _dagger_word(words[k])
            row = []
            for l in idx:
                row.append(M.apply(pr.AlgebraElement._raw({dw: ONE}), _basis_vector(l)).get(0, ZERO))
            G.append(row)
        out[wt] = (idx, G)
    return out


def simple_top(M):
    """Quotient of a cyclic highest-weight module by the radical of its contravariant form."""
    if getattr(M, 'words', None) is None:
        hw = getattr(M, 'hw_index', 0)
        sub = cyclic_submodule(M, hw)
        if sub.dim != M.dim:
            raise ValueError('module is not cyclic over its highest-weight vector')
        M = sub
    grams = gram_matrices(M)
    # per weight: independent functionals (rows of G) and a section (columns of M)
    func, section = {}, {}
    for wt, (idx, G) in grams.items():
        e = Echelon()
        rows = []
        for k, row in enumerate(G):
            r = {idx[l]: v for l, v in enumerate(row) if v}
            if e.add(dict(r)):
                rows.append(r)
        func[wt] = rows
        # choose columns making the square block invertible
        ce = Echelon()
        cols = []
        for a in idx:
            col = {p: r.get(a, ZERO) for p, r in enumerate(rows)}
            col = {p: v for p, v in col.items() if v}
            if col and ce.add(col):
                cols.append(a)
        section[wt] = cols
    order = []
    for wt in grams:
        for a in section[wt]:
            order.append((wt, a))
    pos = {key: k for k, key in enumerate(order)}
    d = len(order)
    gens = {}
    for g in pr.generating_set(M.n1):
        m = M.matrix(g)
        rows = {}
        for k, (wt, a) in enumerate(order):
            img = m.column(a)
            if not img:
                continue
            wt2 = M.weights[next(iter(img))]
            fr = func[wt2]
            cols = section[wt2]
            rhs = [sum((r.get(x, ZERO) * y for x, y in img.items()), ZERO) for r in fr]
            A = [{c: r.get(cols[c], ZERO) for c in range(len(cols))} for r in fr]
            x, _ = solve(A, rhs, len(cols))
            for c, val in x.items():
                rows.setdefault(pos[(wt2, cols[c])], {})[k] = val
        gens[g] = SparseMatrix(d, d, rows)
    top = Module(M.Q, [wt for wt, _ in order], gens, M.T, labels=[M.labels[a] for _, a in order],
                 name=f'top({M.name})')
    top.hw_index = 0
    top.gram = grams
    return top


# -- highest weights -------------------------------------------------------------------

class HWReport:
    def __init__(self, hw_index, hw, simple, dim, multiplicities, vector=None):
        self.hw_index = hw_index
        self.hw = hw
        self.simple = simple
        self.dim = dim
        self.multiplicities = multiplicities
        self.vector = vector

    def to_json(self):
        return {'hw_index': self.hw_index, 'hw': self.hw.to_json(), 'simple': self.simple,
                'dim': self.dim,
                'multiplicities': [{'weight': list(w), 'mult': m} for w, m in self.multiplicities]}

    def __repr__(self):
        return f'HWReport(dim={self.dim}, simple={self.simple}, hw={self.hw})'


def singular_vectors(M, T=None):
    """Basis of the joint kernel of all X+_{i,t}, t <= T, grouped by weight."""
    T = M.T if T is None else T
    out = {}
    for wt, idx in M.weight_spaces().items():
        rows = []
        for i in range(1, M.n1 + 1):
            for t in range(T + 1):
                m = M.matrix(GenSymbol('X+', i, t)).restrict(range(M.dim), idx)
                rows += [r for r in m.rows.values()]
        ker = nullspace(rows, len(idx))
        if ker:
            out[wt] = [{idx[k]: v for k, v in vec.items()} for vec in ker]
    return out


def _root_difference(n1, hi, lo):
    """Coefficients c with hi - lo = sum c_i alpha_i, via the inverse Cartan matrix."""
    A = cartan_matrix(n1)
    diff = [Fraction(a - b) for a, b in zip(hi, lo)]
    # Gaussian elimination over Q
    m = [[Fraction(x) for x in row] + [diff[r]] for r, row in enumerate(A)]
    for c in range(n1):
        p = next(r for r in range(c, n1) if m[r][c])
        m[c], m[p] = m[p], m[c]
        for r in range(n1):
            if r != c and m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n1] / m[r][r] for r in range(n1)]


def _dominates(n1, hi, lo):
    c = _root_difference(n1, hi, lo)
    return all(x >= 0 and x.denominator == 1 for x in c) and any(c)


def hw_of(M, T=None, check_simple=False):
    """Read the highest weight off the unique top singular vector."""
    T = M.T if T is None else T
    sing = singular_vectors(M, T)
    if not sing:
        raise ValueError('no vector is killed by all X+')
    tops = [wt for wt in sing if not any(_dominates(M.n1, o, wt) for o in sing if o != wt)]
    if len(tops) != 1 or len(sing[tops[0]]) != 1:
        raise ValueError('highest-weight vector is not unique')
    v = sing[tops[0]][0]
    nodes = []
    for i in range(1, M.n1 + 1):
        lam = _eigenvalue(M.matrix(GenSymbol('K+', i)), v)
        u = [_eigenvalue(M.matrix(GenSymbol('J', i, t)), v) for t in range(1, T + 1)]
        nodes.append(HighestWeightNode(lam, u))
    simple = None
    if check_simple:
        try:
            simple = simple_top(cyclic_submodule(M, v)).dim == M.dim
        except ValueError:
            simple = False
    mult = sorted(((w, len(ix)) for w, ix in M.weight_spaces().items()), reverse=True)
    hw_index = min(v) if len(v) == 1 else None
    return HWReport(hw_index, HighestWeight(nodes), simple, M.dim, mult, v)


def _eigenvalue(m, v):
    img = m.apply(v)
    a = next(iter(v))
    lam = img.get(a, ZERO) / v[a]
    if not vec_is_zero(vec_add(img, v, -lam)):
        raise ValueError('vector is not an eigenvector')
    return lam


# -- verification -----------------------------------------------------------------------

def verify_relations(M, T=None, families=pr.RELATION_IDS, details=False):
    """Evaluate every relation instance with levels <= T; report per family."""
    T = M.T if T is None else T
    report = {rid: {'instances': 0, 'failures': 0} for rid in families}
    for rid, params in pr.relation_instances(M.n1, T, families):
        el = pr.relation_instance(rid, params, M.Q)
        ok = M.act(el).is_zero()
        r = report.setdefault(rid, {'instances': 0, 'failures': 0})
        r['instances'] += 1
        if not ok:
            r['failures'] += 1
            if details:
                r.setdefault('failing', []).append(list(params))
    return report


def relations_ok(report):
    return all(v['failures'] == 0 for v in report.values())


def verify_dagger_relations(M, T=None):
    """The images of relation instances under the anti-involution also vanish."""
    T = M.T if T is None else T
    fails = 0
    count = 0
    for rid, params in pr.relation_instances(M.n1, T):
        count += 1
        if not M.act(pr.dagger(pr.relation_instance(rid, params, M.Q))).is_zero():
            fails += 1
    return {'instances': count, 'failures': fails}


def verify_appendix_identities(M, kmax=3):
    """Check the rank-one commutation identities on M."""
    from .identities import identity_catalog
    if M.n1 != 1:
        raise ValueError('these identities are rank-one statements')
    Q = M.Q[0]
    killed = singular_vectors(M, M.T)
    vectors = [v for vs in killed.values() for v in vs]
    report = []
    for name, params, kind, el in identity_catalog(Q, kmax):
        if el.max_level() > M.T:
            report.append({'identity': name, 'params': list(params), 'kind': kind, 'pass': None,
                           'skipped': 'level exceeds truncation'})
            continue
        if kind == 'operator':
            ok = M.act(el).is_zero()
        else:
            ok = all(not M.apply(el, v) for v in vectors)
        report.append({'identity': name, 'params': list(params), 'kind': kind, 'pass': ok})
    return report


# -- classification round trip ------------------------------------------------------------

def _rank1_factors(Q, phi, T):
    D = one_dim_module([Q], [phi.beta], T)
    return [D] + [sl2_eval_module(g, T) for g in phi.roots]


def classify_roundtrip(Q, phis, T=4):
    """Build the module attached to node polynomials and compare its highest weight."""
    Q = [qq(x) for x in Q]
    phis = list(phis)
    if len(Q) != len(phis):
        raise ValueError('need one polynomial per node')
    for Qi, phi in zip(Q, phis):
        if not Qi and phi.beta not in (ONE, -ONE):
            raise ValueError('for Q_i = 0 the leading coefficient must be 1 or -1')
        if Qi and not in_CxQ(Qi, phi):
            raise ValueError('polynomial is not in canonical form for its parameter')
    expected = HighestWeight([hw_from_poly(Qi, phi, T) for Qi, phi in zip(Q, phis)])
    if len(Q) == 1:
        factors = _rank1_factors(Q[0], phis[0], T)
    else:
        n = len(Q) + 1
        factors = [one_dim_module(Q, [phi.beta for phi in phis], T)]
        for i, phi in enumerate(phis, start=1):
            for g in phi.roots:
                factors.append(solve_loop_action(n, i, qpow(i - 2) * g, T, verify=False))
    big = tensor_all(factors)
    gen_vec = _generator_vector(factors)
    sub = cyclic_submodule(big, gen_vec)
    observed = []
    for i in range(1, len(Q) + 1):
        for t in range(T + 1):
            if big.matrix(GenSymbol('X+', i, t)).apply(gen_vec):
                raise ValueError('generator vector is not killed by X+')
        lam = _eigenvalue(big.matrix(GenSymbol('K+', i)), gen_vec)
        u = [_eigenvalue(big.matrix(GenSymbol('J', i, t)), gen_vec) for t in range(1, T + 1)]
        observed.append(HighestWeightNode(lam, u))
    observed = HighestWeight(observed)
    out = {'Q': [str(x) for x in Q], 'phi': [p.to_json() for p in phis], 'T': T,
           'tensor_dim': big.dim, 'cyclic_dim': sub.dim,
           'expected': expected.to_json(), 'observed': observed.to_json(),
           'hw_match': observed == expected}
    if len(Q) == 1:
        top = simple_top(sub)
        top_hw = hw_of(top, T)
        out['simple_dim'] = top.dim
        out['top_hw_match'] = top_hw.hw == expected
    out['pass'] = out['hw_match'] and out.get('top_hw_match', True)
    return out


def _generator_vector(factors):
    """Tensor product of the highest-weight vectors of the factors."""
    idx = 0
    for f in factors:
        idx = idx * f.dim + getattr(f, 'hw_index', 0)
    return _basis_vector(idx)


def module_report(M, T=None, relations=True):
    """Report JSON: dim, weights, hw (if readable), relation checks."""
    out = {'dim': M.dim, 'weights': [list(w) for w in M.weights]}
    try:
        out['hw'] = hw_of(M, T).hw.to_json()
    except ValueError as exc:
        out['hw'] = None
        out['hw_error'] = str(exc)
    if relations:
        out['relationChecks'] = verify_relations(M, T)
    return out


# -- construction specs (JSON) ----------------------------------------------------------------

def build_from_spec(spec, T=4):
    """Build a module from ``{"type": ..., ...}``; scalar fields use the textual scalar format."""
    from .scalars import parse_qrational

    def scal(x):
        return parse_qrational(x) if isinstance(x, str) else qq(x)

    kind = spec.get('type')
    if kind == 'onedim':
        return one_dim_module([scal(x) for x in spec['Q']], [scal(x) for x in spec['beta']], T)
    if kind == 'sl2eval':
        return sl2_eval_module(scal(spec.get('gamma', '0')), T)
    if kind == 'fundamental':
        return solve_loop_action(int(spec['n']), int(spec['i']), scal(spec.get('gamma', '0')), T)
    if kind == 'tensor':
        factors = [build_from_spec(f, T) for f in spec['factors']]
        if not factors:
            raise ValueError('tensor needs at least one factor')
        return tensor_all(factors)
    raise ValueError(f'unknown module type {kind!r}')
