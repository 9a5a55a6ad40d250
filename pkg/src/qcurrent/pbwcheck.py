"""Graded dimensions of the positive half against PBW monomial counts.

The positive half is the free algebra on letters x_{i,t} modulo the
quadratic level-shift relations and the Serre-type relations.  A graded
slice (weight gamma, level sum s) of the quotient has dimension
#words - rank(ideal slice); the ideal slice is spanned by u.r.w for
relation instances r and words u, w.
"""

import functools
from itertools import product

from . import presentation as pr
from .linalg import Echelon
from .scalars import ZERO


class GradedSlice:
    """Weight ``gamma`` (multiplicity of each simple root), level sum ``s``, level cap ``T``."""

    def __init__(self, gamma, s, T):
        self.gamma = tuple(int(g) for g in gamma)
        if any(g < 0 for g in self.gamma):
            raise ValueError('weight multiplicities must be nonnegative')
        if s < 0:
            raise ValueError('level sum must be nonnegative')
        if T < 0:
            raise ValueError('level cap must be nonnegative')
        self.s = s
        self.T = T

    @property
    def n1(self):
        return len(self.gamma)

    def __repr__(self):
        return f'GradedSlice(gamma={self.gamma}, s={self.s}, T={self.T})'


@functools.lru_cache(maxsize=None)
def slice_words(gamma, s, T):
    """All words (tuples of (node, level)) of weight gamma and level sum s, levels <= T."""
    gamma = tuple(gamma)
    if not any(gamma):
        return ((),) if s == 0 else ()
    out = []
    for i, g in enumerate(gamma):
        if not g:
            continue
        rest = gamma[:i] + (g - 1,) + gamma[i + 1:]
        for t in range(min(s, T) + 1):
            for w in slice_words(rest, s - t, T):
                out.append(((i + 1, t),) + w)
    return tuple(sorted(out))


def _relation_polys(n1, gamma, s):
    """Relation instances (as {word: coeff}) with weight <= gamma and level sum <= s."""
    out = []
    seen = set()
    for rid, params in _instances(n1, s):
        el = pr.relation_instance(rid, params, [ZERO] * n1)
        poly = {}
        for w, c in el.terms.items():
            poly[tuple((sym.node, sym.level) for sym in w)] = c
        if not poly:
            continue
        w0 = next(iter(poly))
        wt = [0] * n1
        for i, _ in w0:
            wt[i - 1] += 1
        lvl = sum(t for _, t in w0)
        if any(a > b for a, b in zip(wt, gamma)) or lvl > s:
            continue
        key = frozenset(poly.items())
        if key in seen:
            continue
        seen.add(key)
        out.append((tuple(wt), lvl, poly))
    return out


def _instances(n1, s):
    nodes = range(1, n1 + 1)
    out = []
    for i, j in product(nodes, nodes):
        for t in range(s):
            for u in range(s - t):
                out.append(('Q2', (i, j, t, u)))
    for i, j in product(nodes, nodes):
        if abs(i - j) > 1:
            for t in range(s + 1):
                for u in range(s + 1 - t):
                    out.append(('Q7', ('comm', i, j, t, u)))
        elif abs(i - j) == 1:
            for a in range(s + 1):
                for b in range(a, s + 1 - a):
                    for u in range(s + 1 - a - b):
                        out.append(('Q7', ('serre', i, j, a, b, u)))
    return out


def _slice_data(sl):
    if sl.T < sl.s:
        # with T < s a relation may need letters above the cap, so the ideal slice is incomplete
        raise ValueError(f'level cap T={sl.T} is below the level sum s={sl.s}')
    words = slice_words(sl.gamma, sl.s, sl.T)
    index = {w: k for k, w in enumerate(words)}
    ech = Echelon()
    for wt, lvl, poly in _relation_polys(sl.n1, sl.gamma, sl.s):
        rest = tuple(a - b for a, b in zip(sl.gamma, wt))
        for outer in slice_words(rest, sl.s - lvl, sl.T):
            for cut in range(len(outer) + 1):
                u, w = outer[:cut], outer[cut:]
                row = {}
                for mid, c in poly.items():
                    full = u + mid + w
                    k = index.get(full)
                    if k is None:
                        raise ValueError(f'level cap too small for {full}')
                    row[k] = row.get(k, ZERO) + c
                ech.add({k: v for k, v in row.items() if v})
    return len(words), ech.rank


def graded_dim_uplus(sl):
    """Dimension of the slice of the positive half."""
    nwords, rank = _slice_data(sl)
    return nwords - rank


def positive_roots(n1):
    """Positive roots alpha_{i,j} = alpha_i + ... + alpha_{j-1} as weight vectors, in the root order."""
    n = n1 + 1
    out = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            out.append(((i, j), tuple(1 if i <= k < j else 0 for k in range(1, n))))
    return out


def pbw_count(sl):
    """Number of finitely supported h: (root, level) -> N with total weight gamma, level sum s."""
    items = [(rw, t) for _, rw in positive_roots(sl.n1) for t in range(sl.T + 1)]

    @functools.lru_cache(maxsize=None)
    def count(k, gamma, s):
        if k == len(items):
            return 1 if s == 0 and not any(gamma) else 0
        rw, t = items[k]
        total = 0
        g, left = gamma, s
        while all(x >= 0 for x in g) and left >= 0:
            total += count(k + 1, g, left)
            g = tuple(a - b for a, b in zip(g, rw))
            left -= t
        return total

    return count(0, sl.gamma, sl.s)


def slice_report(sl):
    nwords, rank = _slice_data(sl)
    dim = nwords - rank
    pc = pbw_count(sl)
    return {'gamma': list(sl.gamma), 's': sl.s, 'T': sl.T, 'words': nwords,
            'ideal_rank': rank, 'dim': dim, 'pbw_count': pc, 'match': dim == pc}


def pbw_verify(n, maxweight, maxs, T):
    """Compare both sides on every slice with multiplicities <= maxweight and s <= maxs."""
    if T < maxs:
        raise ValueError(f'level cap T={T} is below maxs={maxs}')
    n1 = n - 1
    if isinstance(maxweight, int):
        maxweight = (maxweight,) * n1
    slices = []
    for gamma in product(*(range(m + 1) for m in maxweight)):
        for s in range(maxs + 1):
            slices.append(slice_report(GradedSlice(gamma, s, T)))
    return {'n': n, 'maxweight': list(maxweight), 'maxs': maxs, 'T': T,
            'slices': slices, 'all_match': all(r['match'] for r in slices)}
