"""Symbolic layer: generators, formal words, relations, composites and coproducts.

Elements are formal linear combinations of words in the generators
``X+_{i,t}``, ``X-_{i,t}``, ``J_{i,t}``, ``K+_i``, ``K-_i``.  Nothing is
rewritten; equality here is formal.  Whether an element vanishes in the
algebra is decided by evaluating it in modules (see ``repmodule``).

Words are read left to right as products, so the rightmost letter acts
first on a module vector.
"""

import functools

from .scalars import ONE, ZERO, QDIFF, qint, qpow, qq

KINDS = ('X+', 'X-', 'J', 'K+', 'K-')
_KIND_ORDER = {k: n for n, k in enumerate(KINDS)}


class GenSymbol(tuple):
    """A generator ``(kind, node, level)``; K symbols have level None."""

    __slots__ = ()

    def __new__(cls, kind, node, level=None):
        if kind not in _KIND_ORDER:
            raise ValueError(f'unknown generator kind {kind!r}')
        if node < 1:
            raise ValueError(f'node must be positive, got {node}')
        if kind in ('K+', 'K-'):
            if level is not None:
                raise ValueError('K generators carry no level')
        elif level is None or level < 0:
            raise ValueError(f'{kind} needs a level >= 0')
        return super().__new__(cls, (kind, node, level))

    kind = property(lambda self: self[0])
    node = property(lambda self: self[1])
    level = property(lambda self: self[2])

    def sort_key(self):
        return (_KIND_ORDER[self[0]], self[1], -1 if self[2] is None else self[2])

    def __str__(self):
        if self[2] is None:
            return f'{self[0]}_{self[1]}'
        return f'{self[0]}_{{{self[1]},{self[2]}}}'

    __repr__ = __str__


def _word_key(word):
    return [s.sort_key() for s in word]


def _accumulate(out, key, c):
    w = out.get(key)
    s = c if w is None else w + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


class AlgebraElement:
    """Formal combination ``{word: coefficient}``; the empty word is the unit."""

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = qq(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, terms):
        x = cls.__new__(cls)
        x.terms = terms
        return x

    def __add__(self, other):
        other = as_element(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return AlgebraElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-as_element(other))

    def __rsub__(self, other):
        return as_element(other) - self

    def scale(self, c):
        c = qq(c)
        if not c:
            return AlgebraElement()
        return AlgebraElement._raw({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _accumulate(out, w1 + w2, c1 * c2)
        return AlgebraElement._raw(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, k):
        r = ONE_ELEMENT
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def symbols(self):
        return {s for w in self.terms for s in w}

    def max_level(self):
        levels = [s.level for s in self.symbols() if s.level is not None]
        return max(levels, default=0)

    def __len__(self):
        return len(self.terms)

    def lines(self):
        """Debug serialization, one ``coeff * Sym ... Sym`` line per word."""
        out = []
        for w in sorted(self.terms, key=_word_key):
            body = ' '.join(str(s) for s in w) or '1'
            out.append(f'{self.terms[w]} * {body}')
        return out

    def __str__(self):
        return '\n'.join(self.lines()) or '0'

    def __repr__(self):
        return f'AlgebraElement({len(self.terms)} words)'


ONE_ELEMENT = AlgebraElement._raw({(): ONE})


def as_element(x):
    if isinstance(x, AlgebraElement):
        return x
    c = qq(x)
    return AlgebraElement._raw({(): c} if c else {})


def gen(kind, node, level=None):
    return AlgebraElement._raw({(GenSymbol(kind, node, level),): ONE})


def Xp(i, t=0):
    return gen('X+', i, t)


def Xm(i, t=0):
    return gen('X-', i, t)


def J(i, t):
    return gen('J', i, t)


def Kp(i):
    return gen('K+', i)


def Km(i):
    return gen('K-', i)


def qbracket(a, b, v=ONE):
    """``[a, b]_v = ab - v ba``."""
    return a * b - (b * a).scale(v)


def cartan(i, j):
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


# -- tensor elements ------------------------------------------------------------

class TensorElement:
    """Formal combination ``{(word, word): coefficient}``."""

    __slots__ = ('terms',)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = qq(c)
                if c:
                    self.terms[(tuple(k[0]), tuple(k[1]))] = c

    @classmethod
    def _raw(cls, terms):
        x = cls.__new__(cls)
        x.terms = terms
        return x

    @classmethod
    def pure(cls, a, b):
        """``a (x) b`` for algebra elements a and b."""
        a, b = as_element(a), as_element(b)
        out = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                _accumulate(out, (w1, w2), c1 * c2)
        return cls._raw(out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return TensorElement._raw(out)

    def __neg__(self):
        return TensorElement._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = qq(c)
        if not c:
            return TensorElement()
        return TensorElement._raw({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                _accumulate(out, (a1 + a2, b1 + b2), c1 * c2)
        return TensorElement._raw(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def map_legs(self, left=None, right=None):
        """Apply algebra maps (word -> AlgebraElement) to either leg."""
        out = TensorElement()
        for (a, b), c in self.terms.items():
            la = left(a) if left else AlgebraElement._raw({a: ONE})
            rb = right(b) if right else AlgebraElement._raw({b: ONE})
            out = out + TensorElement.pure(la, rb).scale(c)
        return out

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f'TensorElement({len(self.terms)} terms)'


def tensor(a, b):
    return TensorElement.pure(a, b)


TENSOR_ONE = TensorElement._raw({((), ()): ONE})


# -- generator maps -------------------------------------------------------------

class GeneratorMap:
    """Algebra map given on generators, extended multiplicatively to words.

    ``rule(sym)`` returns the image of a generator as an AlgebraElement,
    or None to leave the generator fixed.  ``anti=True`` reverses words
    (for anti-homomorphisms).
    """

    def __init__(self, rule, anti=False):
        self.rule = rule
        self.anti = anti
        self._cache = {}

    def image(self, sym):
        x = self._cache.get(sym)
        if x is None:
            x = self.rule(sym)
            if x is None:
                x = AlgebraElement._raw({(sym,): ONE})
            self._cache[sym] = x
        return x

    def word(self, w):
        r = ONE_ELEMENT
        for s in (reversed(w) if self.anti else w):
            r = r * self.image(s)
        return r

    def __call__(self, x):
        x = as_element(x)
        out = AlgebraElement()
        for w, c in x.terms.items():
            out = out + self.word(w).scale(c)
        return out


def iota(sign, Q):
    """The maps sending the Q-algebra into the Q = 0 algebra.

    ``sign='+'`` shifts X+ generators, ``sign='-'`` shifts X- generators:
    ``X_{i,t} -> X_{i,t} - Q_i X_{i,t+1}``.
    """
    if sign not in ('+', '-'):
        raise ValueError("sign must be '+' or '-'")
    Q = [qq(x) for x in Q]
    kind = 'X' + sign

    def rule(sym):
        if sym.kind != kind:
            return None
        Qi = Q[sym.node - 1]
        base = gen(kind, sym.node, sym.level)
        if not Qi:
            return base
        return base - gen(kind, sym.node, sym.level + 1).scale(Qi)

    return GeneratorMap(rule)


def upsilon(Q=None):
    """Scaling map ``X_{i,t}, J_{i,t} -> q^(t i) X_{i,t}, q^(t i) J_{i,t}``; K fixed."""

    def rule(sym):
        if sym.level is None or sym.level == 0:
            return None
        return gen(sym.kind, sym.node, sym.level).scale(qpow(sym.level * sym.node))

    return GeneratorMap(rule)


_DAGGER_KIND = {'X+': 'X-', 'X-': 'X+', 'J': 'J', 'K+': 'K+', 'K-': 'K-'}


def dagger(x):
    """The anti-involution swapping X+ and X-, fixing J and K."""
    out = {}
    for w, c in as_element(x).terms.items():
        nw = tuple(GenSymbol(_DAGGER_KIND[s.kind], s.node, s.level) for s in reversed(w))
        _accumulate(out, nw, c)
    return AlgebraElement._raw(out)


# -- root vectors and composites --------------------------------------------------

@functools.lru_cache(maxsize=None)
def root_vector(sign, i, j, t=0):
    """Root vector for alpha_i + ... + alpha_(j-1), 1 <= i < j, as nested q-brackets."""
    if not 1 <= i < j:
        raise ValueError(f'need 1 <= i < j, got ({i}, {j})')
    if t < 0:
        raise ValueError('level must be nonnegative')
    q = qpow(1)
    if sign == '+':
        x = Xp(j - 1, t if j - 1 == i else 0)
        for m in range(j - 2, i - 1, -1):
            x = qbracket(x, Xp(m, t if m == i else 0), q)
        return x
    if sign == '-':
        x = Xm(j - 1, t if j - 1 == i else 0)
        for m in range(j - 2, i - 1, -1):
            x = qbracket(Xm(m, t if m == i else 0), x, q)
        return x
    raise ValueError("sign must be '+' or '-'")


@functools.lru_cache(maxsize=None)
def tilde_root_vector(i, j):
    """Level-zero positive root vector built with q^-1 brackets."""
    if not 1 <= i < j:
        raise ValueError(f'need 1 <= i < j, got ({i}, {j})')
    qinv = qpow(-1)
    x = Xp(j - 1)
    for m in range(j - 2, i - 1, -1):
        x = qbracket(x, Xp(m), qinv)
    return x


def j_bracket_0(t, node=1):
    """The composite J_[t] for Q = 0 (degree-t elementary symmetric analogue)."""
    if t < 0:
        raise ValueError('t must be nonnegative')
    return _j_bracket_0(t, node)


@functools.lru_cache(maxsize=None)
def _j_bracket_0(t, node):
    if t == 0:
        return ONE_ELEMENT
    acc = AlgebraElement()
    for z in range(1, t + 1):
        term = J(node, z) * _j_bracket_0(t - z, node)
        acc = acc + (term if z % 2 else -term)
    return acc.scale(qpow(t) / qint(t))


def j_shift(k, t, Q, node=1):
    """The composite J_[k;t] for Q != 0."""
    Q = qq(Q)
    if k < 0 or not 0 <= t <= k:
        raise ValueError('need 0 <= t <= k')
    if Q.is_zero():
        raise ValueError('Q must be nonzero')
    return _j_shift(k, t, Q, node)


@functools.lru_cache(maxsize=None)
def _j_shift(k, t, Q, node):
    if t == 0:
        return as_element(qpow(-k * (k + 1)) * Q ** k)
    acc = AlgebraElement()
    qk = qint(k)
    for z in range(1, t + 1):
        qz = Q ** -z
        factor = (J(node, z) - J(node, 0).scale(qpow(2 * (k - t + z)) * qz)
                  + as_element(qpow(k - 2 * (t - z)) * qk * qz))
        term = factor * _j_shift(k, t - z, Q, node)
        acc = acc + (term if z % 2 else -term)
    return acc.scale(qpow(t) / qint(t))


def psi_element(i, t, Qi):
    """The Psi^+_{i,t} composite."""
    Qi = qq(Qi)
    if Qi.is_zero():
        if t < 0:
            raise ValueError('t must be >= 0 when Q_i = 0')
        if t == 0:
            return Kp(i)
        return (Kp(i) * J(i, t)).scale(QDIFF)
    if t < -1:
        raise ValueError('t must be >= -1 when Q_i != 0')
    if t == -1:
        return Kp(i).scale(-Qi)
    if t == 0:
        return Kp(i) - (Kp(i) * J(i, 1)).scale(QDIFF * Qi)
    return (Kp(i) * (J(i, t) - J(i, t + 1).scale(Qi))).scale(QDIFF)


def divided_power(x, k):
    """``x^k / [k]!``; zero for negative k."""
    if k < 0:
        return AlgebraElement()
    from .scalars import qfact
    return (x ** k).scale(qfact(k).inverse())


# -- defining relations -----------------------------------------------------------

RELATION_IDS = ('Q1-1', 'Q1-2', 'Q2', 'Q3', 'Q4-1', 'Q4-2', 'Q4-3',
                'Q5-1', 'Q5-2', 'Q5-3', 'Q6', 'Q7', 'Q8')


def _serre(sign, i, j, s, t, u):
    x = (lambda a, b: gen('X' + sign, a, b))
    sym = x(i, s) * x(i, t) + x(i, t) * x(i, s)
    lhs = x(j, u) * sym + sym * x(j, u)
    rhs = (x(i, s) * x(j, u) * x(i, t) + x(i, t) * x(j, u) * x(i, s)).scale(qint(2))
    return lhs - rhs


def relation_instance(rid, params, Q):
    """LHS - RHS of a defining relation instance (zero in the algebra).

    Parameter shapes:

    * ``Q1-1``: ``('KK', i, j)``, ``('KJ', i, j, t)`` or ``('JJ', i, s, j, t)``
    * ``Q1-2``: ``(part, i)`` with part 1 (K+K- = 1), 2 (K-K- = 1 - (q - q^-1)J_0), 3 (K-K+ = 1)
    * ``Q2``, ``Q3``: ``(i, j, t, s)``
    * ``Q4-1``, ``Q4-2``, ``Q5-1``, ``Q5-2``: ``(i, j, t)``
    * ``Q4-3``, ``Q5-3``: ``(i, j, s, t)``
    * ``Q6``: ``(i, j, t, s)``
    * ``Q7``, ``Q8``: ``('comm', i, j, t, s)`` with |i - j| > 1, or
      ``('serre', i, j, s, t, u)`` with j = i +- 1
    """
    Q = [qq(x) for x in Q]
    n1 = len(Q)
    try:
        return _relation(rid, tuple(params), Q, n1)
    except (TypeError, ValueError, IndexError) as exc:
        raise ValueError(f'malformed parameters {params!r} for {rid}: {exc}') from None


def _check_nodes(n1, *nodes):
    for i in nodes:
        if not 1 <= i <= n1:
            raise ValueError(f'node {i} out of range 1..{n1}')


def _check_levels(*levels):
    for t in levels:
        if t < 0:
            raise ValueError('levels must be nonnegative')


def _relation(rid, p, Q, n1):
    q = qpow(1)
    if rid == 'Q1-1':
        tag = p[0]
        if tag == 'KK':
            _, i, j = p
            _check_nodes(n1, i, j)
            return qbracket(Kp(i), Kp(j))
        if tag == 'KJ':
            _, i, j, t = p
            _check_nodes(n1, i, j)
            _check_levels(t)
            return qbracket(Kp(i), J(j, t))
        if tag == 'JJ':
            _, i, s, j, t = p
            _check_nodes(n1, i, j)
            _check_levels(s, t)
            return qbracket(J(i, s), J(j, t))
        raise ValueError(f'unknown Q1-1 part {tag!r}')
    if rid == 'Q1-2':
        part, i = p
        _check_nodes(n1, i)
        if part == 1:
            return Kp(i) * Km(i) - ONE_ELEMENT
        if part == 2:
            return Km(i) * Km(i) - ONE_ELEMENT + J(i, 0).scale(QDIFF)
        if part == 3:
            return Km(i) * Kp(i) - ONE_ELEMENT
        raise ValueError(f'unknown Q1-2 part {part!r}')
    if rid in ('Q2', 'Q3'):
        i, j, t, s = p
        _check_nodes(n1, i, j)
        _check_levels(t, s)
        sign = '+' if rid == 'Q2' else '-'
        a = cartan(i, j) if sign == '+' else -cartan(i, j)
        x = (lambda a_, b_: gen('X' + sign, a_, b_))
        lhs = x(i, t + 1) * x(j, s) - (x(j, s) * x(i, t + 1)).scale(q ** a)
        rhs = (x(i, t) * x(j, s + 1)).scale(q ** a) - x(j, s + 1) * x(i, t)
        return lhs - rhs
    if rid in ('Q4-1', 'Q5-1'):
        i, j, t = p
        _check_nodes(n1, i, j)
        _check_levels(t)
        sign = '+' if rid == 'Q4-1' else '-'
        a = cartan(i, j) if sign == '+' else -cartan(i, j)
        x = gen('X' + sign, j, t)
        return Kp(i) * x * Km(i) - x.scale(q ** a)
    if rid in ('Q4-2', 'Q5-2'):
        i, j, t = p
        _check_nodes(n1, i, j)
        _check_levels(t)
        sign = '+' if rid == 'Q4-2' else '-'
        a = cartan(i, j) if sign == '+' else -cartan(i, j)
        x = gen('X' + sign, j, t)
        return (J(i, 0) * x).scale(q ** a) - (x * J(i, 0)).scale(q ** -a) - x.scale(qint(a))
    if rid in ('Q4-3', 'Q5-3'):
        i, j, s, t = p
        _check_nodes(n1, i, j)
        _check_levels(s, t)
        sign = '+' if rid == 'Q4-3' else '-'
        a = cartan(i, j) if sign == '+' else -cartan(i, j)
        x1 = gen('X' + sign, j, t)
        x2 = gen('X' + sign, j, t + 1)
        lhs = qbracket(J(i, s + 1), x1)
        rhs = (J(i, s) * x2).scale(q ** a) - (x2 * J(i, s)).scale(q ** -a)
        return lhs - rhs
    if rid == 'Q6':
        i, j, t, s = p
        _check_nodes(n1, i, j)
        _check_levels(t, s)
        lhs = qbracket(Xp(i, t), Xm(j, s))
        if i != j:
            return lhs
        rhs = Kp(i) * J(i, s + t)
        if Q[i - 1]:
            rhs = rhs - (Kp(i) * J(i, s + t + 1)).scale(Q[i - 1])
        return lhs - rhs
    if rid in ('Q7', 'Q8'):
        sign = '+' if rid == 'Q7' else '-'
        tag = p[0]
        if tag == 'comm':
            _, i, j, t, s = p
            _check_nodes(n1, i, j)
            _check_levels(t, s)
            if abs(i - j) <= 1:
                raise ValueError('commutation instance needs |i - j| > 1')
            return qbracket(gen('X' + sign, i, t), gen('X' + sign, j, s))
        if tag == 'serre':
            _, i, j, s, t, u = p
            _check_nodes(n1, i, j)
            _check_levels(s, t, u)
            if abs(i - j) != 1:
                raise ValueError('Serre instance needs j = i +- 1')
            return _serre(sign, i, j, s, t, u)
        raise ValueError(f'unknown {rid} part {tag!r}')
    raise ValueError(f'unknown relation id {rid!r}')


def relation_instances(n1, T, families=RELATION_IDS):
    """All relation instances with every level <= T, as ``(id, params)`` pairs.

    Quadratic and Serre families are enumerated exhaustively; this is what
    module verification iterates over.
    """
    nodes = range(1, n1 + 1)
    lv = range(T + 1)
    out = []
    for rid in families:
        if rid == 'Q1-1':
            out += [(rid, ('KK', i, j)) for i in nodes for j in nodes if i < j]
            out += [(rid, ('KJ', i, j, t)) for i in nodes for j in nodes for t in lv]
            out += [(rid, ('JJ', i, s, j, t)) for i in nodes for j in nodes
                    for s in lv for t in lv if (i, s) < (j, t)]
        elif rid == 'Q1-2':
            out += [(rid, (part, i)) for part in (1, 2, 3) for i in nodes]
        elif rid in ('Q2', 'Q3'):
            out += [(rid, (i, j, t, s)) for i in nodes for j in nodes
                    for t in range(T) for s in range(T)]
        elif rid in ('Q4-1', 'Q5-1', 'Q4-2', 'Q5-2'):
            out += [(rid, (i, j, t)) for i in nodes for j in nodes for t in lv]
        elif rid in ('Q4-3', 'Q5-3'):
            out += [(rid, (i, j, s, t)) for i in nodes for j in nodes
                    for s in range(T) for t in range(T)]
        elif rid == 'Q6':
            out += [(rid, (i, j, t, s)) for i in nodes for j in nodes
                    for t in lv for s in lv if t + s + (1 if i == j else 0) <= T]
        elif rid in ('Q7', 'Q8'):
            out += [(rid, ('comm', i, j, t, s)) for i in nodes for j in nodes
                    if abs(i - j) > 1 for t in lv for s in lv]
            out += [(rid, ('serre', i, j, s, t, u)) for i in nodes for j in (i - 1, i + 1)
                    if 1 <= j <= n1 for s in lv for t in lv if s <= t for u in lv]
    return out


# -- coproducts -------------------------------------------------------------------

def _tilde(i, j):
    return tilde_root_vector(i, j)


def _rp(i, j):
    return root_vector('+', i, j, 0)


def _rm1(i, j):
    return root_vector('-', i, j, 1)


def _delta_j1(i, n1):
    """Coproduct of J_{i,1} in the Q = 0 algebra."""
    q = qpow(1)
    n = n1 + 1
    d = QDIFF
    out = tensor(J(i, 1), ONE_ELEMENT) + tensor(ONE_ELEMENT, J(i, 1))
    out = out - tensor(Xp(i), Xm(i, 1)).scale(q ** 2 - q ** -2)
    for l in range(i + 2, n + 1):
        out = out + tensor(_tilde(i + 1, l), _rm1(i + 1, l)).scale(d)
    for k in range(1, i):
        out = out + tensor(_rp(k, i), _rm1(k, i)).scale(d * q ** (k + 1 - i))
    for l in range(i + 2, n + 1):
        out = out + tensor(qbracket(Xp(i), _tilde(i + 1, l), q ** 3), _rm1(i, l)).scale(q ** -2 * d)
    for k in range(1, i):
        out = out - tensor(qbracket(Xp(i), _rp(k, i), q ** 3), _rm1(k, i + 1)).scale(d * q ** (k - i - 1))
    for l in range(i + 2, n + 1):
        for k in range(1, i):
            left = _tilde(i, l) * _rp(k, i) - _tilde(i + 1, l) * _rp(k, i + 1)
            out = out + tensor(left, _rm1(k, l)).scale(d * d * q ** (k - i))
    return out


def _delta_xp1(i, n1):
    q = qpow(1)
    n = n1 + 1
    d = QDIFF
    K = Kp(i)
    out = tensor(ONE_ELEMENT, Xp(i, 1)) + tensor(Xp(i, 1), K)
    out = out + tensor(Xp(i), K * J(i, 1)).scale(d)
    out = out - tensor(Xp(i) * Xp(i), Xm(i, 1) * K).scale(q ** -1 * d * d)
    for l in range(i + 2, n + 1):
        out = out + tensor(_tilde(i, l), _rm1(i + 1, l) * K).scale(q * d)
        out = out - tensor(Xp(i) * _tilde(i, l), _rm1(i, l) * K).scale(d * d)
    for k in range(1, i):
        out = out - tensor(_rp(k, i + 1), _rm1(k, i) * K).scale(q * d * q ** (k - i))
        out = out - tensor(Xp(i) * _rp(k, i + 1), _rm1(k, i + 1) * K).scale(d * d * q ** (k - i))
    for l in range(i + 2, n + 1):
        for k in range(1, i):
            out = out - tensor(_tilde(i, l) * _rp(k, i + 1), _rm1(k, l) * K).scale(d * d * q ** (k - i))
    return out


def _delta_xm1(i, n1):
    q = qpow(1)
    n = n1 + 1
    d = QDIFF
    K = Kp(i)
    out = tensor(Xm(i, 1), ONE_ELEMENT) + tensor(K, Xm(i, 1))
    for l in range(i + 2, n + 1):
        out = out + tensor(_tilde(i + 1, l) * K, _rm1(i, l)).scale(q ** -1 * d)
    for k in range(1, i):
        out = out - tensor(_rp(k, i) * K, _rm1(k, i + 1)).scale(d * q ** (k - i))
    for l in range(i + 2, n + 1):
        for k in range(1, i):
            out = out - tensor(_tilde(i + 1, l) * _rp(k, i) * K, _rm1(k, l)).scale(d * d * q ** (k - i - 1))
    return out


def _check_generator(g, n1):
    if not isinstance(g, GenSymbol):
        raise ValueError(f'expected a generator symbol, got {g!r}')
    if not 1 <= g.node <= n1:
        raise ValueError(f'node {g.node} out of range 1..{n1}')


def coproduct0(g, n1):
    """Explicit coproduct of a generator of the Q = 0 algebra of rank n1.

    Supported: X+-_{i,0}, X+-_{i,1}, J_{i,1}, K+-_i.  Other levels are
    available through :func:`coproduct0_derived`.
    """
    _check_generator(g, n1)
    i = g.node
    if g.kind in ('K+', 'K-'):
        x = gen(g.kind, i)
        return tensor(x, x)
    if g.kind == 'X+' and g.level == 0:
        return tensor(ONE_ELEMENT, Xp(i)) + tensor(Xp(i), Kp(i))
    if g.kind == 'X-' and g.level == 0:
        return tensor(Xm(i), ONE_ELEMENT) + tensor(Km(i), Xm(i))
    if g.kind == 'J' and g.level == 1:
        return _delta_j1(i, n1)
    if g.kind == 'X+' and g.level == 1:
        return _delta_xp1(i, n1)
    if g.kind == 'X-' and g.level == 1:
        return _delta_xm1(i, n1)
    raise ValueError(f'no explicit coproduct for {g}')


@functools.lru_cache(maxsize=None)
def coproduct0_derived(g, n1):
    """Coproduct of any generator, from the generating set via the level recursions."""
    _check_generator(g, n1)
    i = g.node
    if g.kind in ('K+', 'K-') or g.level == 0 and g.kind in ('X+', 'X-') or g.kind == 'J' and g.level == 1:
        return coproduct0(g, n1)
    dj = coproduct0(GenSymbol('J', i, 1), n1)
    if g.kind == 'J' and g.level == 0:
        km = coproduct0(GenSymbol('K-', i), n1)
        return (TENSOR_ONE - km * km).scale(QDIFF.inverse())
    if g.kind in ('X+', 'X-'):
        prev = coproduct0_derived(GenSymbol(g.kind, i, g.level - 1), n1)
        c = qint(2).inverse()
        if g.kind == 'X-':
            c = -c
        return (dj * prev - prev * dj).scale(c)
    # J_{i,t+1} = K- [X+_{i,t+1}, X-_{i,0}]  (Q = 0)
    km = coproduct0(GenSymbol('K-', i), n1)
    xp = coproduct0_derived(GenSymbol('X+', i, g.level), n1)
    xm = coproduct0(GenSymbol('X-', i, 0), n1)
    return km * (xp * xm - xm * xp)


def apply_coproduct(x, n1, explicit=True):
    """Extend the coproduct multiplicatively to an algebra element."""
    out = TensorElement()
    f = coproduct0 if explicit else coproduct0_derived
    for w, c in as_element(x).terms.items():
        r = TENSOR_ONE
        for s in w:
            if explicit and not _is_explicit(s):
                r = r * coproduct0_derived(s, n1)
            else:
                r = r * f(s, n1)
        out = out + r.scale(c)
    return out


def _is_explicit(s):
    return s.kind in ('K+', 'K-') or s.level in (0, 1) and s.kind in ('X+', 'X-') or (s.kind == 'J' and s.level == 1)


def delta_r(Q, g):
    """Right coproduct for parameters Q: the Q = 0 coproduct after iota_-."""
    n1 = len(Q)
    return apply_coproduct(iota('-', Q)(gen(g.kind, g.node, g.level)), n1)


def delta_l(Q, g):
    """Left coproduct for parameters Q: the Q = 0 coproduct after iota_+."""
    n1 = len(Q)
    return apply_coproduct(iota('+', Q)(gen(g.kind, g.node, g.level)), n1)


def delta_r_display(Q, g):
    """Right coproduct with the left leg read in the Q-algebra.

    Only ``X-_{i,0}`` differs from the Q = 0 coproduct; applying iota_- to
    the left leg recovers :func:`delta_r`.
    """
    Q = [qq(x) for x in Q]
    n1 = len(Q)
    _check_generator(g, n1)
    i = g.node
    Qi = Q[i - 1]
    if not (g.kind == 'X-' and g.level == 0) or not Qi:
        return coproduct0(g, n1)
    q = qpow(1)
    n = n1 + 1
    d = QDIFF
    K = Kp(i)
    block = tensor(K, Xm(i, 1))
    for l in range(i + 2, n + 1):
        block = block + tensor(_tilde(i + 1, l) * K, _rm1(i, l)).scale(q ** -1 * d)
    for k in range(1, i):
        block = block - tensor(_rp(k, i) * K, _rm1(k, i + 1)).scale(d * q ** (k - i))
    for l in range(i + 2, n + 1):
        for k in range(1, i):
            block = block - tensor(_tilde(i + 1, l) * _rp(k, i) * K, _rm1(k, l)).scale(d * d * q ** (k - i - 1))
    base = tensor(Xm(i), ONE_ELEMENT) + tensor(Km(i), Xm(i))
    return base - block.scale(Qi)


def delta_l_display(Q, g):
    """Left coproduct with the right leg read in the Q-algebra (only X+_{i,0} differs)."""
    Q = [qq(x) for x in Q]
    n1 = len(Q)
    _check_generator(g, n1)
    i = g.node
    Qi = Q[i - 1]
    if not (g.kind == 'X+' and g.level == 0) or not Qi:
        return coproduct0(g, n1)
    block = _delta_xp1(i, n1) - tensor(ONE_ELEMENT, Xp(i, 1))
    base = tensor(ONE_ELEMENT, Xp(i)) + tensor(Xp(i), Kp(i))
    return base - block.scale(Qi)


GENERATING_KINDS = (('X+', 0), ('X-', 0), ('J', 1), ('K+', None), ('K-', None))


def generating_set(n1):
    """The generating symbols X+-_{i,0}, J_{i,1}, K+-_i for nodes 1..n1."""
    return [GenSymbol(k, i, t) for i in range(1, n1 + 1) for k, t in GENERATING_KINDS]
