"""Exact scalars: rationals, rational functions in q, truncated series in omega.

Every scalar in the library is a :class:`QRational`, an element of the
field Q(q) with q a formal parameter.  Values are stored in a canonical
form so that equal values have identical representations::

    value = q**val * num(q) / den(q)

with ``num(0) != 0`` (unless the value is zero), ``den`` monic with
``den(0) != 0`` and ``gcd(num, den) = 1``.  Polynomial arithmetic is
delegated to FLINT's ``fmpq_poly``.

The textual form used by the CLI and JSON output is::

    (c_hi*q^hi + ... + c_lo*q^lo)/(d_hi*q^hi + ... + d_0)

with rational coefficients ``a`` or ``a/b`` and exponent-zero terms
written as a bare coefficient, e.g. ``(1*q^1 + 1*q^-1)/(1)``.
"""

import ast
from fractions import Fraction

import flint

_P = flint.fmpq_poly
_ONE_POLY = _P([1])
_ZERO_POLY = _P([])


class ParseError(ValueError):
    """Raised when a scalar string cannot be parsed."""


def _strip_q(p):
    # split p = q**k * r with r(0) != 0
    if p[0] != 0:
        return 0, p
    k = 1
    while p[k] == 0:
        k += 1
    return k, p.right_shift(k)


def _to_fraction(c):
    return Fraction(int(c.p), int(c.q))


class QRational:
    """An element of Q(q) in canonical reduced form."""

    __slots__ = ('num', 'val', 'den', '_hash')

    def __init__(self, value=0):
        if isinstance(value, QRational):
            self.num, self.val, self.den = value.num, value.val, value.den
        elif isinstance(value, (int, Fraction, flint.fmpq)):
            if isinstance(value, Fraction):
                value = flint.fmpq(value.numerator, value.denominator)
            self.num = _P([value]) if value else _ZERO_POLY
            self.val = 0
            self.den = _ONE_POLY
        elif isinstance(value, str):
            r = parse_qrational(value)
            self.num, self.val, self.den = r.num, r.val, r.den
        else:
            raise TypeError(f'cannot convert {type(value).__name__} to QRational')
        self._hash = None

    @classmethod
    def _raw(cls, num, val, den):
        r = object.__new__(cls)
        r.num = num
        r.val = val
        r.den = den
        r._hash = None
        return r

    @classmethod
    def _normalize(cls, num, val, den):
        if num.is_zero():
            return ZERO
        if den.is_zero():
            raise ZeroDivisionError('zero denominator')
        k, num = _strip_q(num)
        val += k
        k, den = _strip_q(den)
        val -= k
        if den.degree() > 0:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return cls._raw(num, val, den)

    @classmethod
    def qpow(cls, k):
        """Return q**k."""
        return cls._raw(_ONE_POLY, k, _ONE_POLY)

    @classmethod
    def from_laurent(cls, terms):
        """Build a Laurent polynomial from a mapping exponent -> coefficient."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo = min(terms)
        coeffs = [0] * (max(terms) - lo + 1)
        for e, c in terms.items():
            if isinstance(c, Fraction):
                c = flint.fmpq(c.numerator, c.denominator)
            coeffs[e - lo] = c
        return cls._raw(_P(coeffs), lo, _ONE_POLY)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QRational):
            if isinstance(other, (int, Fraction)):
                other = QRational(other)
            else:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        v1, v2 = self.val, other.val
        m = min(v1, v2)
        a = self.num.left_shift(v1 - m) if v1 > m else self.num
        b = other.num.left_shift(v2 - m) if v2 > m else other.num
        d1, d2 = self.den, other.den
        if d1 == d2:
            num = a + b
            if num.is_zero():
                return ZERO
            k, num = _strip_q(num)
            if d1.is_one():
                return QRational._raw(num, m + k, d1)
            g = num.gcd(d1)
            if g.is_one():
                return QRational._raw(num, m + k, d1)
            return QRational._raw(num // g, m + k, d1 // g)
        g = d1.gcd(d2)
        if g.is_one():
            num = a * d2 + b * d1
            den = d1 * d2
        else:
            e1 = d1 // g
            e2 = d2 // g
            num = a * e2 + b * e1
            den = d1 * e2
        return QRational._normalize(num, m, den)

    __radd__ = __add__

    def __neg__(self):
        return QRational._raw(-self.num, self.val, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, QRational):
            if isinstance(other, (int, Fraction)):
                other = QRational(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QRational):
            if isinstance(other, int):
                if other == 0:
                    return ZERO
                return QRational._raw(self.num * other, self.val, self.den)
            if isinstance(other, Fraction):
                other = QRational(other)
            else:
                return NotImplemented
        n1, n2 = self.num, other.num
        if n1.is_zero() or n2.is_zero():
            return ZERO
        d1, d2 = self.den, other.den
        val = self.val + other.val
        if d1.is_one() and d2.is_one():
            return QRational._raw(n1 * n2, val, _ONE_POLY)
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1 = n1 // g
                d2 = d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2 = n2 // g
                d1 = d1 // g
        return QRational._raw(n1 * n2, val, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError('division by zero in Q(q)')
        lc = self.num.leading_coefficient()
        return QRational._raw(self.den / lc, -self.val, self.num / lc)

    def __truediv__(self, other):
        if not isinstance(other, QRational):
            if isinstance(other, (int, Fraction)):
                other = QRational(other)
            else:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QRational(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return ONE
        if self.num.is_zero():
            return ZERO
        return QRational._raw(self.num ** k, self.val * k, self.den ** k)

    # -- comparison and hashing ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QRational):
            if isinstance(other, (int, Fraction)):
                other = QRational(other)
            else:
                return NotImplemented
        return (self.val == other.val and self.num == other.num
                and self.den == other.den)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.val, str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    # -- inspection -------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self):
        """True when the value is a Laurent polynomial in q."""
        return self.den.is_one()

    def is_constant(self):
        """True when the value lies in Q (no q dependence)."""
        return self.val == 0 and self.num.degree() <= 0 and self.den.is_one()

    def numerator_terms(self):
        """Mapping exponent -> Fraction of the Laurent numerator."""
        return {self.val + i: _to_fraction(c)
                for i, c in enumerate(self.num.coeffs()) if c != 0}

    def denominator_terms(self):
        return {i: _to_fraction(c) for i, c in enumerate(self.den.coeffs()) if c != 0}

    def as_fraction(self):
        """The value as a Fraction; only valid for constants."""
        if not self.is_constant():
            raise ValueError(f'{self} depends on q')
        return _to_fraction(self.num[0]) if not self.num.is_zero() else Fraction(0)

    def subs(self, value):
        """Specialize q to an exact rational value (not 0 or a pole)."""
        value = Fraction(value)
        if value == 0:
            raise ValueError('cannot specialize q = 0')
        x = flint.fmpq(value.numerator, value.denominator)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f'q = {value} is a pole of {self}')
        r = self.num(x) / d * x ** self.val
        return _to_fraction(r)

    def __str__(self):
        return f'({_format_terms(self.numerator_terms())})/({_format_terms(self.denominator_terms())})'

    def __repr__(self):
        return f"QRational('{self}')"


def _format_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f'{c.numerator}/{c.denominator}'


def _format_terms(terms):
    if not terms:
        return '0'
    out = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        body = _format_coeff(abs(c)) if e == 0 else f'{_format_coeff(abs(c))}*q^{e}'
        if not out:
            out.append(body if c > 0 else f'-{body}')
        else:
            out.append(f' + {body}' if c > 0 else f' - {body}')
    return ''.join(out)


ZERO = QRational._raw(_ZERO_POLY, 0, _ONE_POLY)
ONE = QRational._raw(_ONE_POLY, 0, _ONE_POLY)
Q = QRational.qpow(1)
QINV = QRational.qpow(-1)


def qq(x):
    """Coerce an int, Fraction, string or QRational to a QRational."""
    if isinstance(x, QRational):
        return x
    return QRational(x)


def qpow(k):
    return QRational.qpow(k)


def ratfun_arith(a, b, op):
    """Field operation ``op`` in {'add', 'sub', 'mul', 'div'} on two scalars."""
    a, b = qq(a), qq(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        if b.is_zero():
            raise ZeroDivisionError('division by zero in Q(q)')
        return a / b
    raise ValueError(f'unknown operation {op!r}')


# -- parsing ------------------------------------------------------------------

def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) \
            and not isinstance(node.value, bool):
        return QRational(node.value)
    if isinstance(node, ast.Name):
        if node.id == 'q':
            return Q
        raise ParseError(f'unknown symbol {node.id!r}; only q is allowed')
    if isinstance(node, ast.UnaryOp):
        x = _eval_node(node.operand)
        if isinstance(node.op, ast.USub):
            return -x
        if isinstance(node.op, ast.UAdd):
            return x
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if right.is_zero():
                raise ParseError('division by zero')
            return left / right
        if isinstance(node.op, ast.Pow):
            if not right.is_constant() or right.as_fraction().denominator != 1:
                raise ParseError('exponents must be integers')
            k = int(right.as_fraction())
            if k < 0 and left.is_zero():
                raise ParseError('division by zero')
            return left ** k
    raise ParseError(f'unsupported syntax: {ast.dump(node)}')


def parse_qrational(text):
    """Parse an arithmetic expression in q with integer literals.

    Accepts the canonical output format as well as free-form input such
    as ``1/q``, ``q^2 - 3/2`` or ``(q+q^-1)^2``.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError('empty scalar')
    try:
        tree = ast.parse(text.strip().replace('^', '**'), mode='eval')
    except SyntaxError as exc:
        raise ParseError(f'cannot parse {text!r}: {exc.msg}') from None
    return _eval_node(tree)


# -- q-integers ---------------------------------------------------------------

def qint(k):
    """The q-integer [k] = (q^k - q^-k)/(q - q^-1)."""
    if k < 0:
        return -qint(-k)
    return QRational.from_laurent({k - 1 - 2 * j: 1 for j in range(k)})


def qfact(k):
    """The q-factorial [k]! with [0]! = 1."""
    if k < 0:
        raise ValueError('q-factorial of a negative integer')
    r = ONE
    for j in range(2, k + 1):
        r = r * qint(j)
    return r


QDIFF = Q - QINV


# -- truncated Laurent series in omega ----------------------------------------

class OmegaSeries:
    """A Laurent series in omega truncated above order T.

    ``coeffs[j]`` is the coefficient of ``omega**(low + j)`` for
    ``low + j <= T``; the lowest exponent is at least -1.
    """

    __slots__ = ('low', 'coeffs', 'T')

    def __init__(self, low, coeffs, T):
        if low < -1:
            raise ValueError('pole of order greater than one')
        coeffs = [qq(c) for c in coeffs][:max(T - low + 1, 0)]
        coeffs += [ZERO] * (T - low + 1 - len(coeffs))
        self.low = low
        self.coeffs = coeffs
        self.T = T

    def coeff(self, e):
        if e > self.T:
            raise IndexError(f'order {e} beyond truncation {self.T}')
        if e < self.low:
            return ZERO
        return self.coeffs[e - self.low]

    def terms(self):
        return {self.low + j: c for j, c in enumerate(self.coeffs)}

    def _widen(self, low):
        return [ZERO] * (self.low - low) + self.coeffs

    def __add__(self, other):
        T = min(self.T, other.T)
        low = min(self.low, other.low)
        a = self._widen(low)
        b = other._widen(low)
        n = T - low + 1
        return OmegaSeries(low, [a[j] + b[j] for j in range(n)], T)

    def __neg__(self):
        return OmegaSeries(self.low, [-c for c in self.coeffs], self.T)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = qq(c)
        return OmegaSeries(self.low, [c * x for x in self.coeffs], self.T)

    def __mul__(self, other):
        if not isinstance(other, OmegaSeries):
            return self.scale(other)
        low = self.low + other.low
        if low < -1:
            raise ValueError('product has a pole of order greater than one')
        # each factor is known up to its own T; the product is known up to
        # T = min(self.T + other.low, other.T + self.low)
        T = min(self.T + other.low, other.T + self.low)
        out = [ZERO] * (T - low + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                k = i + j
                if k >= len(out):
                    break
                if b:
                    out[k] = out[k] + a * b
        return OmegaSeries(low, out, T)

    __rmul__ = scale

    def truncate(self, T):
        return OmegaSeries(self.low, self.coeffs, min(T, self.T))

    def __eq__(self, other):
        if not isinstance(other, OmegaSeries):
            return NotImplemented
        if self.T != other.T:
            return False
        low = min(self.low, other.low)
        return self._widen(low) == other._widen(low)

    def __repr__(self):
        parts = [f'({c})*w^{e}' for e, c in self.terms().items() if c]
        return f'OmegaSeries({" + ".join(parts) or "0"}; T={self.T})'


def series_expand(numerator, denominator, T, low=0):
    """Expand ``omega**low * N(omega) / D(omega)`` about omega = 0 through order T.

    ``numerator`` and ``denominator`` are coefficient sequences in
    ascending powers of omega.  Leading zeros of the denominator are
    factored out as a pole; a pole of order more than one is rejected.
    """
    num = [qq(c) for c in numerator]
    den = [qq(c) for c in denominator]
    while den and den[0].is_zero():
        den.pop(0)
        low -= 1
    if not den:
        raise ZeroDivisionError('zero denominator')
    while num and num[0].is_zero():
        num.pop(0)
        low += 1
    if not num:
        return OmegaSeries(max(low, -1), [], T)
    if low < -1:
        raise ValueError('essential pole beyond order omega^-1')
    n = T - low + 1
    inv0 = den[0].inverse()
    out = []
    for j in range(max(n, 0)):
        acc = num[j] if j < len(num) else ZERO
        for i in range(1, min(j, len(den) - 1) + 1):
            if den[i] and out[j - i]:
                acc = acc - den[i] * out[j - i]
        out.append(acc * inv0)
    return OmegaSeries(low, out, T)


def poly_from_roots(roots, scale=ONE):
    """Coefficients (ascending) of prod (1 - scale*r*omega)."""
    coeffs = [ONE]
    for r in roots:
        c = -(qq(scale) * qq(r))
        nxt = coeffs + [ZERO]
        for j in range(len(coeffs)):
            nxt[j + 1] = nxt[j + 1] + c * coeffs[j]
        coeffs = nxt
    return coeffs


def random_scalar(rng, nonzero=True, spread=2, max_num=5):
    """A random scalar c*q^e with small rational c, occasionally a binomial."""
    while True:
        c = Fraction(rng.randint(-max_num, max_num), rng.randint(1, 3))
        if c or not nonzero:
            break
    x = QRational(c) * qpow(rng.randint(-spread, spread))
    if rng.random() < 0.25:
        x = x + QRational(Fraction(rng.randint(1, max_num), rng.randint(1, 3))) * qpow(rng.randint(-spread, spread))
        if nonzero and x.is_zero():
            return random_scalar(rng, nonzero, spread, max_num)
    return x
