"""Exact scalar arithmetic over Z[q,q^-1] and Q(q), plus q-integer combinatorics.

Every scalar in the library is a :class:`RatFunc`, a rational function in the
formal variable q kept in a canonical reduced form so that equality is
structural.  Laurent polynomials get their own class because most structure
constants live in Z[q,q^-1] and the common operations never need a gcd there.
No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class LaurentPoly:
    """Sparse Laurent polynomial in q with integer coefficients.

    Stored as a dict mapping exponent -> nonzero coefficient.  The
    representation is canonical (zero coefficients are dropped), so ``==``
    and ``hash`` are structural.  Instances are treated as immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[e] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, coeffs):
        # trusted constructor: coeffs already has no zero entries
        self = object.__new__(cls)
        self._c = coeffs
        self._hash = None
        return self

    @classmethod
    def const(cls, n):
        """The constant Laurent polynomial n."""
        return cls._raw({0: n} if n else {})

    @classmethod
    def q_power(cls, e):
        """The monomial q^e (e may be negative)."""
        return cls._raw({e: 1})

    def items(self):
        return self._c.items()

    @property
    def is_zero(self):
        return not self._c

    @property
    def is_constant(self):
        return not self._c or set(self._c) == {0}

    @property
    def is_monomial(self):
        return len(self._c) == 1

    def coeff(self, e):
        """Coefficient of q^e."""
        return self._c.get(e, 0)

    def min_exp(self):
        if not self._c:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self._c)

    def max_exp(self):
        if not self._c:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self._c)

    def content(self):
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for v in self._c.values():
            g = gcd(g, v)
        return g

    def shift(self, k):
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def subs_q_inverse(self):
        """Substitute q -> q^-1 (negate all exponents)."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def scale(self, n):
        if not n:
            return LP_ZERO
        return LaurentPoly._raw({e: n * v for e, v in self._c.items()})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            elif e in c:
                del c[e]
        return LaurentPoly._raw(c)

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return LP_ZERO
        c = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + v1 * v2
                if s:
                    c[e] = s
                elif e in c:
                    del c[e]
        return LaurentPoly._raw(c)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("LaurentPoly powers must be nonnegative integers")
        out = LP_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, q0):
        """Value at q = q0 (a nonzero Fraction or int), as a Fraction."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ZeroDivisionError("cannot specialize a Laurent polynomial at q = 0")
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * q0 ** e
        return total

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            a = abs(v)
            if e == 0:
                body = str(a)
            elif e == 1:
                body = "q" if a == 1 else "%d*q" % a
            else:
                body = "q^%d" % e if a == 1 else "%d*q^%d" % (a, e)
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append((" + " if v > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % str(self)


LP_ZERO = LaurentPoly._raw({})
LP_ONE = LaurentPoly._raw({0: 1})


def _to_frac_list(p, lo):
    """Coefficient list of p * q^-lo over Fraction, trailing zeros trimmed."""
    hi = p.max_exp()
    out = [Fraction(0)] * (hi - lo + 1)
    for e, v in p.items():
        out[e - lo] = Fraction(v)
    return out


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, b):
    """Remainder of a by b over Q[q]; coefficient lists, b nonzero."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        f = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bv in enumerate(b):
            a[i + shift] -= f * bv
        a.pop()
        _trim(a)
    return a


def _poly_gcd_primitive(a, b):
    """Primitive integer gcd (positive leading coeff) of two Fraction lists."""
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        a, b = b, _poly_mod(a, b)
    den_lcm = 1
    for v in a:
        den_lcm = den_lcm * v.denominator // gcd(den_lcm, v.denominator)
    ints = [int(v * den_lcm) for v in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return [v // g for v in ints]


def _poly_exact_div(p, lo, g):
    """Divide the Laurent polynomial p * q^-lo by the integer list g exactly."""
    a = _to_frac_list(p, lo)
    dg, lg = len(g) - 1, Fraction(g[-1])
    out = [Fraction(0)] * (len(a) - dg)
    while _trim(a):
        f = a[-1] / lg
        shift = len(a) - 1 - dg
        if shift < 0:
            raise ArithmeticError("inexact polynomial division")
        out[shift] = f
        for i, bv in enumerate(g):
            a[i + shift] -= f * bv
        a.pop()
    coeffs = {}
    for e, v in enumerate(out):
        if v:
            if v.denominator != 1:
                raise ArithmeticError("inexact polynomial division")
            coeffs[e] = int(v)
    return LaurentPoly._raw(coeffs)


def laurent_exact_div(num, den):
    """Exact quotient of two Laurent polynomials.

    Raises ArithmeticError when den does not divide num; used by
    fraction-free elimination where divisions are exact by construction.
    """
    if den.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero:
        return LP_ZERO
    dv = den.min_exp()
    g = [0] * (den.max_exp() - dv + 1)
    for e, v in den.items():
        g[e - dv] = v
    return _poly_exact_div(num, num.min_exp(), g).shift(num.min_exp() - dv)


def _canonical(num, den):
    """Reduce num/den to the canonical pair.

    The canonical denominator is an ordinary polynomial with den(0) != 0 and
    positive leading coefficient, coprime to the (shifted) numerator over
    Q[q], with gcd(content(num), content(den)) = 1.  Zero is (0, 1).
    """
    if den.is_zero:
        raise ZeroDivisionError("division by the zero scalar")
    if num.is_zero:
        return LP_ZERO, LP_ONE
    m = den.min_exp()
    den = den.shift(-m)
    num = num.shift(-m)
    v = num.min_exp()
    if not den.is_constant:
        g = _poly_gcd_primitive(_to_frac_list(num, v), _to_frac_list(den, 0))
        if len(g) > 1:
            num = _poly_exact_div(num, v, g).shift(v)
            den = _poly_exact_div(den, 0, g)
    c = gcd(num.content(), den.content())
    lead = den.coeff(den.max_exp())
    if lead < 0:
        c = -c
    if c != 1:
        num = LaurentPoly._raw({e: x // c for e, x in num.items()})
        den = LaurentPoly._raw({e: x // c for e, x in den.items()})
    return num, den


class RatFunc:
    """Element of Q(q) in canonical reduced form.

    num is a Laurent polynomial, den an ordinary polynomial with nonzero
    constant term and positive leading coefficient; the two are coprime and
    share no integer content.  Equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=LP_ONE):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if isinstance(den, int):
            den = LaurentPoly.const(den)
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _make(cls, num, den):
        # trusted constructor: (num, den) already canonical
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def from_int(cls, n):
        return cls._make(LaurentPoly.const(n), LP_ONE)

    @classmethod
    def from_fraction(cls, f):
        f = Fraction(f)
        return cls(LaurentPoly.const(f.numerator), LaurentPoly.const(f.denominator))

    @classmethod
    def q_power(cls, e):
        return cls._make(LaurentPoly.q_power(e), LP_ONE)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_laurent(self):
        """True when the scalar lies in Z[q,q^-1]."""
        return self.den == LP_ONE

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    @property
    def is_monomial(self):
        """A single term c*q^e with integer c."""
        return self.den == LP_ONE and self.num.is_monomial

    def as_laurent(self):
        if self.den != LP_ONE:
            raise ValueError("%s is not a Laurent polynomial" % self)
        return self.num

    def as_fraction(self):
        if not self.is_constant:
            raise ValueError("%s is not a constant" % self)
        return Fraction(self.num.coeff(0), self.den.coeff(0))

    def subs_q_inverse(self):
        """The image under the field map q -> q^-1."""
        return RatFunc(self.num.subs_q_inverse(), self.den.subs_q_inverse())

    def evaluate(self, q0):
        """Specialize q to a nonzero rational; debugging aid, exact Fraction out."""
        d = self.den.evaluate(q0)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at q = %s" % q0)
        return self.num.evaluate(q0) / d

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.from_int(other)
        if isinstance(other, Fraction):
            return RatFunc.from_fraction(other)
        if isinstance(other, LaurentPoly):
            return RatFunc(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == LP_ONE and o.den == LP_ONE:
            return RatFunc._make(self.num + o.num, LP_ONE)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == LP_ONE and o.den == LP_ONE:
            return RatFunc._make(self.num * o.num, LP_ONE)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by the zero scalar")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("scalar powers must be integers")
        if k < 0:
            return (ONE / self) ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero

    def __str__(self):
        if self.den == LP_ONE:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    def __repr__(self):
        return "RatFunc(%s)" % str(self)


ZERO = RatFunc.from_int(0)
ONE = RatFunc.from_int(1)
TWO = RatFunc.from_int(2)
Q = RatFunc.q_power(1)
QINV = RatFunc.q_power(-1)


def q_power(e):
    """The scalar q^e."""
    return RatFunc.q_power(e)


def q_int(n):
    """Gaussian integer [n]_q = 1 + q + ... + q^(n-1) for n >= 0."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("q_int requires a nonnegative integer, got %r" % (n,))
    return RatFunc._make(LaurentPoly._raw({e: 1 for e in range(n)}), LP_ONE)


def q_factorial(n):
    """Gaussian factorial [n]_q! = [1]_q [2]_q ... [n]_q."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("q_factorial requires a nonnegative integer, got %r" % (n,))
    out = ONE
    for i in range(2, n + 1):
        out = out * q_int(i)
    return out


def q_binomial(n, k):
    """Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n."""
    if not isinstance(n, int) or not isinstance(k, int) or n < 0:
        raise ValueError("q_binomial requires integer arguments with n >= 0")
    if k < 0 or k > n:
        return ZERO
    return q_factorial(n) / (q_factorial(k) * q_factorial(n - k))


def q_int_sym(n):
    """Symmetric quantum integer [n] = (q^-n - q^n)/(q^-1 - q), any integer n.

    For n > 0 this is q^(-n+1) + q^(-n+3) + ... + q^(n-1); the function is
    odd in n.
    """
    if not isinstance(n, int):
        raise ValueError("q_int_sym requires an integer, got %r" % (n,))
    if n == 0:
        return ZERO
    m = abs(n)
    lp = LaurentPoly._raw({e: 1 for e in range(-m + 1, m, 2)})
    if n < 0:
        if m % 2 == 0:
            lp = -lp
    return RatFunc._make(lp, LP_ONE)
