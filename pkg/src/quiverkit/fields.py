"""Exact scalars, dense univariate polynomials, rational functions and
square matrices over either.

The ground field is ``QQ`` (``fractions.Fraction``) or ``GF(p)`` for a prime
``p < 2**31``.  All values are immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import ParseError

__all__ = [
    "QQ", "GF", "Fp", "PrimeField", "Rationals", "parse_field",
    "Poly", "RatFunc", "ratfunc_normalize", "poly_gcd", "poly_lcm",
    "PolyMatrix", "RatMatrix", "mat_mul", "parse_ratfunc",
]


class Rationals:
    characteristic = 0
    name = "QQ"

    def __call__(self, value):
        if isinstance(value, Fp):
            raise TypeError("cannot coerce a GF(p) element into QQ")
        if isinstance(value, Fraction):
            return value
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def spec(self):
        return "q"


QQ = Rationals()


class Fp:
    """Element of GF(p) stored as its canonical representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise TypeError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            den = other.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes in GF({self.p})")
            return other.numerator * pow(den, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero")
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


class PrimeField:
    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"{p!r} is not a prime")
        if p >= 2**31:
            raise ValueError("prime must be below 2**31")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value):
        if isinstance(value, Fp):
            if value.p != self.p:
                raise TypeError(f"mixing GF({self.p}) and GF({value.p})")
            return value
        if isinstance(value, int):
            return Fp(value, self.p)
        if isinstance(value, Fraction):
            return Fp(0, self.p) + value
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def spec(self):
        return f"fp:{self.p}"


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def parse_field(text):
    """``"q"`` for the rationals, ``"fp:<p>"`` for GF(p)."""
    text = text.strip()
    if text.lower() in ("q", "qq"):
        return QQ
    m = re.fullmatch(r"fp:(\d+)", text)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<prime>'")


def _format_scalar(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def _is_negative(c):
    return isinstance(c, Fraction) and c < 0


# --------------------------------------------------------------------------
# polynomials

class Poly:
    """Dense polynomial in ``x``; ``coeffs[k]`` is the coefficient of x^k."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs=(), field=QQ):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.field = field

    @classmethod
    def _raw(cls, coeffs, field):
        # coeffs already coerced; trims trailing zeros only
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.field = field
        return obj

    @classmethod
    def zero(cls, field=QQ):
        return cls._raw((), field)

    @classmethod
    def one(cls, field=QQ):
        return cls._raw((field.one,), field)

    @classmethod
    def constant(cls, c, field=QQ):
        return cls._raw((field(c),), field)

    @classmethod
    def x(cls, field=QQ):
        return cls._raw((field.zero, field.one), field)

    @classmethod
    def monomial(cls, c, degree, field=QQ):
        return cls._raw((field.zero,) * degree + (field(c),), field)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise TypeError("polynomials over different fields")
            return other
        if isinstance(other, (int, Fraction, Fp)):
            return Poly._raw((self.field(other),), self.field)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs], self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw((), self.field)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return Poly._raw(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        db = other.degree
        inv = self.field.one / other.lc
        if len(rem) - 1 < db:
            return Poly._raw((), self.field), self
        quot = [self.field.zero] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quot[k] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * bj
        return Poly._raw(quot, self.field), Poly._raw(rem[:db], self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True when ``self`` divides ``other``."""
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.field.one / self.lc
        return Poly._raw([c * inv for c in self.coeffs], self.field)

    def scale(self, c):
        c = self.field(c)
        return Poly._raw([a * c for a in self.coeffs], self.field)

    def shift(self, k):
        """Multiply by x**k."""
        if not self.coeffs or k == 0:
            return self
        return Poly._raw((self.field.zero,) * k + self.coeffs, self.field)

    def valuation(self):
        """Largest k with x**k dividing self (zero polynomial: None)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def __call__(self, point):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Fp)):
            return self.coeffs == Poly.constant(other, self.field).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({str(self)!r}, {self.field!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            neg = _is_negative(c)
            mag = -c if neg else c
            if k == 0:
                body = _format_scalar(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{_format_scalar(mag)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def poly_gcd(a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_lcm(a, b):
    if not a.coeffs or not b.coeffs:
        raise ZeroDivisionError("lcm of the zero polynomial")
    return ((a * b) // poly_gcd(a, b)).monic()


# --------------------------------------------------------------------------
# rational functions

class RatFunc:
    """Fraction num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.field)
        if not den.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if num.field != den.field:
            raise TypeError("numerator and denominator over different fields")
        if not num.coeffs:
            self.num = num
            self.den = Poly.one(num.field)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lc = den.lc
        if lc != 1:
            inv = num.field.one / lc
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def zero(cls, field=QQ):
        return cls(Poly.zero(field))

    @classmethod
    def one(cls, field=QQ):
        return cls(Poly.one(field))

    @classmethod
    def x(cls, field=QQ):
        return cls(Poly.x(field))

    def is_zero(self):
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_polynomial(self):
        return self.den.degree == 0

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, Fp)):
            return RatFunc(Poly.constant(other, self.field))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.num.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if k < 0:
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __call__(self, point):
        d = self.den(point)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(point) / d

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return self == lifted

    def __hash__(self):
        return hash(("RatFunc", self.num, self.den))

    def __repr__(self):
        return f"RatFunc({str(self)!r})"

    def __str__(self):
        n = str(self.num)
        if self.den.degree == 0:
            return n
        d = str(self.den)
        if " " in n:
            n = f"({n})"
        if not re.fullmatch(r"x(\^\d+)?|\d+", d):
            d = f"({d})"
        return f"{n}/{d}"


def ratfunc_normalize(num, den):
    return RatFunc(num, den)


# --------------------------------------------------------------------------
# square matrices

class _SquareMatrix:
    entry_type = None

    __slots__ = ("rows", "field")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrix size must be at least 1")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        field = None
        for r in rows:
            for e in r:
                if not isinstance(e, self.entry_type):
                    raise TypeError(f"entry {e!r} is not a {self.entry_type.__name__}")
                if field is None:
                    field = e.field
                elif e.field != field:
                    raise TypeError("entries over different fields")
        self.rows = rows
        self.field = field

    @property
    def size(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def zeros(cls, n, field=QQ):
        z = cls.entry_type.zero(field)
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, n, field=QQ):
        z, o = cls.entry_type.zero(field), cls.entry_type.one(field)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def elementary(cls, n, i, j, entry=None, field=QQ):
        z = cls.entry_type.zero(field)
        if entry is None:
            entry = cls.entry_type.one(field)
        rows = [[z] * n for _ in range(n)]
        rows[i][j] = entry
        return cls(rows)

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError("matrices over different coefficient rings")
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other):
        self._check(other)
        return type(self)([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return type(self)([[a - b for a, b in zip(r, s)]
                           for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.rows])

    def scale(self, c):
        return type(self)([[a * c for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, _SquareMatrix):
            return mat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self):
        return not any(e for r in self.rows for e in r)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash((type(self).__name__, self.rows))

    def __repr__(self):
        return f"{type(self).__name__}({[[str(e) for e in r] for r in self.rows]})"

    def to_text(self):
        """One line per row, entries separated by ', '."""
        return "\n".join(", ".join(str(e) for e in r) for r in self.rows)


class PolyMatrix(_SquareMatrix):
    entry_type = Poly
    __slots__ = ()

    def to_rat(self):
        return RatMatrix([[RatFunc(e) for e in r] for r in self.rows])


class RatMatrix(_SquareMatrix):
    entry_type = RatFunc
    __slots__ = ()


def mat_mul(A, B):
    A._check(B)
    n = A.size
    zero = A.entry_type.zero(A.field)
    cols = list(zip(*B.rows))
    out = []
    for r in A.rows:
        row = []
        for c in cols:
            acc = zero
            for a, b in zip(r, c):
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return type(A)(out) if n else A


# --------------------------------------------------------------------------
# parsing "1/(x^2 - 1) + 3/2*x" style expressions

_RF_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|([-+*/^()]))")


def parse_ratfunc(text, field=QQ):
    """Parse a rational function in ``x`` with + - * / ^ and parentheses."""
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _RF_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             1, pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip())))
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start + 1))
        pos = m.end()
    tokens.append(("", len(text) + 1))
    idx = 0

    def peek():
        return tokens[idx][0]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expect(t):
        tok = take()
        if tok[0] != t:
            raise ParseError(f"expected {t!r}, found {tok[0] or 'end of input'!r}", 1, tok[1])

    def expr():
        neg = False
        if peek() in ("+", "-"):
            neg = take()[0] == "-"
        acc = term()
        if neg:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while True:
            t = peek()
            if t in ("*", "/"):
                take()
                rhs = power()
                if t == "*":
                    acc = acc * rhs
                else:
                    if not rhs:
                        raise ParseError("division by zero polynomial", 1, tokens[idx - 1][1])
                    acc = acc / rhs
            elif t == "x" or t == "(" or t.isdigit():
                acc = acc * power()
            else:
                return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            tok = take()
            if not tok[0].isdigit():
                raise ParseError("exponent must be a non-negative integer", 1, tok[1])
            base = base ** int(tok[0])
        return base

    def atom():
        tok = take()
        t = tok[0]
        if t.isdigit():
            return RatFunc(Poly.constant(int(t), field))
        if t == "x":
            return RatFunc.x(field)
        if t == "(":
            v = expr()
            expect(")")
            return v
        if t == "-":
            return -power()
        raise ParseError(f"unexpected {t or 'end of input'!r}", 1, tok[1])

    if len(tokens) == 1:
        raise ParseError("empty expression", 1, 1)
    value = expr()
    if peek() != "":
        raise ParseError(f"unexpected {peek()!r}", 1, tokens[idx][1])
    return value
