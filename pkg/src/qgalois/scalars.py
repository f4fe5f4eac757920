"""Exact arithmetic in Q(q), the rational-function field in the deformation parameter q.

A value is a fraction of integer-coefficient polynomials, reduced at
construction: gcd(numerator, denominator) = 1 over Z[q] and the denominator
has a positive leading coefficient.  Equality is therefore plain structural
comparison, which the rewriting kernel relies on everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

__all__ = ["QRat", "PoleError", "ScalarParseError", "qrat", "q_power", "parse_scalar"]


class PoleError(ArithmeticError):
    """Evaluation of a rational function at a zero of its denominator."""


class ScalarParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (column {position + 1})")
        self.position = position


# ---------------------------------------------------------------------------
# dense integer polynomials as trimmed tuples, constant term first

def _trim(cs) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _content(a) -> int:
    g = 0
    for c in a:
        g = _igcd(g, abs(c))
    return g


def _divmod_frac(a, b):
    """Polynomial division over Q; a, b are tuples of Fraction, b nonzero."""
    a = list(a)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        if c:
            quo[k] = c
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    rem = _trim(a)
    return tuple(quo), rem


def _frac_to_primitive_int(a):
    """Scale a nonzero Fraction polynomial to a primitive integer polynomial
    with positive leading coefficient."""
    lcm = 1
    for c in a:
        lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in a]
    g = _content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _pgcd(a, b):
    """gcd over Z[q], positive leading coefficient, content included."""
    if not a and not b:
        return ()
    if not a:
        return b if b[-1] > 0 else _pneg(b)
    if not b:
        return a if a[-1] > 0 else _pneg(a)
    c = _igcd(_content(a), _content(b))
    fa = tuple(Fraction(x) for x in a)
    fb = tuple(Fraction(x) for x in b)
    while fb:
        _, r = _divmod_frac(fa, fb)
        fa, fb = fb, r
    g = _frac_to_primitive_int(fa)
    return tuple(x * c for x in g)


def _pdiv_exact(a, g):
    """Divide a by g exactly over Z[q]; g must divide a."""
    if not a:
        return ()
    quo, rem = _divmod_frac(tuple(Fraction(x) for x in a), tuple(Fraction(x) for x in g))
    if rem:
        raise ArithmeticError("inexact polynomial division")
    out = []
    for c in quo:
        if c.denominator != 1:
            raise ArithmeticError("inexact polynomial division")
        out.append(int(c))
    return _trim(out)


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _fmt_poly(a) -> str:
    if not a:
        return "0"
    parts = []
    for exp in range(len(a) - 1, -1, -1):
        c = a[exp]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        m = abs(c)
        if exp == 0:
            body = str(m)
        elif exp == 1:
            body = "q" if m == 1 else f"{m}*q"
        else:
            body = f"q^{exp}" if m == 1 else f"{m}*q^{exp}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


def _is_monomial(a) -> bool:
    return sum(1 for c in a if c != 0) <= 1


class QRat:
    """A rational function in q with rational coefficients, in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if isinstance(num, QRat) and den == 1:
            object.__setattr__(self, "num", num.num)
            object.__setattr__(self, "den", num.den)
            return
        n = self._coerce_poly(num)
        d = self._coerce_poly(den)
        n, d = self._reduce(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @staticmethod
    def _coerce_poly(x):
        if isinstance(x, tuple):
            return _trim(x)
        if isinstance(x, int):
            return (x,) if x else ()
        if isinstance(x, Fraction):
            raise TypeError("use QRat(f.numerator, f.denominator) for Fractions")
        if isinstance(x, QRat):
            raise TypeError("nested QRat only allowed as QRat(x)")
        raise TypeError(f"cannot build QRat from {type(x).__name__}")

    @staticmethod
    def _reduce(n, d):
        if not d:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not n:
            return (), (1,)
        g = _pgcd(n, d)
        if g != (1,):
            n = _pdiv_exact(n, g)
            d = _pdiv_exact(d, g)
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return n, d

    @classmethod
    def _make(cls, n, d):
        self = object.__new__(cls)
        n, d = cls._reduce(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)
        return self

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = qrat(other)
        return QRat._make(_padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
                          _pmul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = qrat(other)
        return QRat._make(_padd(_pmul(self.num, other.den), _pneg(_pmul(other.num, self.den))),
                          _pmul(self.den, other.den))

    def __rsub__(self, other):
        return qrat(other) - self

    def __neg__(self):
        return QRat._make(_pneg(self.num), self.den)

    def __mul__(self, other):
        other = qrat(other)
        return QRat._make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = qrat(other)
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        return QRat._make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return qrat(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k == 0:
            return QRat(1)
        base = self
        if k < 0:
            if not self.num:
                raise ZeroDivisionError("zero has no negative powers")
            base = QRat._make(self.den, self.num)
            k = -k
        out = QRat(1)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = qrat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_negative(self) -> bool:
        """Sign of the leading numerator coefficient (denominator is positive)."""
        return bool(self.num) and self.num[-1] < 0

    def __abs__(self):
        return -self if self.is_negative else self

    def evaluate(self, q0) -> Fraction:
        """Exact specialization at a rational point; raises PoleError at poles."""
        q0 = Fraction(q0)
        d = _peval(self.den, q0)
        if d == 0:
            raise PoleError(f"pole at q = {q0}")
        return _peval(self.num, q0) / d

    # -- formatting ---------------------------------------------------------

    def __str__(self):
        if self.den == (1,):
            return _fmt_poly(self.num)
        ns = _fmt_poly(self.num)
        if not _is_monomial(self.num):
            ns = f"({ns})"
        ds = _fmt_poly(self.den)
        if not (_is_monomial(self.den) and (len(self.den) == 1 or self.den[-1] == 1)):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"QRat({self})"


def qrat(x) -> QRat:
    """Coerce int, Fraction or QRat to QRat."""
    if isinstance(x, QRat):
        return x
    if isinstance(x, int):
        return QRat(x)
    if isinstance(x, Fraction):
        return QRat((x.numerator,), (x.denominator,))
    raise TypeError(f"cannot coerce {type(x).__name__} to QRat")


def q_power(k: int = 1) -> QRat:
    """The monomial q^k, k possibly negative."""
    if k >= 0:
        return QRat(tuple([0] * k + [1]))
    return QRat((1,), tuple([0] * (-k) + [1]))


# ---------------------------------------------------------------------------
# scalar grammar: integers, q, + - * /, ^ with integer exponents, parentheses

_OPS = set("+-*/^()")


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "q" and (i + 1 == n or not (text[i + 1].isalnum() or text[i + 1] == "_")):
            toks.append(("q", "q", i))
            i += 1
            continue
        if ch in _OPS:
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ScalarParseError(f"unexpected character {ch!r}", i)
    return toks


class _ScalarParser:
    def __init__(self, toks, length):
        self.toks = toks
        self.pos = 0
        self.length = length

    def _peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, self.length)

    def _next(self):
        t = self._peek()
        self.pos += 1
        return t

    def parse(self) -> QRat:
        v = self.expr()
        kind, _, at = self._peek()
        if kind is not None:
            raise ScalarParseError("trailing input", at)
        return v

    def expr(self) -> QRat:
        v = self.term()
        while True:
            kind, _, _ = self._peek()
            if kind == "+":
                self._next()
                v = v + self.term()
            elif kind == "-":
                self._next()
                v = v - self.term()
            else:
                return v

    def term(self) -> QRat:
        v = self.unary()
        while True:
            kind, _, at = self._peek()
            if kind == "*":
                self._next()
                v = v * self.unary()
            elif kind == "/":
                self._next()
                d = self.unary()
                if d.is_zero:
                    raise ScalarParseError("division by zero", at)
                v = v / d
            else:
                return v

    def unary(self) -> QRat:
        kind, _, _ = self._peek()
        if kind == "-":
            self._next()
            return -self.unary()
        if kind == "+":
            self._next()
            return self.unary()
        return self.power()

    def power(self) -> QRat:
        v = self.atom()
        kind, _, at = self._peek()
        if kind == "^":
            self._next()
            sign = 1
            kind, val, at = self._next()
            if kind == "-":
                sign = -1
                kind, val, at = self._next()
            if kind != "int":
                raise ScalarParseError("integer exponent expected after '^'", at)
            if v.is_zero and sign < 0:
                raise ScalarParseError("negative power of zero", at)
            v = v ** (sign * val)
        return v

    def atom(self) -> QRat:
        kind, val, at = self._next()
        if kind == "int":
            return QRat(val)
        if kind == "q":
            return q_power(1)
        if kind == "(":
            v = self.expr()
            kind, _, at = self._next()
            if kind != ")":
                raise ScalarParseError("expected ')'", at)
            return v
        raise ScalarParseError("expected integer, 'q' or '('", at)


def parse_scalar(text: str) -> QRat:
    """Parse a scalar expression in the shared grammar into canonical form."""
    return _ScalarParser(_tokenize(text), len(text)).parse()


def needs_parens(s: str) -> bool:
    """Whether a formatted scalar must be parenthesized in coefficient position."""
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return True
    return False
