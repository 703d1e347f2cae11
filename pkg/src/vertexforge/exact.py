"""Exact coefficient field for amplitudes.

Values are rational functions in a root variable ``x`` with ``x**r == q``,
with Gaussian-rational coefficients.  Canonical form of a nonzero value is

    x**shift * num(x) / den(x)

where ``num`` and ``den`` are coprime polynomials, neither divisible by ``x``,
and ``den(0) == 1``.  Zero is ``shift=0, num=0, den=1``.

Real and imaginary parts of a polynomial are stored as two FLINT ``fmpq_poly``
objects; the imaginary half is ``None`` for real polynomials, which keeps the
common case on FLINT's fast paths.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Union

from flint import fmpq, fmpq_poly

DEFAULT_ROOT = 4

_ZERO_POLY = fmpq_poly([])
_ONE_POLY = fmpq_poly([1])


def _to_fmpq(c) -> fmpq:
    if isinstance(c, fmpq):
        return c
    c = Fraction(c)
    return fmpq(c.numerator, c.denominator)


def _to_fraction(c: fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("refusing to coerce a floating-point complex number")
        if isinstance(value, fmpq):
            return cls(_to_fraction(value))
        return cls(Fraction(value))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = GaussianRational(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}*i"


I = GaussianRational(0, 1)


def i_power(k: int) -> GaussianRational:
    """Return i**k for any integer k."""
    return (GaussianRational(1), I, GaussianRational(-1), GaussianRational(0, -1))[k % 4]


# --- polynomials over Q(i) -------------------------------------------------


class _GPoly:
    """Polynomial over the Gaussian rationals as a (real, imaginary) pair."""

    __slots__ = ("re", "im")

    def __init__(self, re: fmpq_poly, im: fmpq_poly | None = None):
        self.re = re
        self.im = None if im is None or im.is_zero() else im

    @classmethod
    def constant(cls, c: GaussianRational) -> "_GPoly":
        return cls(fmpq_poly([_to_fmpq(c.re)]), fmpq_poly([_to_fmpq(c.im)]) if c.im else None)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im is None

    def is_real(self) -> bool:
        return self.im is None

    def degree(self) -> int:
        return max(self.re.degree(), -1 if self.im is None else self.im.degree())

    def coeff(self, k: int) -> GaussianRational:
        im = self.im[k] if self.im is not None else 0
        return GaussianRational(_to_fraction(self.re[k]), _to_fraction(fmpq(im)))

    def terms(self) -> list[tuple[int, GaussianRational]]:
        out = []
        for k in range(self.degree() + 1):
            c = self.coeff(k)
            if c:
                out.append((k, c))
        return out

    def valuation(self) -> int:
        for k in range(self.degree() + 1):
            if self.re[k] != 0 or (self.im is not None and self.im[k] != 0):
                return k
        return 0

    def exponent_gcd(self) -> int:
        g = 0
        for k, _ in self.terms():
            g = gcd(g, k)
        return g

    def __add__(self, other: "_GPoly") -> "_GPoly":
        if self.im is None and other.im is None:
            return _GPoly(self.re + other.re)
        return _GPoly(self.re + other.re, _im(self) + _im(other))

    def __neg__(self) -> "_GPoly":
        return _GPoly(-self.re, None if self.im is None else -self.im)

    def __sub__(self, other: "_GPoly") -> "_GPoly":
        return self + (-other)

    def __mul__(self, other: "_GPoly") -> "_GPoly":
        a, b, c, d = self.re, self.im, other.re, other.im
        if b is None and d is None:
            return _GPoly(a * c)
        if b is None:
            return _GPoly(a * c, a * d)
        if d is None:
            return _GPoly(a * c, b * c)
        return _GPoly(a * c - b * d, a * d + b * c)

    def scale(self, c: GaussianRational) -> "_GPoly":
        re, im = _to_fmpq(c.re), _to_fmpq(c.im)
        if c.im == 0:
            return _GPoly(self.re * re, None if self.im is None else self.im * re)
        if self.im is None:
            return _GPoly(self.re * re, self.re * im)
        return _GPoly(self.re * re - self.im * im, self.re * im + self.im * re)

    def shift_right(self, k: int) -> "_GPoly":
        if k == 0:
            return self
        return _GPoly(self.re.right_shift(k), None if self.im is None else self.im.right_shift(k))

    def inflate(self, k: int) -> "_GPoly":
        """Substitute x -> x**k."""
        if k == 1:
            return self
        return _GPoly(_inflate(self.re, k), None if self.im is None else _inflate(self.im, k))

    def deflate(self, k: int) -> "_GPoly":
        if k == 1:
            return self
        return _GPoly(_deflate(self.re, k), None if self.im is None else _deflate(self.im, k))

    def leading(self) -> GaussianRational:
        return self.coeff(self.degree())

    def divmod(self, other: "_GPoly") -> tuple["_GPoly", "_GPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.im is None and other.im is None:
            q, r = divmod(self.re, other.re)
            return _GPoly(q), _GPoly(r)
        inv = other.leading().inverse()
        dq = other.degree()
        quot = _GPoly(fmpq_poly([]))
        rem = self
        while not rem.is_zero() and rem.degree() >= dq:
            k = rem.degree() - dq
            c = rem.leading() * inv
            term = _monomial(k, c)
            quot = quot + term
            rem = rem - other * term
            rem = _drop_top(rem, dq + k)
        return quot, rem

    def __floordiv__(self, other: "_GPoly") -> "_GPoly":
        if self.im is None and other.im is None:
            return _GPoly(self.re // other.re)
        return self.divmod(other)[0]

    def gcd(self, other: "_GPoly") -> "_GPoly":
        """Monic gcd."""
        if self.im is None and other.im is None:
            return _GPoly(self.re.gcd(other.re))
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a.scale(a.leading().inverse())

    def is_one(self) -> bool:
        return self.im is None and self.re.is_one()

    def __eq__(self, other) -> bool:
        return self.re == other.re and _im(self) == _im(other)

    def evaluate(self, x: GaussianRational) -> GaussianRational:
        out = GaussianRational(0)
        for k in range(self.degree(), -1, -1):
            out = out * x + self.coeff(k)
        return out

    def key(self) -> tuple:
        return tuple((k, c.re, c.im) for k, c in self.terms())


def _im(p: _GPoly) -> fmpq_poly:
    return _ZERO_POLY if p.im is None else p.im


def _monomial(k: int, c: GaussianRational) -> _GPoly:
    re = fmpq_poly([0] * k + [_to_fmpq(c.re)])
    im = fmpq_poly([0] * k + [_to_fmpq(c.im)]) if c.im else None
    return _GPoly(re, im)


def _drop_top(p: _GPoly, deg: int) -> _GPoly:
    # cancellation of the leading term is exact; truncation only guards the invariant
    return _GPoly(p.re.truncate(deg), None if p.im is None else p.im.truncate(deg))


def _inflate(p: fmpq_poly, k: int) -> fmpq_poly:
    coeffs = p.coeffs()
    if not coeffs:
        return p
    out = [0] * ((len(coeffs) - 1) * k + 1)
    for i, c in enumerate(coeffs):
        out[i * k] = c
    return fmpq_poly(out)


def _deflate(p: fmpq_poly, k: int) -> fmpq_poly:
    return fmpq_poly(p.coeffs()[::k])


# --- the field ---------------------------------------------------------------

Coercible = Union["ExactScalar", GaussianRational, int, Fraction, Rational]


class ExactScalar:
    """Element of Q(i)(x) with x = q**(1/r), kept in canonical form."""

    __slots__ = ("r", "shift", "num", "den", "_hash")

    def __init__(self, r: int, shift: int, num: _GPoly, den: _GPoly, *, _canonical: bool = False):
        if r <= 0:
            raise ValueError("root index must be positive")
        self.r = r
        self._hash = None
        if _canonical:
            self.shift, self.num, self.den = shift, num, den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.shift, self.num, self.den = 0, num, _GPoly(_ONE_POLY)
            return
        vn, vd = num.valuation(), den.valuation()
        num, den = num.shift_right(vn), den.shift_right(vd)
        shift += vn - vd
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num // g, den // g
            c0 = den.coeff(0)
            if c0 != 1:
                inv = c0.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.shift, self.num, self.den = shift, num, den

    # construction helpers

    @classmethod
    def zero(cls, r: int = DEFAULT_ROOT) -> "ExactScalar":
        return cls(r, 0, _GPoly(_ZERO_POLY), _GPoly(_ONE_POLY), _canonical=True)

    @classmethod
    def one(cls, r: int = DEFAULT_ROOT) -> "ExactScalar":
        return cls.constant(1, r)

    @classmethod
    def constant(cls, c, r: int = DEFAULT_ROOT) -> "ExactScalar":
        c = GaussianRational.coerce(c)
        if not c:
            return cls.zero(r)
        return cls(r, 0, _GPoly.constant(c), _GPoly(_ONE_POLY), _canonical=True)

    @classmethod
    def monomial(cls, k: int, c=1, r: int = DEFAULT_ROOT) -> "ExactScalar":
        """c * x**k."""
        c = GaussianRational.coerce(c)
        if not c:
            return cls.zero(r)
        return cls(r, k, _GPoly.constant(c), _GPoly(_ONE_POLY), _canonical=True)

    @classmethod
    def from_coefficients(cls, num: dict[int, object], den: dict[int, object] | None = None,
                          r: int = DEFAULT_ROOT) -> "ExactScalar":
        """Build from ``{exponent_of_x: coefficient}`` maps (exponents may be negative)."""
        n_shift, n_poly = _laurent_to_poly(num)
        d_shift, d_poly = _laurent_to_poly(den if den is not None else {0: 1})
        return cls(r, n_shift - d_shift, n_poly, d_poly)

    @classmethod
    def coerce(cls, value, r: int = DEFAULT_ROOT) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return cls.constant(value, r)

    # root-index bookkeeping

    def rebase(self, r: int) -> "ExactScalar":
        """Same value expressed with root index ``r`` (a multiple of ``self.r``)."""
        if r == self.r:
            return self
        if r % self.r:
            raise ValueError(f"cannot rebase root index {self.r} to {r}")
        k = r // self.r
        return ExactScalar(r, self.shift * k, self.num.inflate(k), self.den.inflate(k), _canonical=True)

    def reduced(self) -> "ExactScalar":
        """Same value at the smallest root index that represents it."""
        g = gcd(self.r, self.shift, self.num.exponent_gcd(), self.den.exponent_gcd())
        if g <= 1:
            return self
        return ExactScalar(self.r // g, self.shift // g, self.num.deflate(g), self.den.deflate(g),
                           _canonical=True)

    def _aligned(self, other) -> tuple["ExactScalar", "ExactScalar"]:
        other = ExactScalar.coerce(other, self.r)
        if other.r == self.r:
            return self, other
        r = lcm(self.r, other.r)
        return self.rebase(r), other.rebase(r)

    # field operations

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.r, self.shift, -self.num, self.den, _canonical=True)

    def __add__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, GaussianRational, int, Fraction)):
            return NotImplemented
        a, b = self._aligned(other)
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        s = min(a.shift, b.shift)
        an = _shift_left(a.num, a.shift - s)
        bn = _shift_left(b.num, b.shift - s)
        if a.den == b.den:
            return ExactScalar(a.r, s, an + bn, a.den)
        g = a.den.gcd(b.den)
        if g.is_one():
            return ExactScalar(a.r, s, an * b.den + bn * a.den, a.den * b.den)
        ad, bd = a.den // g, b.den // g
        return ExactScalar(a.r, s, an * bd + bn * ad, a.den * bd)

    __radd__ = __add__

    def __sub__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, GaussianRational, int, Fraction)):
            return NotImplemented
        return self + (-ExactScalar.coerce(other, self.r))

    def __rsub__(self, other) -> "ExactScalar":
        return ExactScalar.coerce(other, self.r) - self

    def __mul__(self, other) -> "ExactScalar":
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = GaussianRational.coerce(other)
            if not c:
                return ExactScalar.zero(self.r)
            if c == 1:
                return self
            return ExactScalar(self.r, self.shift, self.num.scale(c), self.den, _canonical=True)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        a, b = self._aligned(other)
        if a.is_zero() or b.is_zero():
            return ExactScalar.zero(a.r)
        n1, d1, n2, d2 = a.num, a.den, b.num, b.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 // g, d2 // g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        c0 = den.coeff(0)
        if c0 != 1:
            inv = c0.inverse()
            num, den = num.scale(inv), den.scale(inv)
        return ExactScalar(a.r, a.shift + b.shift, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in ExactScalar")
        return ExactScalar(self.r, -self.shift, self.den, self.num)

    def __truediv__(self, other) -> "ExactScalar":
        if not isinstance(other, (ExactScalar, GaussianRational, int, Fraction)):
            return NotImplemented
        other = ExactScalar.coerce(other, self.r)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "ExactScalar":
        return ExactScalar.coerce(other, self.r) * self.inverse()

    def __pow__(self, k: int) -> "ExactScalar":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = ExactScalar.one(self.r)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExactScalar, GaussianRational, int, Fraction)):
            return NotImplemented
        a, b = self._aligned(other)
        return a.shift == b.shift and a.num == b.num and a.den == b.den

    def __hash__(self) -> int:
        if self._hash is None:
            red = self.reduced()
            self._hash = hash((red.r, red.shift, red.num.key(), red.den.key()))
        return self._hash

    def __reduce__(self):
        return (_rebuild, (self.r, self.shift, self.num.key(), self.den.key()))

    # inspection

    def is_real(self) -> bool:
        """True when every coefficient of the canonical form is rational."""
        return self.num.is_real() and self.den.is_real()

    def is_gaussian_monomial_combination(self) -> bool:
        return self.den.is_one()

    def constant_value(self) -> GaussianRational | None:
        """The value as a Gaussian rational, or ``None`` if it depends on q."""
        if self.is_zero():
            return GaussianRational(0)
        if self.shift == 0 and self.num.degree() == 0 and self.den.is_one():
            return self.num.coeff(0)
        return None

    def numerator_terms(self) -> list[tuple[int, GaussianRational]]:
        """``[(exponent_of_x, coefficient)]`` of ``x**shift * num``, descending."""
        return [(k + self.shift, c) for k, c in reversed(self.num.terms())]

    def denominator_terms(self) -> list[tuple[int, GaussianRational]]:
        return list(reversed(self.den.terms()))

    def evaluate_x(self, x0) -> GaussianRational:
        """Evaluate at a rational (or Gaussian) point x = x0."""
        x0 = GaussianRational.coerce(x0)
        d = self.den.evaluate(x0)
        if not d:
            raise ZeroDivisionError("evaluation point is a pole")
        return x0 ** self.shift * self.num.evaluate(x0) / d

    def __repr__(self) -> str:
        return f"ExactScalar({render(self)!r}, r={self.r})"

    def __str__(self) -> str:
        return render(self)


def _rebuild(r, shift, num_key, den_key):
    def poly(key):
        return _laurent_to_poly({k: GaussianRational(re, im) for k, re, im in key})[1]

    return ExactScalar(r, shift, poly(num_key), poly(den_key), _canonical=True)


def _shift_left(p: _GPoly, k: int) -> _GPoly:
    if k == 0:
        return p
    return _GPoly(p.re.left_shift(k), None if p.im is None else p.im.left_shift(k))


def _laurent_to_poly(coeffs: dict[int, object]) -> tuple[int, _GPoly]:
    items = {k: GaussianRational.coerce(c) for k, c in coeffs.items()}
    items = {k: c for k, c in items.items() if c}
    if not items:
        return 0, _GPoly(_ZERO_POLY)
    low = min(items)
    top = max(items) - low
    re = [0] * (top + 1)
    im = [0] * (top + 1)
    for k, c in items.items():
        re[k - low] = _to_fmpq(c.re)
        im[k - low] = _to_fmpq(c.im)
    return low, _GPoly(fmpq_poly(re), fmpq_poly(im))


def q_power(exponent, r: int = DEFAULT_ROOT) -> ExactScalar:
    """The monomial q**exponent; the root index is raised if the exponent needs it."""
    e = Fraction(exponent)
    if r % e.denominator:
        r = lcm(r, e.denominator)
    return ExactScalar.monomial(int(e * r), 1, r)


def common_root(*values: ExactScalar) -> int:
    return lcm(*(v.r for v in values)) if values else DEFAULT_ROOT


# --- text form --------------------------------------------------------------


class ParseError(ValueError):
    """Syntax or evaluation error in a q-expression, with the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([qi])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", m.group(1), start))
        elif m.group(2):
            tokens.append(("sym", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, r: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.r = r

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> ExactScalar:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> ExactScalar:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> ExactScalar:
        value = self.unary()
        while True:
            kind, tok, pos = self.peek()
            if kind == "op" and tok in ("*", "/"):
                self.take()
                rhs = self.unary()
                if tok == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", pos)
                    value = value / rhs
            elif kind in ("sym", "num") or (kind == "op" and tok == "("):
                value = value * self.power()  # implicit multiplication
            else:
                return value

    def unary(self) -> ExactScalar:
        kind, tok, _ = self.peek()
        if kind == "op" and tok in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if tok == "-" else v
        return self.power()

    def power(self) -> ExactScalar:
        base = self.atom()
        kind, tok, pos = self.peek()
        if kind == "op" and tok == "^":
            self.take()
            e = self.exponent()
            return _raise(base, e, pos)
        return base

    def exponent(self) -> Fraction:
        kind, tok, pos = self.peek()
        if kind == "num":
            self.take()
            return Fraction(int(tok))
        if kind == "op" and tok == "-":
            self.take()
            return -self.exponent()
        if kind == "op" and tok == "(":
            self.take()
            sign = 1
            while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
                if self.take()[1] == "-":
                    sign = -sign
            n = self.take()
            if n[0] != "num":
                raise ParseError("expected integer exponent", n[2])
            value = Fraction(int(n[1]))
            if self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ParseError("expected integer denominator", d[2])
                if int(d[1]) == 0:
                    raise ParseError("zero denominator in exponent", d[2])
                value /= int(d[1])
            self.take(")")
            return sign * value
        raise ParseError("expected exponent", pos)

    def atom(self) -> ExactScalar:
        kind, tok, pos = self.take()
        if kind == "num":
            return ExactScalar.constant(int(tok), self.r)
        if kind == "sym":
            if tok == "q":
                return q_power(1, self.r)
            return ExactScalar.constant(I, self.r)
        if kind == "op" and tok == "(":
            value = self.expr()
            close = self.peek()
            if close[1] != ")":
                raise ParseError("unbalanced parenthesis, expected ')'", close[2])
            self.take()
            return value
        if kind == "end":
            raise ParseError("unexpected end of expression", pos)
        raise ParseError(f"unexpected {tok!r}", pos)


def _raise(base: ExactScalar, e: Fraction, pos: int) -> ExactScalar:
    if e.denominator == 1:
        if base.is_zero() and e < 0:
            raise ParseError("division by zero", pos)
        return base ** int(e)
    # fractional powers are only defined on q-monomials with coefficient 1
    if not (base.num.degree() == 0 and base.den.is_one() and base.num.coeff(0) == 1):
        raise ParseError("fractional power of a non-monomial", pos)
    return q_power(Fraction(base.shift, base.r) * e, base.r)


def parse_q_expression(text: str, r: int = DEFAULT_ROOT) -> ExactScalar:
    """Parse an expression in ``q`` (and ``i``) such as ``(q^4-1)/(q^(1/2)*(q-1)^3)``."""
    return _Parser(text, r).parse()


def _coef_str(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    return f"({c})"


def _power_str(k: int, r: int, variable: str) -> str:
    if variable == "x":
        e = Fraction(k)
    else:
        e = Fraction(k, r)
    if e == 0:
        return ""
    if e == 1:
        return variable
    if e.denominator == 1 and e > 0:
        return f"{variable}^{e.numerator}"
    return f"{variable}^({e})"


def _poly_str(terms: list[tuple[int, GaussianRational]], r: int, variable: str) -> str:
    out = []
    for k, c in terms:
        mono = _power_str(k, r, variable)
        negative = c.im == 0 and c.re < 0
        mag = -c if negative else c
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        if not out:
            out.append(("-" if negative else "") + body)
        else:
            out.append(("-" if negative else "+") + body)
    return "".join(out) if out else "0"


def render(v: ExactScalar, variable: str = "q") -> str:
    """Deterministic text of the canonical form.

    With ``variable="q"`` exponents are written as powers of q (fractional where
    needed) and the result parses back with :func:`parse_q_expression`.  With
    ``variable="x"`` the raw ``P(x)/Q(x)`` form over the root variable is given.
    """
    v = v.reduced() if variable == "q" else v
    num = v.numerator_terms()
    den = v.denominator_terms()
    top = _poly_str(num, v.r, variable)
    if v.den.is_one():
        return top
    if len(num) > 1:
        top = f"({top})"
    return f"{top}/({_poly_str(den, v.r, variable)})"
