"""Exact coefficient rings: Q[v, v^-1], Q(v) and the cyclotomic fields Q(q).

Everything here is exact.  Laurent polynomials are sparse maps from exponent
to :class:`~fractions.Fraction`; cyclotomic numbers are integer coefficient
vectors with a common denominator, reduced modulo the cyclotomic polynomial
after every operation so that equality is plain coefficient comparison.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# dense polynomials over Q (lists of Fractions, lowest degree first)


def _ptrim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    _ptrim(r)
    if len(r) < len(b):
        return [], r
    lead = Fraction(b[-1])
    qt = [Fraction(0)] * (len(r) - len(b) + 1)
    for k in range(len(r) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        qt[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _ptrim(qt), _ptrim(r[: len(b) - 1])


def _pgcd(a: list, b: list) -> list:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


@lru_cache(maxsize=None)
def cyclotomic_poly(ell: int) -> tuple[int, ...]:
    """Integer coefficients (lowest first) of the ell-th cyclotomic polynomial.

    Computed recursively as (v^ell - 1) / prod_{d | ell, d < ell} Phi_d.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    num = [Fraction(-1)] + [Fraction(0)] * (ell - 1) + [Fraction(1)]
    for d in range(1, ell):
        if ell % d == 0:
            num, rem = _pdivmod(num, [Fraction(c) for c in cyclotomic_poly(d)])
            assert not rem
    assert all(c.denominator == 1 for c in num)
    return tuple(int(c) for c in num)


# ---------------------------------------------------------------------------
# Laurent polynomials


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:\(?\s*(?P<coef>\d+(?:/\d+)?)\s*\)?)?
        \s*\*?\s*
        (?:(?P<var>[a-z])(?:\^(?P<exp>-?\d+))?)?\s*""",
    re.X,
)


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_sparse(terms: dict, var: str) -> str:
    """Render {exponent: Fraction} as 'v^4 + 2 - 3/2*v^-2' (descending exponents)."""
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _fmt_frac(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{_fmt_frac(a)}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _parse_sparse(text: str, var: str) -> dict:
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        if m.group("coef") is None and m.group("var") is None:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at position {pos}")
        if m.group("var") is not None and m.group("var") != var:
            raise ValueError(f"unknown variable {m.group('var')!r}")
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = 0
        if m.group("var"):
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return {e: c for e, c in terms.items() if c}


class LaurentPoly:
    """Element of Q[v, v^-1] stored as a sparse {exponent: Fraction} map."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in dict(terms).items():
                c = Fraction(c)
                if c:
                    t[int(e)] = c
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def mono(cls, e: int, c: Rational = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = LaurentPoly.coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({e: c * other for e, c in self.terms.items()})
        other = LaurentPoly.coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                t[e1 + e2] = t.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible in Q[v, v^-1]")
            (e, c), = self.terms.items()
            return LaurentPoly.mono(-e * (-n), Fraction(1) / c ** (-n))
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def at(self, x: Rational) -> Fraction:
        """Evaluate at a nonzero rational value of v."""
        x = Fraction(x)
        return sum((c * x**e for e, c in self.terms.items()), Fraction(0))

    def _dense(self) -> tuple[int, list]:
        lo = self.min_exp()
        d = [Fraction(0)] * (self.max_exp() - lo + 1)
        for e, c in self.terms.items():
            d[e - lo] = c
        return lo, d

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Q[v, v^-1]; raises ArithmeticError if inexact."""
        other = LaurentPoly.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly()
        lo_a, a = self._dense()
        lo_b, b = other._dense()
        qt, r = _pdivmod(a, b)
        if r:
            raise ArithmeticError(f"inexact division of ({self}) by ({other})")
        return LaurentPoly({lo_a - lo_b + i: c for i, c in enumerate(qt)})

    def __str__(self):
        return _format_sparse(self.terms, "v")

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return cls._raw(_parse_sparse(text, "v"))

    def to_json(self) -> list:
        return [[e, c.numerator, c.denominator] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in data})


V = LaurentPoly.mono(1)


class RationalFn:
    """Element of Q(v) as a reduced fraction of Laurent polynomials.

    Normal form: the denominator is a monic polynomial in v with nonzero
    constant term; the numerator carries all powers of v and the content.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = LaurentPoly(), LaurentPoly.const(1)
            return
        lo_n, n = num._dense()
        lo_d, d = den._dense()
        g = _pgcd(n, d)
        n, _ = _pdivmod(n, g)
        d, _ = _pdivmod(d, g)
        lead = d[-1]
        n = [c / lead for c in n]
        d = [c / lead for c in d]
        self.num = LaurentPoly({lo_n - lo_d + i: c for i, c in enumerate(n)})
        self.den = LaurentPoly({i: c for i, c in enumerate(d)})

    @classmethod
    def coerce(cls, x) -> "RationalFn":
        return x if isinstance(x, RationalFn) else cls(x)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            try:
                other = RationalFn.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        o = RationalFn.coerce(other)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFn.coerce(other))

    def __rsub__(self, other):
        return RationalFn.coerce(other) - self

    def __mul__(self, other):
        o = RationalFn.coerce(other)
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFn.coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero in Q(v)")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFn.coerce(other) / self

    def is_laurent(self) -> bool:
        return self.den == LaurentPoly.const(1)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ArithmeticError(f"{self} is not a Laurent polynomial")
        return self.num

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Gaussian integers, factorials and binomials (balanced convention)


@lru_cache(maxsize=None)
def gauss_int(n: int) -> LaurentPoly:
    """[n] = (v^n - v^-n)/(v - v^-1) = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    if n < 0:
        return -gauss_int(-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


@lru_cache(maxsize=None)
def gauss_factorial(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError("factorial of a negative integer")
    out = LaurentPoly.const(1)
    for k in range(1, m + 1):
        out = out * gauss_int(k)
    return out


@lru_cache(maxsize=None)
def gauss_binom(n: int, m: int) -> LaurentPoly:
    """prod_{j=1}^m (v^(n-j+1) - v^(-n+j-1)) / (v^j - v^-j), asserted to lie in Q[v, v^-1]."""
    if m < 0:
        raise ValueError("binomial with negative lower index")
    num = LaurentPoly.const(1)
    den = LaurentPoly.const(1)
    for j in range(1, m + 1):
        num = num * (LaurentPoly.mono(n - j + 1) - LaurentPoly.mono(-n + j - 1))
        den = den * (LaurentPoly.mono(j) - LaurentPoly.mono(-j))
    if not num:
        return LaurentPoly()
    # divexact raises if the product formula is not integral
    return num.divexact(den)


# ---------------------------------------------------------------------------
# cyclotomic fields


class CyclotomicField:
    """The field Q(q) = Q[v]/(Phi_ell(v)) for odd ell >= 3."""

    def __init__(self, ell: int):
        if ell < 3 or ell % 2 == 0:
            raise ValueError(f"ell must be odd and >= 3, got {ell}")
        self.ell = ell
        self.phi = tuple(cyclotomic_poly(ell))
        self.deg = len(self.phi) - 1
        d = self.deg
        # integer reductions of x^k mod Phi for d <= k < max(2d - 1, ell)
        red = {}
        cur = [0] * d
        top = max(2 * d - 1, ell + 1)
        for k in range(d, top):
            if k == d:
                cur = [-c for c in self.phi[:d]]
            else:
                hi = cur[-1]
                cur = [0] + cur[:-1]
                if hi:
                    cur = [cur[i] - hi * self.phi[i] for i in range(d)]
            red[k] = tuple(cur)
        self._red = red
        self._qpow = {}
        self.zero = Cyc(self, (0,) * d, 1)
        self.one = self(1)

    def __repr__(self):
        return f"CyclotomicField({self.ell})"

    def __call__(self, x) -> "Cyc":
        if isinstance(x, Cyc):
            if x.field is not self:
                raise ValueError("element of a different cyclotomic field")
            return x
        if isinstance(x, LaurentPoly):
            return specialize(x, self.ell)
        x = Fraction(x)
        nums = [0] * self.deg
        nums[0] = x.numerator
        return Cyc(self, tuple(nums), x.denominator)

    def reduce_vector(self, coeffs: Iterable[Rational]) -> "Cyc":
        """Class of sum coeffs[k] v^k modulo Phi_ell."""
        cs = [Fraction(c) for c in coeffs]
        den = 1
        for c in cs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in cs]
        return Cyc._make(self, self._reduce_ints(ints), den)

    def _reduce_ints(self, ints: list) -> list:
        d = self.deg
        if len(ints) <= d:
            return list(ints) + [0] * (d - len(ints))
        out = list(ints[:d])
        red = self._red
        for k in range(d, len(ints)):
            c = ints[k]
            if c:
                r = red.get(k)
                if r is None:
                    r = self._red_of(k)
                for i in range(d):
                    out[i] += c * r[i]
        return out

    def _red_of(self, k: int) -> tuple:
        k0 = k % self.ell
        if k0 < self.deg:
            v = [0] * self.deg
            v[k0] = 1
            return tuple(v)
        return self._red[k0]

    def q(self, e: int = 1) -> "Cyc":
        """q**e for any integer e."""
        e %= self.ell
        out = self._qpow.get(e)
        if out is None:
            v = [0] * self.deg
            if e < self.deg:
                v[e] = 1
            else:
                v = list(self._red[e])
            out = Cyc(self, tuple(v), 1)
            self._qpow[e] = out
        return out


@lru_cache(maxsize=None)
def field(ell: int) -> CyclotomicField:
    return CyclotomicField(ell)


class Cyc:
    """Element of Q(q) as an integer vector over 1, q, ..., q^(d-1) and a denominator."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: CyclotomicField, num: tuple, den: int):
        self.field = fld
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _make(fld: CyclotomicField, nums: list, den: int) -> "Cyc":
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = math.gcd(den, *nums)
        if g == 0:
            return fld.zero
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
        return Cyc(fld, tuple(nums), den)

    @property
    def ell(self) -> int:
        return self.field.ell

    def _coerce(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.field is not self.field:
                raise ValueError("mixing different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        if isinstance(other, LaurentPoly):
            return specialize(other, self.field.ell)
        raise TypeError(f"cannot coerce {type(other).__name__} into Q(q)")

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.ell, self.num, self.den))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        o = self._coerce(other)
        if self.den == o.den:
            return Cyc._make(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        da, db = self.den, o.den
        return Cyc._make(self.field, [a * db + b * da for a, b in zip(self.num, o.num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, tuple(-a for a in self.num), self.den)

    def __sub__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        if isinstance(other, int):
            if other == 0:
                return self.field.zero
            return Cyc._make(self.field, [a * other for a in self.num], self.den)
        o = self._coerce(other)
        a, b = self.num, o.num
        d = len(a)
        conv = [0] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if x:
                for j in range(d):
                    y = b[j]
                    if y:
                        conv[i + j] += x * y
        return Cyc._make(self.field, self.field._reduce_ints(conv), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Inverse by the extended Euclidean algorithm against Phi_ell."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        fld = self.field
        r0 = [Fraction(c) for c in fld.phi]
        r1 = _ptrim([Fraction(x, self.den) for x in self.num])
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            qt, r = _pdivmod(r0, r1)
            s = _psub(s0, _pmul(qt, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        # r1 is a nonzero constant c with s1 * x == c mod Phi
        c = r1[0]
        return fld.reduce_vector([x / c for x in s1])

    def __truediv__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def coeffs(self) -> list:
        return [Fraction(a, self.den) for a in self.num]

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __str__(self):
        return _format_sparse({i: c for i, c in enumerate(self.coeffs()) if c}, "q")

    def __repr__(self):
        return f"Cyc[{self.field.ell}]({self})"

    def to_json(self) -> list:
        return [[i, c.numerator, c.denominator] for i, c in enumerate(self.coeffs()) if c]

    @classmethod
    def from_json(cls, data, ell: int) -> "Cyc":
        fld = field(ell)
        v = [Fraction(0)] * fld.deg
        for i, n, d in data:
            v[int(i)] += Fraction(int(n), int(d))
        return fld.reduce_vector(v)

    @classmethod
    def parse(cls, text: str, ell: int) -> "Cyc":
        """Parse 'q^2 - 1/2*q + 3' (any integer exponents, reduced mod Phi_ell)."""
        terms = _parse_sparse(text, "q")
        fld = field(ell)
        out = fld.zero
        for e, c in terms.items():
            out = out + fld.q(e) * c
        return out


def _psub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _ptrim([Fraction(x) for x in out])


def specialize(p: LaurentPoly, ell: int) -> Cyc:
    """Ring map Q[v, v^-1] -> Q(q), v -> q."""
    fld = field(ell)
    p = LaurentPoly.coerce(p)
    if not p:
        return fld.zero
    v = [Fraction(0)] * ell
    for e, c in p.terms.items():
        v[e % ell] += c
    return fld.reduce_vector(v)


def gauss_binom_q(n: int, m: int, ell: int) -> Cyc:
    return _gauss_binom_q(n, m, ell)


@lru_cache(maxsize=None)
def _gauss_binom_q(n: int, m: int, ell: int) -> Cyc:
    return specialize(gauss_binom(n, m), ell)


_SCALARS = (Cyc, int, Fraction, LaurentPoly)
