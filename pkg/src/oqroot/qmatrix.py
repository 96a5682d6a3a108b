"""Quantum matrices O(SL_n) with generic coefficients in Q[v, v^-1].

Generators X[i,j] are ordered row-major.  A monomial is kept as the sorted
tuple of its generator indices.  Straightening uses the four commutation
families; the quantum determinant relation then removes monomials whose
diagonal exponents are all positive.

Termination: with phi(X[i,j]) = i*j summed over factors, every straightening
correction X[l,j] X[m,i] has smaller phi than X[l,i] X[m,j] (l<m, i<j), and
every non-identity permutation term of the determinant has smaller phi than
the diagonal product.  Rewriting therefore decreases (degree, phi)
lexicographically; a step budget guards against bugs anyway.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .coeff import LaurentPoly, specialize

ONE = LaurentPoly.const(1)
V = LaurentPoly.mono(1)
VINV = LaurentPoly.mono(-1)
V_MINUS_VINV = V - VINV


class StepBudgetExceeded(RuntimeError):
    pass


def _add(out: dict, key, c) -> None:
    s = out.get(key)
    s = c if s is None else s + c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def pair(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


def unpair(n: int, p: int) -> tuple[int, int]:
    return p // n + 1, p % n + 1


def _inversions(perm) -> int:
    return sum(1 for a, b in itertools.combinations(perm, 2) if a > b)


@dataclass(frozen=True)
class QMonomial:
    n: int
    factors: tuple  # sorted generator indices, repeated by multiplicity

    @classmethod
    def from_matrix(cls, M) -> "QMonomial":
        n = len(M)
        fs = []
        for i in range(n):
            for j in range(n):
                fs.extend([i * n + j] * M[i][j])
        return cls(n, tuple(fs))

    @property
    def matrix(self) -> tuple:
        M = [[0] * self.n for _ in range(self.n)]
        for p in self.factors:
            i, j = divmod(p, self.n)
            M[i][j] += 1
        return tuple(tuple(r) for r in M)

    @property
    def degree(self) -> int:
        return len(self.factors)

    def in_xi(self) -> bool:
        M = self.matrix
        return any(M[i][i] == 0 for i in range(self.n))

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join("X[%d,%d]" % unpair(self.n, p) for p in self.factors)


class QuantumMatrixAlgebra:
    """Rewriting engine for O(SL_n); caches are per instance."""

    def __init__(self, n: int, budget: int = 2_000_000):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.budget = budget
        self.steps = 0
        self._lmul: dict = {}
        self._nf: dict = {}
        self._swap = {}
        for p in range(n * n):
            for r in range(p):
                self._swap[(p, r)] = self._swap_rule(p, r)
        self.diagonal = tuple(pair(n, i, i) for i in range(1, n + 1))
        self._det_terms = []
        for perm in itertools.permutations(range(1, n + 1)):
            if list(perm) == list(range(1, n + 1)):
                continue
            word = tuple(pair(n, perm[k], k + 1) for k in range(n))
            self._det_terms.append((LaurentPoly.mono(_inversions(perm), (-1) ** _inversions(perm)), word))

    def _swap_rule(self, p: int, r: int) -> list:
        """X_p X_r with p > r as [(coeff, (a, b))] with a <= b."""
        n = self.n
        (m, j), (l, i) = unpair(n, p), unpair(n, r)
        if j == i:  # same column, l < m
            return [(VINV, (r, p))]
        if m == l:  # same row, i < j
            return [(VINV, (r, p))]
        # here l < m
        if i > j:
            return [(ONE, (r, p))]
        return [(ONE, (r, p)), (-V_MINUS_VINV, (pair(n, l, j), pair(n, m, i)))]

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise StepBudgetExceeded(f"reduction exceeded {self.budget} steps")

    # -- straightening (no determinant)
    def left_mul(self, p: int, mono: tuple) -> dict:
        key = (p, mono)
        hit = self._lmul.get(key)
        if hit is not None:
            return hit
        self._tick()
        if not mono or p <= mono[0]:
            out = {(p,) + mono: ONE}
        else:
            r, rest = mono[0], mono[1:]
            out = {}
            for c, (a, b) in self._swap[(p, r)]:
                for m2, c2 in self.left_mul(b, rest).items():
                    for m3, c3 in self.left_mul(a, m2).items():
                        _add(out, m3, c * c2 * c3)
        self._lmul[key] = out
        return out

    def straighten_word(self, word, tail: tuple = ()) -> dict:
        cur = {tail: ONE}
        for p in reversed(tuple(word)):
            nxt: dict = {}
            for m, c in cur.items():
                for m2, c2 in self.left_mul(p, m).items():
                    _add(nxt, m2, c * c2)
            cur = nxt
        return cur

    # -- determinant elimination
    def _all_diag(self, mono: tuple) -> bool:
        s = set(mono)
        return all(d in s for d in self.diagonal)

    def normal_form(self, mono: tuple) -> dict:
        hit = self._nf.get(mono)
        if hit is not None:
            return hit
        self._tick()
        if not self._all_diag(mono):
            out = {mono: ONE}
        else:
            rest = list(mono)
            for d in self.diagonal:
                rest.remove(d)
            rest = tuple(rest)
            lead = self.straighten_word(self.diagonal, rest)
            c = lead.pop(mono, None)
            if c is None or not c.is_monomial():
                raise AssertionError(f"unexpected leading coefficient {c} for {mono}")
            cinv = c ** -1
            # diag * rest = c X^M + lead;  diag = 1 - sum_{sigma != id} (-v)^l(sigma) X_sigma
            pre: dict = {rest: cinv}
            for coef, word in self._det_terms:
                for m2, c2 in self.straighten_word(word, rest).items():
                    _add(pre, m2, -cinv * coef * c2)
            for m2, c2 in lead.items():
                _add(pre, m2, -cinv * c2)
            out = {}
            for m2, c2 in pre.items():
                for m3, c3 in self.normal_form(m2).items():
                    _add(out, m3, c2 * c3)
        self._nf[mono] = out
        return out

    def reduce_terms(self, terms: dict) -> dict:
        """terms: word tuple -> coefficient; returns sorted Xi monomial -> coefficient."""
        self.steps = 0
        out: dict = {}
        for word, c in terms.items():
            for m, c2 in self.straighten_word(word).items():
                for m3, c3 in self.normal_form(m).items():
                    _add(out, m3, c * c2 * c3)
        return out


_ALGEBRAS: dict = {}


def algebra(n: int) -> QuantumMatrixAlgebra:
    if n not in _ALGEBRAS:
        _ALGEBRAS[n] = QuantumMatrixAlgebra(n)
    return _ALGEBRAS[n]


class QMatElement:
    """Combination of words in X[i,j] with Laurent coefficients."""

    def __init__(self, n: int, terms=None):
        self.n = n
        t: dict = {}
        for w, c in (terms or {}).items():
            _add(t, tuple(w), LaurentPoly.coerce(c))
        self.terms = t

    @classmethod
    def gen(cls, n: int, i: int, j: int) -> "QMatElement":
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"X[{i},{j}] out of range for n={n}")
        return cls(n, {(pair(n, i, j),): ONE})

    @classmethod
    def one(cls, n: int) -> "QMatElement":
        return cls(n, {(): ONE})

    @classmethod
    def from_monomial(cls, m: QMonomial, c=ONE) -> "QMatElement":
        return cls(m.n, {m.factors: c})

    def _check(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return QMatElement(self.n, {(): other})
        if not isinstance(other, QMatElement) or other.n != self.n:
            raise TypeError("incompatible quantum matrix elements")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _add(t, w, c)
        return QMatElement(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return QMatElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def concat(self, other: "QMatElement") -> "QMatElement":
        t: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add(t, w1 + w2, c1 * c2)
        return QMatElement(self.n, t)

    def scale(self, c) -> "QMatElement":
        return QMatElement(self.n, {w: c * x for w, x in self.terms.items()})

    def monomials(self) -> list:
        return [QMonomial(self.n, w) for w in self.terms]

    def is_normal(self) -> bool:
        return all(list(w) == sorted(w) and QMonomial(self.n, w).in_xi() for w in self.terms)

    def __eq__(self, other):
        if not isinstance(other, QMatElement):
            return NotImplemented
        return self.n == other.n and reduce(self).terms == reduce(other).terms

    def __hash__(self):
        return hash((self.n, frozenset(reduce(self).terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_element(self.n, self.terms)

    def __repr__(self):
        return f"QMatElement(n={self.n}, {str(self)!r})"

    def to_json(self) -> list:
        return [
            {"matrix": [list(r) for r in QMonomial(self.n, w).matrix], "coeff": c.to_json()}
            for w, c in sorted(self.terms.items())
        ]


def reduce(x: QMatElement) -> QMatElement:
    out = algebra(x.n).reduce_terms(x.terms)
    return QMatElement(x.n, out)


def multiply(x: QMatElement, y: QMatElement) -> QMatElement:
    return reduce(x.concat(y))


def xi_monomials(n: int, d: int) -> list:
    """Exponent matrices of total degree <= d with some zero diagonal entry."""
    out = []
    cells = n * n
    for deg in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(cells), deg):
            m = QMonomial(n, combo)
            if n == 0 or m.in_xi():
                out.append(m)
    return out


# ---------------------------------------------------------------------------
# text form


def _coeff_str(c: LaurentPoly) -> tuple[str, str]:
    """(sign, body) with body empty for coefficient +-1."""
    if c.is_monomial():
        (e, x), = c.terms.items()
        sign = "-" if x < 0 else "+"
        x = abs(x)
        num = "" if x == 1 else str(x)
        if e == 0:
            return sign, num
        pw = "v" if e == 1 else f"v^{e}"
        return sign, (num + " " + pw).strip() if num else pw
    return "+", f"({c})"


def format_element(n: int, terms: dict) -> str:
    if not terms:
        return "0"

    def order(item):
        w, _ = item
        return (len(w), w)

    parts = []
    for w, c in sorted(terms.items(), key=order):
        sign, body = _coeff_str(c)
        mono = str(QMonomial(n, w)) if w else ""
        if not mono:
            text = body or "1"
        else:
            text = f"{body} {mono}".strip()
        parts.append((sign, text))
    out = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


_TOK = re.compile(
    r"\s*(?:(?P<gen>X\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\](?:\^(?P<k>\d+))?)"
    r"|(?P<paren>\([^()]*\))"
    r"|(?P<vpow>v(?:\^\(?(?P<e>-?\d+)\)?)?)"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[+\-*]))"
)


def parse(text: str, n: int) -> QMatElement:
    """Parse e.g. "X[2,1]*X[1,1] - v^-1 X[1,1]*X[2,1]"."""
    if not text or not text.strip():
        raise ValueError("empty expression")
    pos = 0
    terms: dict = {}
    sign = 1
    coef = None
    word: list = []
    seen_any = False

    def flush():
        nonlocal coef, word, sign
        c = coef if coef is not None else ONE
        _add(terms, tuple(word), c * sign)
        coef, word, sign = None, [], 1

    pending = False
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse near {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                continue
            if pending:
                flush()
                pending = False
            sign = sign * (-1 if op == "-" else 1)
            continue
        pending = True
        seen_any = True
        if m.group("gen"):
            i, j = int(m.group("i")), int(m.group("j"))
            k = int(m.group("k") or 1)
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"X[{i},{j}] out of range for n={n}")
            word.extend([pair(n, i, j)] * k)
        elif m.group("paren"):
            c = LaurentPoly.parse(m.group("paren")[1:-1])
            coef = c if coef is None else coef * c
        elif m.group("vpow"):
            e = int(m.group("e")) if m.group("e") is not None else 1
            c = LaurentPoly.mono(e)
            coef = c if coef is None else coef * c
        else:
            c = LaurentPoly.const(Fraction(m.group("num")))
            coef = c if coef is None else coef * c
    if not seen_any:
        raise ValueError("no terms in expression")
    if pending:
        flush()
    return QMatElement(n, terms)


# ---------------------------------------------------------------------------
# checks


def random_monomial(n: int, max_deg: int, rng: random.Random) -> QMatElement:
    deg = rng.randint(0, max_deg)
    word = tuple(rng.randrange(n * n) for _ in range(deg))
    return QMatElement(n, {word: ONE})


def confluence_sample(n: int, samples: int, seed: int, max_deg: int = 3) -> list:
    """Triples (x, y, z) of random words where (xy)z != x(yz); empty means pass."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        x, y, z = (random_monomial(n, max_deg, rng) for _ in range(3))
        left = multiply(multiply(x, y), z)
        right = multiply(x, multiply(y, z))
        if left.terms != right.terms:
            bad.append((str(x), str(y), str(z)))
    return bad


def is_integral(x: QMatElement) -> bool:
    return all(all(c.denominator == 1 for c in p.terms.values()) for p in x.terms.values())


LETTER_OF = {(1, 1): "a", (1, 2): "b", (2, 1): "c", (2, 2): "d"}


def to_oq(x: QMatElement, ell: int):
    """n=2 only: X[1,1], X[1,2], X[2,1], X[2,2] -> a, b, c, d and v -> q."""
    from .oq import OqElement
    if x.n != 2:
        raise ValueError("the coordinate algebra comparison is for n=2")
    out = OqElement(ell)
    for w, c in x.terms.items():
        t = OqElement.one(ell)
        for p in w:
            t = t * OqElement.gen(LETTER_OF[unpair(2, p)], ell)
        out = out + t * specialize(c, ell)
    return out


def oq_agreement(samples: int, seed: int, ell: int = 3, max_deg: int = 3) -> list:
    """Pairs where reduce-then-specialize disagrees with the oq product."""
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        x, y = random_monomial(2, max_deg, rng), random_monomial(2, max_deg, rng)
        mine = to_oq(multiply(x, y), ell)
        ref = to_oq(x, ell) * to_oq(y, ell)
        if mine != ref:
            bad.append((str(x), str(y)))
    return bad
