"""Finite-dimensional modules for quantum sl2 at an odd root of unity.

A :class:`Rep` is a weight-graded Q(q)-module whose generator matrices are
computed on demand.  The operators for E(j), F(j) on tensor products and on
duals come from a generic-v derivation (quantum-plane expansion for the
coproduct, normal ordering of K for the antipode) followed by specialization
v -> q.  Every construction also records how the module sits inside tensor
powers of V_1; the oq module turns that chain into matrix coefficients.
"""

from __future__ import annotations

import json
import os
import random
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path

from .coeff import (
    Cyc,
    LaurentPoly,
    field,
    gauss_binom_q,
    gauss_factorial,
    gauss_int,
    specialize,
)
from .linalg import (
    GradedSpan,
    SMat,
    left_inverse,
    nullspace,
    rank,
)
from .weights import sl2_prime


# ---------------------------------------------------------------------------
# generators and algebra elements


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    kind: str  # "E", "F", "K", "Kinv", "KBinom"
    j: int = 0  # divided power, or t for KBinom
    c: int = 0  # shift for KBinom

    def __post_init__(self):
        if self.kind not in ("E", "F", "K", "Kinv", "KBinom"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.j < 0:
            raise ValueError("negative divided power")

    @property
    def is_toral(self) -> bool:
        return self.kind in ("K", "Kinv", "KBinom")

    def __str__(self):
        if self.kind in ("E", "F"):
            return f"{self.kind}({self.j})"
        if self.kind == "KBinom":
            return f"KBinom({self.c},{self.j})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "GeneratorSymbol":
        t = text.strip()
        if t in ("K", "Kinv"):
            return cls(t)
        m = re.fullmatch(r"([EF])(?:\((\d+)\))?", t)
        if m:
            return cls(m.group(1), int(m.group(2) or 1))
        m = re.fullmatch(r"KBinom\((-?\d+),\s*(\d+)\)", t)
        if m:
            return cls("KBinom", int(m.group(2)), int(m.group(1)))
        raise ValueError(f"cannot parse generator {text!r}")


def E(j: int = 1) -> GeneratorSymbol:
    return GeneratorSymbol("E", j)


def F(j: int = 1) -> GeneratorSymbol:
    return GeneratorSymbol("F", j)


K = GeneratorSymbol("K")
KINV = GeneratorSymbol("Kinv")


def KBinom(c: int, t: int) -> GeneratorSymbol:
    return GeneratorSymbol("KBinom", t, c)


def generating_set(ell: int) -> list[GeneratorSymbol]:
    """G = {E(1), F(1), K, Kinv, E(ell), F(ell), KBinom(0, ell)}."""
    return [E(1), F(1), K, KINV, E(ell), F(ell), KBinom(0, ell)]


class AlgebraElement:
    """Formal combination of words in generator symbols with Q(q) coefficients."""

    __slots__ = ("ell", "terms")

    def __init__(self, ell: int, terms=None):
        self.ell = ell
        fld = field(ell)
        self.terms: dict = {}
        for w, c in (terms or {}).items():
            c = fld(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def word(cls, ell: int, *symbols: GeneratorSymbol, coeff=1) -> "AlgebraElement":
        return cls(ell, {tuple(symbols): coeff})

    @classmethod
    def one(cls, ell: int) -> "AlgebraElement":
        return cls(ell, {(): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return AlgebraElement(self.ell, out)

    def __neg__(self):
        return AlgebraElement(self.ell, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return AlgebraElement(self.ell, {w: c * other for w, c in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w)
                out[w] = c1 * c2 if s is None else s + c1 * c2
        return AlgebraElement(self.ell, out)

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: [str(s) for s in t[0]]):
            word = "*".join(map(str, w)) or "1"
            parts.append(f"({c})*{word}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# generic-v derivations


def _wX(kind: str) -> int:
    """K X K^-1 = v^wX X."""
    return 2 if kind == "E" else -2


def normal_order_K(factors: list, kind: str, side: str) -> tuple[int, int, int]:
    """Move every K power in a word of X's and K^a's to one side.

    ``factors`` is a list of ("X", 1) or ("K", a).  Returns (v exponent, total
    K power, number of X) with word = v^e K^A X^B (side "left") or
    v^e X^B K^A (side "right").
    """
    w = _wX(kind)
    e = A = B = 0
    for f, a in factors:
        if f == "X":
            if side == "right":
                e += A * w  # K^A X = v^{A w} X K^A
            B += 1
        else:
            if side == "left":
                e += -a * w * B  # X^B K^a = v^{-a w B} K^a X^B
            A += a
    return e, A, B


@lru_cache(maxsize=None)
def antipode_divided(kind: str, j: int, inverse: bool = False) -> tuple[int, int, int, str]:
    """S(X^(j)) (or S^-1) as sign * v^e * (K^A X^(j) or X^(j) K^A).

    Derived from S(E) = -K^-1 E, S(F) = -F K, S^-1(E) = -E K^-1, S^-1(F) = -K F
    by normal ordering the j-th power; dividing by [j]! is then exact.
    Returns (sign, e, A, side) where side says where K^A sits.
    """
    if kind == "E":
        one = [("X", 1), ("K", -1)] if inverse else [("K", -1), ("X", 1)]
        side = "right" if inverse else "left"
    else:
        one = [("K", 1), ("X", 1)] if inverse else [("X", 1), ("K", 1)]
        side = "left" if inverse else "right"
    e, A, B = normal_order_K(one * j, kind, side)
    assert B == j
    return ((-1) ** j, e, A, side)


@lru_cache(maxsize=None)
def qplane_power(j: int, c: int) -> dict:
    """Coefficients of (x + y)^j = sum c_rs x^r y^s in the plane yx = v^c xy."""
    cur = {(0, 0): LaurentPoly.const(1)}
    for _ in range(j):
        nxt: dict = {}
        for (r, s), coef in cur.items():
            # x^r y^s * x = v^{c s} x^{r+1} y^s
            t = coef * LaurentPoly.mono(c * s)
            nxt[(r + 1, s)] = nxt.get((r + 1, s), LaurentPoly()) + t
            nxt[(r, s + 1)] = nxt.get((r, s + 1), LaurentPoly()) + coef
        cur = nxt
    return cur


@lru_cache(maxsize=None)
def divided_coproduct(kind: str, j: int) -> tuple:
    """Delta(X^(j)) as ((r, s, gamma_rs), ...) with gamma in Q[v, v^-1].

    E: x = E(x)1, y = K(x)E, yx = v^2 xy, x^r y^s = E^r K^s (x) E^s.
    F: x = F(x)K^-1, y = 1(x)F, yx = v^-2 xy, x^r y^s = F^r (x) K^-r F^s.
    gamma_rs = c_rs [r]! [s]! / [j]!, asserted exact.
    """
    c = 2 if kind == "E" else -2
    pw = qplane_power(j, c)
    jf = gauss_factorial(j)
    out = []
    for (r, s), coef in sorted(pw.items()):
        if not coef:
            continue
        num = coef * gauss_factorial(r) * gauss_factorial(s)
        out.append((r, s, num.divexact(jf)))
    return tuple(out)


# ---------------------------------------------------------------------------
# generic-v representations (integrality oracle)


class GenericRep:
    """E, F, K matrices over Q[v, v^-1] for Weyl modules and their tensor products."""

    def __init__(self, weights: list, e: SMat, f: SMat, name: str = ""):
        self.weights = list(weights)
        self.e = e
        self.f = f
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.weights)

    def kpow(self, a: int) -> SMat:
        return SMat(self.dim, self.dim, [{i: LaurentPoly.mono(a * w)} for i, w in enumerate(self.weights)])

    @classmethod
    def weyl(cls, n: int) -> "GenericRep":
        e = SMat(n + 1, n + 1)
        f = SMat(n + 1, n + 1)
        for i in range(n + 1):
            if i + 1 <= n:
                e.cols[i][i + 1] = gauss_int(i + 1)
            if i >= 1:
                f.cols[i][i - 1] = gauss_int(n - i + 1)
        return cls([-n + 2 * i for i in range(n + 1)], e, f, f"V_{n}")

    def tensor(self, other: "GenericRep") -> "GenericRep":
        one_a = SMat.identity(self.dim, LaurentPoly.const(1))
        one_b = SMat.identity(other.dim, LaurentPoly.const(1))
        e = self.e.kron(one_b) + self.kpow(1).kron(other.e)
        f = self.f.kron(other.kpow(-1)) + one_a.kron(other.f)
        w = [a + b for a in self.weights for b in other.weights]
        return GenericRep(w, e, f, f"({self.name} x {other.name})")

    def divided_power(self, kind: str, j: int) -> SMat:
        """X^j / [j]! with exact division asserted entrywise."""
        base = self.e if kind == "E" else self.f
        acc = SMat.identity(self.dim, LaurentPoly.const(1))
        for _ in range(j):
            acc = base @ acc
        d = gauss_factorial(j)
        return acc.map(lambda x: x.divexact(d))

    def specialize(self, mat: SMat, ell: int) -> SMat:
        return mat.map(lambda x: specialize(x, ell))


# ---------------------------------------------------------------------------
# representations over Q(q)


class Rep:
    """A finite-dimensional weight module over Q(q).

    source is one of
      ("formula", fn)               fn(symbol) -> SMat
      ("tensor", a, b)
      ("dual", a)
      ("restrict", parent, I, P)    rho = P rho_parent I, with P I = 1
    The corep chain (for matrix coefficients) is the source itself except for
    formula modules, which supply it through ``realize``.
    """

    def __init__(self, ell: int, weights, source: tuple, name: str = "", realize=None):
        self.ell = ell
        self.field = field(ell)
        self.weights = list(weights)
        self.source = source
        self.name = name
        self._cache: dict = {}
        self._realize = realize
        self._corep = None

    # -- basic data
    @property
    def dim(self) -> int:
        return len(self.weights)

    def __repr__(self):
        return f"Rep({self.name or '?'}, dim={self.dim}, ell={self.ell})"

    def weight_blocks(self) -> dict:
        out: dict = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def span(self) -> int:
        if not self.weights:
            return 0
        return max(self.weights) - min(self.weights)

    @property
    def corep(self) -> tuple:
        if self._corep is None:
            if self.source[0] == "formula":
                if self._realize is None:
                    raise ValueError(f"{self.name}: no realization chain")
                self._corep = self._realize()
            else:
                self._corep = self.source
        return self._corep

    def realization(self) -> list:
        """Human-readable provenance chain down to tensor powers of V_1."""
        out = []
        node = self
        while True:
            src = node.corep
            if src[0] == "base":
                out.append(f"base V_{src[1]}")
                return out
            if src[0] == "tensor":
                out.append(f"tensor {src[1].name} x {src[2].name}")
                return out
            if src[0] == "dual":
                out.append(f"dual of {src[1].name}")
                node = src[1]
                continue
            out.append(f"restrict {src[1].name} -> {node.name} (dim {src[1].dim} -> {node.dim})")
            node = src[1]

    # -- matrices
    def mat(self, g: GeneratorSymbol) -> SMat:
        m = self._cache.get(g)
        if m is None:
            m = self._compute(g)
            self._cache[g] = m
        return m

    def kpow(self, a: int) -> SMat:
        fld = self.field
        return SMat(self.dim, self.dim, [{i: fld.q(a * w)} for i, w in enumerate(self.weights)])

    def identity(self) -> SMat:
        return SMat.identity(self.dim, self.field.one)

    def zero(self) -> SMat:
        return SMat(self.dim, self.dim)

    def _compute(self, g: GeneratorSymbol) -> SMat:
        n = self.dim
        if g.kind == "K":
            return self.kpow(1)
        if g.kind == "Kinv":
            return self.kpow(-1)
        if g.kind == "KBinom":
            cols = []
            for w in self.weights:
                x = gauss_binom_q(w + g.c, g.j, self.ell)
                cols.append({len(cols): x} if x else {})
            return SMat(n, n, cols)
        if g.j == 0:
            return self.identity()
        if 2 * g.j > self.span():
            return self.zero()
        kind = self.source[0]
        if kind == "formula":
            return self.source[1](g)
        if kind == "tensor":
            return self._tensor_mat(g)
        if kind == "dual":
            return self._dual_mat(g)
        if kind == "restrict":
            _, parent, I, P = self.source
            return P @ (parent.mat(g) @ I)
        raise ValueError(f"bad source {kind}")

    def _tensor_mat(self, g: GeneratorSymbol) -> SMat:
        _, a, b = self.source
        out = SMat(self.dim, self.dim)
        for r, s, gamma in divided_coproduct(g.kind, g.j):
            coef = specialize(gamma, self.ell)
            if not coef:
                continue
            if g.kind == "E":
                left = a.mat(E(r)) @ a.kpow(s) if s else a.mat(E(r))
                right = b.mat(E(s))
            else:
                left = a.mat(F(r))
                right = b.kpow(-r) @ b.mat(F(s)) if r else b.mat(F(s))
            if left.is_zero() or right.is_zero():
                continue
            out = out + left.kron(right).scale(coef)
        return out

    def _dual_mat(self, g: GeneratorSymbol) -> SMat:
        a = self.source[1]
        sign, e, A, side = antipode_divided(g.kind, g.j)
        x = a.mat(GeneratorSymbol(g.kind, g.j))
        m = a.kpow(A) @ x if side == "left" else x @ a.kpow(A)
        return m.scale(self.field.q(e) * sign).transpose()

    def act(self, u: AlgebraElement) -> SMat:
        out = SMat(self.dim, self.dim)
        for word, c in u.terms.items():
            m = self.identity()
            for g in reversed(word):
                m = self.mat(g) @ m
            out = out + m.scale(c)
        return out

    def act_vec(self, g: GeneratorSymbol, vec: dict) -> dict:
        return self.mat(g).apply(vec)

    def divided_range(self) -> range:
        return range(1, self.span() // 2 + 1)

    def all_generators(self) -> list:
        """G together with every nonzero divided power."""
        gens = list(generating_set(self.ell))
        for j in self.divided_range():
            for g in (E(j), F(j)):
                if g not in gens:
                    gens.append(g)
        return gens

    def to_json(self, symbols=None) -> dict:
        symbols = symbols or generating_set(self.ell)
        mats = {}
        for g in symbols:
            d = self.mat(g).to_dense(self.field.zero)
            mats[str(g)] = [[x.to_json() for x in row] for row in d]
        return {"name": self.name, "ell": self.ell, "dim": self.dim, "weights": self.weights, "matrices": mats}


# ---------------------------------------------------------------------------
# constructors


def restrict(parent: Rep, I: SMat, P: SMat | None = None, name: str = "") -> Rep:
    """Module on the columns of I; weights read off the (homogeneous) columns."""
    if P is None:
        P = left_inverse(I, parent.field.one) if I.ncols else SMat(0, parent.dim)
    weights = []
    for col in I.cols:
        ws = {parent.weights[i] for i in col}
        if len(ws) != 1:
            raise ValueError("restriction basis vectors must be weight-homogeneous and nonzero")
        weights.append(ws.pop())
    if parent.source[0] == "restrict":
        _, pp, I0, P0 = parent.source
        return Rep(parent.ell, weights, ("restrict", pp, I0 @ I, P @ P0), name)
    return Rep(parent.ell, weights, ("restrict", parent, I, P), name)


def _base_weyl_formula(n: int, ell: int, dual_basis: bool):
    def fn(g: GeneratorSymbol) -> SMat:
        cols = [{} for _ in range(n + 1)]
        j = g.j
        for i in range(n + 1):
            if not dual_basis:
                if g.kind == "E" and i + j <= n:
                    x = gauss_binom_q(i + j, i, ell)
                    if x:
                        cols[i][i + j] = x
                elif g.kind == "F" and i - j >= 0:
                    x = gauss_binom_q(n - i + j, j, ell)
                    if x:
                        cols[i][i - j] = x
            else:
                if g.kind == "E" and i - j >= 0:
                    x = gauss_binom_q(i, j, ell)
                    if x:
                        cols[i][i - j] = x
                elif g.kind == "F" and i + j <= n:
                    x = gauss_binom_q(n - i, j, ell)
                    if x:
                        cols[i][i + j] = x
        return SMat(n + 1, n + 1, cols)
    return fn


@lru_cache(maxsize=None)
def weyl_module(n: int, ell: int) -> Rep:
    """V_n with basis f_0..f_n of weights -n, -n+2, ..., n."""
    if n < 0:
        raise ValueError("negative highest weight")
    rep = Rep(ell, [-n + 2 * i for i in range(n + 1)], ("formula", _base_weyl_formula(n, ell, False)), f"V_{n}")

    def realize():
        if n <= 1:
            return ("base", n)
        par = tensor(weyl_module(n - 1, ell), weyl_module(1, ell))
        top = {(n - 1) * 2 + 1: par.field.one}  # f_{n-1} (x) x_1
        cols = [par.mat(F(n - i)).apply(top) if n - i else dict(top) for i in range(n + 1)]
        I = SMat(par.dim, n + 1, cols)
        for g in generating_set(ell):
            if par.mat(g) @ I != I @ rep.mat(g):
                raise AssertionError(f"V_{n} embedding does not intertwine {g}")
        return ("restrict", par, I, left_inverse(I, par.field.one))

    rep._realize = realize
    return rep


@lru_cache(maxsize=None)
def dual_weyl_module(n: int, ell: int) -> Rep:
    """V_n^* with basis e_0..e_n of weights n, n-2, ..., -n."""
    if n < 0:
        raise ValueError("negative highest weight")
    rep = Rep(ell, [n - 2 * i for i in range(n + 1)], ("formula", _base_weyl_formula(n, ell, True)), f"V*_{n}")

    def realize():
        d = dual(weyl_module(n, ell))
        ok, iso = find_isomorphism(rep, d)
        if not ok:
            raise AssertionError(f"dual_weyl({n}) is not isomorphic to dual(weyl({n}))")
        from .linalg import inverse
        return ("restrict", d, iso, inverse(iso, rep.field.one))

    rep._realize = realize
    return rep


def tensor(a: Rep, b: Rep) -> Rep:
    if a.ell != b.ell:
        raise ValueError("tensor of modules over different ell")
    w = [x + y for x in a.weights for y in b.weights]
    return Rep(a.ell, w, ("tensor", a, b), f"({a.name} x {b.name})")


def dual(m: Rep) -> Rep:
    return Rep(m.ell, [-w for w in m.weights], ("dual", m), f"{m.name}^*")


def tensor_power_v1(N: int, ell: int) -> Rep:
    return _tensor_power_v1(N, ell)


@lru_cache(maxsize=None)
def _tensor_power_v1(N: int, ell: int) -> Rep:
    if N == 0:
        return weyl_module(0, ell)
    if N == 1:
        return weyl_module(1, ell)
    return tensor(_tensor_power_v1(N - 1, ell), weyl_module(1, ell))


# ---------------------------------------------------------------------------
# hom spaces


@dataclass
class HomBasis:
    source: Rep
    target: Rep
    maps: list = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.maps)


def intertwiners(pairs: list, src_weights: list, dst_weights: list, one) -> list:
    """Basis of {X : X A = B X for every (A, B) in pairs}, X of shape dst x src.

    Unknowns only sit where source and target weights agree.
    """
    nsrc, ndst = len(src_weights), len(dst_weights)
    by_w: dict = {}
    for c, w in enumerate(src_weights):
        by_w.setdefault(w, []).append(c)
    unknowns = [(r, c) for r, w in enumerate(dst_weights) for c in by_w.get(w, ())]
    if not unknowns:
        return []
    # unknowns grouped by row and by column
    by_row: dict = {}
    by_col: dict = {}
    for r, c in unknowns:
        by_row.setdefault(r, []).append(c)
        by_col.setdefault(c, []).append(r)
    equations = []
    for A, B in pairs:
        Arows = A.rows()
        eqs: dict = {}
        # (X A)[r, c] = sum_k X[r, k] A[k, c]
        for (r, k) in unknowns:
            for c, a in Arows[k].items():
                d = eqs.setdefault((r, c), {})
                s = d.get((r, k))
                d[(r, k)] = a if s is None else s + a
        # (B X)[r, c] = sum_k B[r, k] X[k, c]
        for (k, c) in unknowns:
            for r, b in B.cols[k].items():
                d = eqs.setdefault((r, c), {})
                s = d.get((k, c))
                d[(k, c)] = -b if s is None else s - b
        for d in eqs.values():
            d = {k: v for k, v in d.items() if v}
            if d:
                equations.append(d)
    sols = nullspace(equations, unknowns, one)
    out = []
    for s in sols:
        cols = [{} for _ in range(nsrc)]
        for (r, c), x in s.items():
            cols[c][r] = x
        out.append(SMat(ndst, nsrc, cols))
    return out


def hom_space(a: Rep, b: Rep, gens=None) -> HomBasis:
    """Intertwiners a -> b for the generating set G."""
    if a.ell != b.ell:
        raise ValueError("hom between modules over different ell")
    gens = gens or [g for g in generating_set(a.ell) if not g.is_toral]
    pairs = [(a.mat(g), b.mat(g)) for g in gens]
    return HomBasis(a, b, intertwiners(pairs, a.weights, b.weights, a.field.one))


def _blocks_invertible(m: SMat, src_w: list, dst_w: list) -> bool:
    if m.nrows != m.ncols:
        return False
    sb: dict = {}
    db: dict = {}
    for i, w in enumerate(src_w):
        sb.setdefault(w, []).append(i)
    for i, w in enumerate(dst_w):
        db.setdefault(w, []).append(i)
    if {w: len(v) for w, v in sb.items()} != {w: len(v) for w, v in db.items()}:
        return False
    for w, cols in sb.items():
        sub = m.restrict(db[w], cols)
        if rank(sub.cols) != len(cols):
            return False
    return True


def invertible_in_span(maps: list, src_w: list, dst_w: list, seed: int = 0, tries: int = 8):
    """An invertible element of span(maps): a basis element or a seeded random combination."""
    for m in maps:
        if _blocks_invertible(m, src_w, dst_w):
            return m
    if len(maps) < 2:
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        acc = None
        for m in maps:
            t = m.scale(rng.randint(-7, 7) or 1)
            acc = t if acc is None else acc + t
        if _blocks_invertible(acc, src_w, dst_w):
            return acc
    return None


def find_isomorphism(a: Rep, b: Rep, seed: int = 0):
    """(True, iso matrix b <- a) if a and b are isomorphic, else (False, None)."""
    if a.dim != b.dim or sorted(a.weights) != sorted(b.weights):
        return False, None
    if a.dim == 0:
        return True, SMat(0, 0)
    hb = hom_space(a, b)
    m = invertible_in_span(hb.maps, a.weights, b.weights, seed)
    return (m is not None), m


def is_isomorphic(a: Rep, b: Rep) -> bool:
    return find_isomorphism(a, b)[0]


# ---------------------------------------------------------------------------
# submodules, quotients, simples


def submodule_generated(m: Rep, vectors, name: str = "") -> Rep:
    span = GradedSpan(lambda i: m.weights[i])
    queue = []
    for v in vectors:
        queue.extend(span.add(v))
    gens = [g for g in m.all_generators() if not g.is_toral]
    while queue:
        v = queue.pop()
        for g in gens:
            w = m.mat(g).apply(v)
            if w:
                queue.extend(span.add(w))
    basis = span.basis()
    I = SMat(m.dim, len(basis), basis)
    return restrict(m, I, name=name or f"<sub of {m.name}>")


def quotient_rep(m: Rep, sub_basis: list, name: str = "") -> Rep:
    """m / span(sub_basis); sub_basis must span a submodule."""
    span = GradedSpan(lambda i: m.weights[i])
    for v in sub_basis:
        span.add(v)
    piv = span.pivots()
    keep = [i for i in range(m.dim) if i not in piv]
    pos = {i: k for k, i in enumerate(keep)}
    one = m.field.one
    I = SMat(m.dim, len(keep), [{i: one} for i in keep])
    pcols = []
    for j in range(m.dim):
        r = span.reduce({j: one})
        pcols.append({pos[i]: x for i, x in r.items()})
    P = SMat(len(keep), m.dim, pcols)
    return Rep(m.ell, [m.weights[i] for i in keep], ("restrict", m, I, P), name or f"{m.name}/sub")


def embedding(sub: Rep, m: Rep) -> SMat:
    """Inclusion matrix of a restrict-built submodule into m (composed through flattening)."""
    src = sub.source
    if src[0] != "restrict":
        raise ValueError("not a restricted module")
    if src[1] is m:
        return src[2]
    if m.source[0] == "restrict" and src[1] is m.source[1]:
        return m.source[3] @ src[2]
    raise ValueError("submodule not built from this module")


@lru_cache(maxsize=None)
def simple_module(n: int, ell: int) -> Rep:
    """L_n as the image of the intertwiner V_n -> V_n^*."""
    v = weyl_module(n, ell)
    dv = dual_weyl_module(n, ell)
    hb = hom_space(v, dv)
    if hb.dim != 1:
        raise AssertionError(f"Hom(V_{n}, V*_{n}) has dimension {hb.dim}, expected 1")
    phi = hb.maps[0]
    span = GradedSpan(lambda i: dv.weights[i])
    for c in phi.cols:
        if c:
            span.add(c)
    basis = span.basis()
    I = SMat(dv.dim, len(basis), basis)
    return restrict(dv, I, name=f"L_{n}")


def character(m: Rep) -> LaurentPoly:
    """sum over the basis of z^weight (rendered in the ring variable)."""
    out: dict = {}
    for w in m.weights:
        out[w] = out.get(w, 0) + 1
    return LaurentPoly(out)


def character_str(ch: LaurentPoly) -> str:
    return str(ch).replace("v", "z")


def simple_character(n: int, ell: int) -> LaurentPoly:
    """ch L_n from the Steinberg tensor product shape, used for bookkeeping only."""
    return character(simple_module(n, ell))


def split_character(ch: LaurentPoly, piece) -> dict:
    """Greedy highest-weight decomposition of ch into characters piece(a); returns {a: mult}."""
    rest = dict(ch.terms)
    out: dict = {}
    while rest:
        top = max(rest)
        mult = rest[top]
        if mult < 0 or top < 0:
            raise ValueError(f"character does not decompose (weight {top}, multiplicity {mult})")
        out[top] = out.get(top, 0) + int(mult)
        for w, c in piece(top).terms.items():
            r = rest.get(w, 0) - mult * c
            if r:
                rest[w] = r
            else:
                rest.pop(w, None)
    return out


def weyl_character(n: int) -> LaurentPoly:
    return LaurentPoly({-n + 2 * i: 1 for i in range(n + 1)})


# ---------------------------------------------------------------------------
# socle, radical, Loewy series


def socle_basis(m: Rep) -> tuple[list, dict]:
    """Basis of soc(m) and the multiplicity of each simple in it."""
    span = GradedSpan(lambda i: m.weights[i])
    labels: dict = {}
    for a in sorted({w for w in m.weights if w >= 0}):
        L = simple_module(a, m.ell)
        hb = hom_space(L, m)
        if hb.dim:
            labels[a] = hb.dim
        for phi in hb.maps:
            for c in phi.cols:
                if c:
                    span.add(c)
    return span.basis(), labels


def socle(m: Rep) -> Rep:
    basis, _ = socle_basis(m)
    return restrict(m, SMat(m.dim, len(basis), basis), name=f"soc({m.name})")


def radical_basis(m: Rep) -> tuple[list, dict]:
    """Basis of rad(m) = common kernel of all maps to simples, plus head multiplicities."""
    rows = []
    labels: dict = {}
    for a in sorted({w for w in m.weights if w >= 0}):
        L = simple_module(a, m.ell)
        hb = hom_space(m, L)
        if hb.dim:
            labels[a] = hb.dim
        for phi in hb.maps:
            rows.extend(r for r in phi.rows() if r)
    basis = nullspace(rows, range(m.dim), m.field.one)
    return basis, labels


def radical(m: Rep) -> Rep:
    basis, _ = radical_basis(m)
    span = GradedSpan(lambda i: m.weights[i])
    for v in basis:
        span.add(v)
    b = span.basis()
    return restrict(m, SMat(m.dim, len(b), b), name=f"rad({m.name})")


def head(m: Rep) -> Rep:
    basis, _ = radical_basis(m)
    return quotient_rep(m, basis, name=f"hd({m.name})")


@dataclass
class LoewyReport:
    socle_layers: list  # bottom to top: [{label: mult}, ...]
    radical_layers: list  # top to bottom
    socle_dims: list
    radical_dims: list
    rigid: bool

    @property
    def length(self) -> int:
        return len(self.socle_layers)


def _span_equal(a: list, b: list, weights: list) -> bool:
    sa = GradedSpan(lambda i: weights[i])
    for v in a:
        sa.add(v)
    sb = GradedSpan(lambda i: weights[i])
    for v in b:
        sb.add(v)
    return sa.dim == sb.dim and all(sa.contains(v) for v in b)


def loewy_series(m: Rep) -> LoewyReport:
    """Socle and radical series of m with simple labels per layer."""
    one = m.field.one
    # socle series as subspaces of m
    soc_spaces = [[]]
    soc_layers = []
    while True:
        cur = soc_spaces[-1]
        span = GradedSpan(lambda i: m.weights[i])
        for v in cur:
            span.add(v)
        if span.dim == m.dim:
            break
        qt = quotient_rep(m, cur)
        qb, labels = socle_basis(qt)
        _, _, I, _ = qt.source
        for v in qb:
            span.add(I.apply(v))
        soc_spaces.append(span.basis())
        soc_layers.append(labels)
    # radical series
    rad_spaces = [[{i: one} for i in range(m.dim)]]
    rad_layers = []
    node = m
    incl = SMat.identity(m.dim, one)
    while node.dim:
        rb, labels = radical_basis(node)
        rad_layers.append(labels)
        span = GradedSpan(lambda i, node=node: node.weights[i])
        for v in rb:
            span.add(v)
        b = span.basis()
        I = SMat(node.dim, len(b), b)
        incl = incl @ I
        rad_spaces.append(list(incl.cols))
        node = Rep(m.ell, [node.weights[next(iter(c))] for c in b], ("restrict", node, I, left_inverse(I, one) if b else SMat(0, node.dim)), "rad")
    L = len(soc_layers)
    rigid = L == len(rad_layers) and all(
        _span_equal(soc_spaces[k], rad_spaces[L - k], m.weights) for k in range(L + 1)
    )
    return LoewyReport(
        socle_layers=soc_layers,
        radical_layers=rad_layers,
        socle_dims=[_layer_dim(l, m.ell) for l in soc_layers],
        radical_dims=[_layer_dim(l, m.ell) for l in rad_layers],
        rigid=rigid,
    )


def _layer_dim(labels: dict, ell: int) -> int:
    return sum(mult * simple_module(a, ell).dim for a, mult in labels.items())


# ---------------------------------------------------------------------------
# direct summands and tilting modules


def peel_summand(m: Rep, t: Rep):
    """Split off a summand isomorphic to t.

    Returns (found, complement, (f, g)) where f: t -> m, g: m -> t with g f
    invertible.  The search over basis pairs is complete when End(t) is local.
    """
    if t.dim > m.dim:
        return False, None, None
    fs = hom_space(t, m).maps
    if not fs:
        return False, None, None
    gs = hom_space(m, t).maps
    for f in fs:
        for g in gs:
            gf = g @ f
            if _blocks_invertible(gf, t.weights, t.weights):
                ker = nullspace([r for r in g.rows() if r], range(m.dim), m.field.one)
                span = GradedSpan(lambda i: m.weights[i])
                for v in ker:
                    span.add(v)
                b = span.basis()
                comp = restrict(m, SMat(m.dim, len(b), b), name=f"{m.name} - {t.name}")
                return True, comp, (f, g)
    return False, None, None


def tilting_character(n: int, ell: int) -> LaurentPoly:
    p = sl2_prime(n, ell)
    ch = weyl_character(n)
    if p is not None:
        ch = ch + weyl_character(p)
    return ch


_TILTING: dict = {}


def tilting_module(n: int, ell: int) -> Rep:
    """T_n, peeled off T_{n-1} (x) V_1."""
    key = (ell, n)
    if key in _TILTING:
        return _TILTING[key]
    if sl2_prime(n, ell) is None:
        t = weyl_module(n, ell)
    elif (t := _load_tilting(n, ell)) is not None:
        pass
    else:
        m = tensor(tilting_module(n - 1, ell), weyl_module(1, ell))
        mults = split_character(character(m), lambda a: tilting_character(a, ell))
        if mults.get(n) != 1:
            raise AssertionError(f"T_{n} does not occur once in T_{n-1} x V_1: {mults}")
        cur = m
        for a in sorted(mults, reverse=True):
            if a == n:
                continue
            ta = tilting_module(a, ell)
            for _ in range(mults[a]):
                ok, comp, _ = peel_summand(cur, ta)
                if not ok:
                    raise AssertionError(f"could not split T_{a} off {cur.name}")
                cur = comp
        t = cur
        t.name = f"T_{n}"
        if character(t) != tilting_character(n, ell):
            raise AssertionError(f"ch T_{n} = {character(t)} differs from ch V_n + ch V_n'")
        _store_tilting(n, ell, t)
    _TILTING[key] = t
    return t


CACHE_ENV = "OQROOT_CACHE_DIR"


def _cache_path(n: int, ell: int):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"tilting_ell{ell}_n{n}.json"


def _smat_json(m: SMat) -> dict:
    return {"shape": [m.nrows, m.ncols], "entries": [[i, j, x.to_json()] for (i, j), x in m.entries()]}


def _smat_from_json(d: dict, ell: int) -> SMat:
    nr, nc = d["shape"]
    return SMat.from_entries(nr, nc, [((i, j), Cyc.from_json(x, ell)) for i, j, x in d["entries"]])


def _store_tilting(n: int, ell: int, t: Rep) -> None:
    path = _cache_path(n, ell)
    if path is None or t.source[0] != "restrict":
        return
    _, _, I, P = t.source
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"ell": ell, "n": n, "I": _smat_json(I), "P": _smat_json(P)}))


def _load_tilting(n: int, ell: int):
    """T_n from the memo cache, re-checked as a submodule with the right character."""
    path = _cache_path(n, ell)
    if path is None or not path.exists():
        return None
    data = json.loads(path.read_text())
    m = tensor(tilting_module(n - 1, ell), weyl_module(1, ell))
    I = _smat_from_json(data["I"], ell)
    P = _smat_from_json(data["P"], ell)
    if I.nrows != m.dim or not (P @ I == SMat.identity(I.ncols, m.field.one)):
        return None
    t = restrict(m, I, P, name=f"T_{n}")
    for g in generating_set(ell):
        if m.mat(g) @ I != I @ t.mat(g):
            return None
    if character(t) != tilting_character(n, ell):
        return None
    return t


# ---------------------------------------------------------------------------
# relation checks


def check_relations(m: Rep, jmax: int | None = None) -> list[str]:
    """Verify the defining relations as matrix identities; return failure messages."""
    ell = m.ell
    fld = m.field
    q = fld.q(1)
    jmax = 2 * ell if jmax is None else jmax
    fails = []
    Kq, Ki = m.mat(K), m.mat(KINV)
    one = m.identity()
    if Kq @ Ki != one:
        fails.append("K Kinv != 1")
    e1, f1 = m.mat(E(1)), m.mat(F(1))
    lhs = e1 @ f1 - f1 @ e1
    rhs = (Kq - Ki).scale(1 / (q - q.inverse()))
    if lhs != rhs:
        fails.append("EF - FE != (K - K^-1)/(q - q^-1)")
    for j in range(1, jmax + 1):
        for kind, sh in (("E", 2 * j), ("F", -2 * j)):
            X = m.mat(GeneratorSymbol(kind, j))
            if Kq @ X != X.scale(fld.q(sh)) @ Kq:
                fails.append(f"K {kind}({j}) != q^{sh} {kind}({j}) K")
    for kind in ("E", "F"):
        X1 = m.mat(GeneratorSymbol(kind, 1))
        acc = one
        for j in range(1, jmax + 1):
            Xj = m.mat(GeneratorSymbol(kind, j))
            acc = X1 @ acc
            if j < ell and acc != Xj.scale(specialize(gauss_factorial(j), ell)):
                fails.append(f"{kind}(1)^{j} != [{j}]! {kind}({j})")
            for a in range(1, j):
                prod = m.mat(GeneratorSymbol(kind, a)) @ m.mat(GeneratorSymbol(kind, j - a))
                if prod != Xj.scale(gauss_binom_q(j, a, ell)):
                    fails.append(f"{kind}({a}) {kind}({j - a}) != [{j} choose {a}] {kind}({j})")
    # E(a) F(b) = sum_t F(b-t) [K; 2t-a-b, t] E(a-t)
    top = min(jmax, ell + 1)
    for a in range(1, top + 1):
        for b in range(1, top + 1):
            lhs = m.mat(E(a)) @ m.mat(F(b))
            rhs = SMat(m.dim, m.dim)
            for t in range(0, min(a, b) + 1):
                rhs = rhs + m.mat(F(b - t)) @ m.mat(KBinom(2 * t - a - b, t)) @ m.mat(E(a - t))
            if lhs != rhs:
                fails.append(f"E({a})F({b}) commutation formula fails")
    return fails


def divided_power_integrality(rep: GenericRep, jmax: int) -> bool:
    """E^j and F^j are divisible by [j]! entrywise (raises ArithmeticError otherwise)."""
    for j in range(1, jmax + 1):
        rep.divided_power("E", j)
        rep.divided_power("F", j)
    return True


# ---------------------------------------------------------------------------
# antipode on algebra elements


def antipode_symbol(g: GeneratorSymbol, ell: int, inverse: bool = False) -> AlgebraElement:
    """S(g) (or S^-1(g)) as an algebra element; toral KBinom symbols are not covered."""
    fld = field(ell)
    if g.kind == "K":
        return AlgebraElement.word(ell, KINV)
    if g.kind == "Kinv":
        return AlgebraElement.word(ell, K)
    if g.kind == "KBinom":
        raise NotImplementedError("S on [K; c, t] is not a single word; act by weights instead")
    if g.j == 0:
        return AlgebraElement.one(ell)
    sign, e, A, side = antipode_divided(g.kind, g.j, inverse)
    kw = (K,) * A if A > 0 else (KINV,) * (-A)
    x = (GeneratorSymbol(g.kind, g.j),)
    word = kw + x if side == "left" else x + kw
    return AlgebraElement(ell, {word: fld.q(e) * sign})


def antipode_element(u: AlgebraElement, inverse: bool = False) -> AlgebraElement:
    """Anti-multiplicative extension of antipode_symbol."""
    out = AlgebraElement(u.ell)
    for word, c in u.terms.items():
        acc = AlgebraElement.one(u.ell) * c
        for g in word:
            acc = antipode_symbol(g, u.ell, inverse) * acc
        out = out + acc
    return out
