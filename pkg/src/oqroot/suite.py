"""The eleven acceptance checks, shared by the test suite and the command line."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

from . import bimodule as bm
from . import oq, qmatrix, uq
from .coeff import gauss_binom, specialize
from .linalg import rank
from .weights import sl2_prime


@dataclass
class Check:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.name} ({self.seconds:.1f}s) {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "counterexamples": self.failures[:5],
        }


ELLS = (3, 5)


def mixed_range(ell: int, top: int) -> list:
    return [n for n in range(top + 1) if sl2_prime(n, ell) is not None]


def _run(number: int, name: str, body) -> Check:
    t = time.perf_counter()
    failures: list = []
    detail = body(failures)
    return Check(number, name, not failures, detail or "", time.perf_counter() - t, failures)


# 1 ---------------------------------------------------------------------------


def criterion_1() -> Check:
    def body(fails):
        for ell in (3, 5, 7):
            for i in range(1, ell):
                if specialize(gauss_binom(ell, i), ell):
                    fails.append(f"[{ell} choose {i}] != 0 at ell={ell}")
        for n in range(13):
            for k in range(n + 1):
                if gauss_binom(n, k).at(1) != comb(n, k):
                    fails.append(f"[{n} choose {k}] at v=1")
        return "ell in {3,5,7}; classical limits n <= 12"
    return _run(1, "Gaussian vanishing", body)


# 2 ---------------------------------------------------------------------------


def constructed_reps(ell: int) -> list:
    reps = []
    for n in range(3 * ell + 1):
        reps += [uq.weyl_module(n, ell), uq.dual_weyl_module(n, ell), uq.simple_module(n, ell), uq.tilting_module(n, ell)]
    for n in mixed_range(ell, 3 * ell):
        reps.append(uq.dual(uq.tilting_module(n, ell)))
    for N in range(2, 5):
        reps.append(uq.tensor_power_v1(N, ell))
    for a in range(1, 4):
        for b in range(a, 4):
            reps.append(uq.tensor(uq.weyl_module(a, ell), uq.weyl_module(b, ell)))
    return reps


def criterion_2() -> Check:
    def body(fails):
        count = 0
        for ell in ELLS:
            for m in constructed_reps(ell):
                for msg in uq.check_relations(m, 2 * ell):
                    fails.append(f"{m.name} ell={ell}: {msg}")
                count += 1
            # generic lifts: divisibility by [j]!, and agreement after v -> q
            lifts = [(uq.GenericRep.weyl(1), uq.tensor_power_v1(1, ell))]
            g = uq.GenericRep.weyl(1)
            for N in range(2, 6):
                g = g.tensor(uq.GenericRep.weyl(1))
                lifts.append((g, uq.tensor_power_v1(N, ell)))
            for a in range(1, 4):
                for b in range(a, 4):
                    lifts.append((uq.GenericRep.weyl(a).tensor(uq.GenericRep.weyl(b)),
                                  uq.tensor(uq.weyl_module(a, ell), uq.weyl_module(b, ell))))
            for gen, rep in lifts:
                for j in range(1, 2 * ell + 1):
                    for kind in ("E", "F"):
                        try:
                            d = gen.divided_power(kind, j)
                        except ArithmeticError:
                            fails.append(f"{gen.name}: {kind}^{j} not divisible by [{j}]!")
                            continue
                        if gen.specialize(d, ell) != rep.mat(uq.GeneratorSymbol(kind, j)):
                            fails.append(f"{gen.name}: {kind}({j}) differs from its generic lift at ell={ell}")
                count += 1
        return f"{count} modules and lifts, j <= 2*ell"
    return _run(2, "Relation suite and divided-power integrality", body)


# 3 ---------------------------------------------------------------------------


def criterion_3() -> Check:
    def body(fails):
        for ell in ELLS:
            for n in mixed_range(ell, 3 * ell):
                v = uq.weyl_module(n, ell)
                p = sl2_prime(n, ell)
                if not uq.is_isomorphic(uq.socle(v), uq.simple_module(p, ell)):
                    fails.append(f"soc V_{n} !~ L_{p} (ell={ell})")
                if not uq.is_isomorphic(uq.head(v), uq.simple_module(n, ell)):
                    fails.append(f"hd V_{n} !~ L_{n} (ell={ell})")
            for k in range(1, 4):
                n = k * ell - 1
                v = uq.weyl_module(n, ell)
                basis, _ = uq.socle_basis(v)
                if len(basis) != v.dim:
                    fails.append(f"V_{n} not irreducible (ell={ell})")
        return "ell in {3,5}, n <= 3*ell"
    return _run(3, "Composition series of Weyl modules", body)


# 4 ---------------------------------------------------------------------------


def criterion_4() -> Check:
    def body(fails):
        for ell in ELLS:
            for n in mixed_range(ell, 3 * ell):
                t = uq.tilting_module(n, ell)
                want = uq.weyl_character(n) + uq.weyl_character(sl2_prime(n, ell))
                if uq.character(t) != want:
                    fails.append(f"ch T_{n} (ell={ell})")
                if not uq.is_isomorphic(uq.dual(t), t):
                    fails.append(f"T_{n}^* !~ T_{n} (ell={ell})")
        return "ell in {3,5}, n <= 3*ell"
    return _run(4, "Tilting characters and self-duality", body)


# 5 ---------------------------------------------------------------------------


def criterion_5() -> Check:
    def body(fails):
        for ell in ELLS:
            for m in range(2 * ell + 1):
                for k in range(2 * ell + 1):
                    d = uq.hom_space(uq.weyl_module(m, ell), uq.dual_weyl_module(k, ell)).dim
                    if d != (1 if m == k else 0):
                        fails.append(f"dim Hom(V_{m}, V*_{k}) = {d} (ell={ell})")
        return "m, k <= 2*ell"
    return _run(5, "Hom from Weyl to dual Weyl modules", body)


# 6 ---------------------------------------------------------------------------


def pbw_words(ell: int, top: int = 2) -> list:
    """F(a) K^k E(b) for a, b <= top and 0 <= k < 2*ell: a spanning set on weights of size <= top."""
    out = []
    for a in range(top + 1):
        for b in range(top + 1):
            for k in range(2 * ell):
                w = ((uq.F(a),) if a else ()) + (uq.K,) * k + ((uq.E(b),) if b else ())
                out.append(w)
    return out


def criterion_6() -> Check:
    def body(fails):
        for ell in ELLS:
            u = uq.AlgebraElement.word(ell, *([uq.K] * ell)) - uq.AlgebraElement.one(ell)
            keys = oq.monomials(6)
            for key in keys:
                if oq.evaluate_key(key, u):
                    fails.append(f"(K^{ell} - 1, {oq.format_monomial(key)}) != 0")
            # non-degeneracy on the degree <= 2 window
            keys2 = oq.monomials(2)
            words = pbw_words(ell)
            rows = []
            for key in keys2:
                row = {}
                for c, w in enumerate(words):
                    x = oq.evaluate_key(key, uq.AlgebraElement.word(ell, *w))
                    if x:
                        row[c] = x
                rows.append(row)
            r = rank(rows)
            if r != len(keys2):
                fails.append(f"pairing rank {r} < {len(keys2)} on degree <= 2 (ell={ell})")
        return f"{len(oq.monomials(6))} monomials of degree <= 6; rank {len(oq.monomials(2))} on degree <= 2"
    return _run(6, "Pairing degeneracy and non-degeneracy", body)


# 7 ---------------------------------------------------------------------------


BLOCKS = {3: (0, 1), 5: (0, 1, 2, 3)}


def criterion_7(depth: int = 3) -> Check:
    def body(fails):
        certified = 0
        for ell, blocks in BLOCKS.items():
            for n in blocks:
                P = bm.build_P(n, depth, ell)
                for c in bm.filtration_quotients(n, depth, ell, P):
                    if c.certified:
                        certified += 1
                    else:
                        fails.append(f"ell={ell} block {n}: P^{c.i}/P^{c.i - 1} !~ {c.target}")
        return f"{certified} quotients certified, depth {depth}"
    return _run(7, "Filtration quotients P^i/P^(i-1)", body)


# 8 ---------------------------------------------------------------------------


T4_LAYERS = [{(0, 0): 1}, {(4, 0): 1, (0, 4): 1}, {(0, 0): 1, (4, 4): 1}]
T6_LAYERS = [{(4, 4): 1}, {(0, 4): 1, (4, 0): 1, (4, 6): 1, (6, 4): 1}, {(0, 0): 1, (4, 4): 1, (6, 6): 1}]


def criterion_8() -> Check:
    def body(fails):
        ell = 3
        for n, want in ((4, T4_LAYERS), (6, T6_LAYERS)):
            r = bm.loewy_bi(bm.mc_birep(uq.tilting_module(n, ell)))
            if r.radical_layers != want:
                fails.append(f"M(T_{n}) layers {r.radical_layers}")
            if list(reversed(r.socle_layers)) != want:
                fails.append(f"M(T_{n}) socle series {r.socle_layers}")
            if not r.rigid:
                fails.append(f"M(T_{n}) not rigid")
            if not r.indecomposable:
                fails.append(f"M(T_{n}) decomposable")
        if not bm.intersection_identity(4, 6, ell):
            fails.append("M(T_4) cap M(T_6) != M(V_4) + M(V*_4)")
        return "M(T_4), M(T_6) at ell=3"
    return _run(8, "Loewy pictures, rigidity, intersection identity", body)


# 9 ---------------------------------------------------------------------------


def criterion_9() -> Check:
    def body(fails):
        for ell in ELLS:
            for n in range(2 * ell + 1):
                d, ok = bm.equivariant_check(n, ell)
                if not ok:
                    fails.append(f"n={n} ell={ell}: solution dim {d}")
        return "n <= 2*ell"
    return _run(9, "Equivariant vector", body)


# 10 --------------------------------------------------------------------------


def criterion_10() -> Check:
    def body(fails):
        for ell in ELLS:
            ad = oq.OqElement.gen("a", ell) + oq.OqElement.gen("d", ell)
            for D in range(7):
                basis = oq.cocommutative_basis(D, ell)
                powers = [ad ** k for k in range(D + 1)]
                if len(basis) != D + 1 or not oq.same_span(basis, powers, ell):
                    fails.append(f"HH0 at D={D}, ell={ell}: dim {len(basis)}")
            # tr of a tensor product is the product of traces
            for a, b in ((1, 1), (1, 2), (2, 3)):
                va, vb = uq.weyl_module(a, ell), uq.weyl_module(b, ell)
                if oq.trace(uq.tensor(va, vb)) != oq.trace(va) * oq.trace(vb):
                    fails.append(f"tr(V_{a} x V_{b}) != tr V_{a} tr V_{b} (ell={ell})")
            # tr is additive along submodule and quotient
            for n in mixed_range(ell, 2 * ell):
                v = uq.weyl_module(n, ell)
                sub = uq.socle(v)
                qt = uq.quotient_rep(v, list(sub.source[2].cols))
                if oq.trace(v) != oq.trace(sub) + oq.trace(qt):
                    fails.append(f"tr V_{n} != tr soc + tr quotient (ell={ell})")
        return "D <= 6; trace identities on Weyl modules and tensors"
    return _run(10, "Cocommutative elements and traces", body)


# 11 --------------------------------------------------------------------------


def criterion_11(seed: int = 7) -> Check:
    def body(fails):
        for ell in ELLS:
            for pair in qmatrix.oq_agreement(100, seed, ell):
                fails.append(f"n=2 disagrees with oq at ell={ell}: {pair}")
        for n in (2, 3):
            for triple in qmatrix.confluence_sample(n, 300, seed):
                fails.append(f"n={n} not confluent: {triple}")
        import random
        rng = random.Random(seed)
        for n in (2, 3):
            for _ in range(100):
                x = qmatrix.random_monomial(n, 4, rng)
                y = qmatrix.reduce(x)
                if not y.is_normal():
                    fails.append(f"n={n}: {x} reduces off the Xi basis")
        return f"seed {seed}"
    return _run(11, "Quantum matrices: oq agreement, confluence, Xi support", body)


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run_all(seed: int = 7) -> list:
    out = []
    for fn in CRITERIA:
        out.append(fn(seed) if fn is criterion_11 else fn())
    return out
