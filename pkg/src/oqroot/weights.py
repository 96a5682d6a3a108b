"""Weight combinatorics for sl_n in fundamental-weight coordinates.

A weight of sl_n is stored as its n-1 coordinates <lambda, alpha_i^vee>.
Simple roots are the rows of the Cartan matrix, so every root lives in the
same integer coordinate system.  For rank 1 the single coordinate is the
usual highest weight n of V_n.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache


@dataclass(frozen=True, order=True)
class Weight:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def of(cls, *coords: int) -> "Weight":
        return cls(tuple(coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scaled(self, k: int) -> "Weight":
        return Weight(tuple(k * a for a in self.coords))

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def __str__(self):
        if self.rank == 1:
            return str(self.coords[0])
        return "(" + ", ".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class AffineReflection:
    beta: tuple[int, int]  # positive root alpha_i + ... + alpha_j as the index pair (i, j)
    m: int
    ell: int


@dataclass
class LinkageOrbit:
    representative: Weight
    ell: int
    bound: int
    members: list[Weight] = field(default_factory=list)

    def coords(self) -> list[list[int]]:
        return [list(w.coords) for w in self.members]


def rho(rank: int) -> Weight:
    return Weight((1,) * rank)


@lru_cache(maxsize=None)
def cartan(rank: int) -> tuple[tuple[int, ...], ...]:
    rows = []
    for i in range(rank):
        row = [0] * rank
        row[i] = 2
        if i > 0:
            row[i - 1] = -1
        if i + 1 < rank:
            row[i + 1] = -1
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def positive_roots(rank: int) -> tuple[tuple[int, int], ...]:
    """Positive roots as index pairs (i, j), i <= j, meaning alpha_i + ... + alpha_j."""
    return tuple((i, j) for i in range(rank) for j in range(i, rank))


def root_vector(beta: tuple[int, int], rank: int) -> Weight:
    i, j = beta
    c = cartan(rank)
    return Weight(tuple(sum(c[k][t] for k in range(i, j + 1)) for t in range(rank)))


def coroot_pairing(w: Weight, beta: tuple[int, int]) -> int:
    # simply laced: beta^vee = sum of simple coroots in the support
    i, j = beta
    return sum(w.coords[i:j + 1])


def highest_root(rank: int) -> tuple[int, int]:
    return (0, rank - 1)


def dot_reflect(r: AffineReflection, w: Weight) -> Weight:
    """s_{beta,m} . w = s_beta(w + rho) - rho + m*ell*beta."""
    rk = w.rank
    shifted = w + rho(rk)
    beta = root_vector(r.beta, rk)
    img = shifted - beta.scaled(coroot_pairing(shifted, r.beta))
    return img - rho(rk) + beta.scaled(r.m * r.ell)


def in_fundamental_domain(w: Weight, ell: int) -> bool:
    shifted = w + rho(w.rank)
    return all(0 <= coroot_pairing(shifted, b) <= ell for b in positive_roots(w.rank))


def is_steinberg_family(w: Weight, ell: int) -> bool:
    return all(c >= ell - 1 and (c - (ell - 1)) % ell == 0 for c in w.coords)


def height2(w: Weight) -> int:
    """Twice <w, rho^vee>."""
    n = w.rank + 1
    return sum(c * (i + 1) * (n - i - 1) for i, c in enumerate(w.coords))


def sort_key(w: Weight) -> tuple:
    return (height2(w), w.coords)


def orbit_dominant(w: Weight, ell: int, bound: int) -> LinkageOrbit:
    """Dominant members nu of W_ell . w with <nu + rho, beta^vee> <= bound for all beta > 0.

    Breadth-first closure under every s_{beta,m} inside a box a little larger
    than the requested one; the box margin covers the alcove walk between the
    fundamental domain and any target weight.
    """
    if not in_fundamental_domain(w, ell):
        raise ValueError(f"{w} is not in the closed fundamental domain for ell={ell}")
    rk = w.rank
    roots = positive_roots(rk)
    box = bound + 2 * ell + 2
    mmax = box // ell + 2

    def inside(x: Weight) -> bool:
        s = x + rho(rk)
        return all(abs(coroot_pairing(s, b)) <= box for b in roots)

    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for b in roots:
            for m in range(-mmax, mmax + 1):
                y = dot_reflect(AffineReflection(b, m, ell), x)
                if y not in seen and inside(y):
                    seen.add(y)
                    queue.append(y)
    members = [
        x for x in seen
        if x.is_dominant() and all(coroot_pairing(x + rho(rk), b) <= bound for b in roots)
    ]
    members.sort(key=sort_key)
    return LinkageOrbit(representative=w, ell=ell, bound=bound, members=members)


def linkage_representative(w: Weight, ell: int, bound: int | None = None) -> Weight:
    """The unique element of the closed fundamental domain linked to w."""
    rk = w.rank
    if bound is None:
        bound = max(abs(c) for c in w.coords) * rk + 2 * ell
    box = bound + 2 * ell + 2
    mmax = box // ell + 2
    roots = positive_roots(rk)
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        if in_fundamental_domain(x, ell):
            return x
        for b in roots:
            for m in range(-mmax, mmax + 1):
                y = dot_reflect(AffineReflection(b, m, ell), x)
                s = y + rho(rk)
                if y not in seen and all(abs(coroot_pairing(s, bb)) <= box for bb in roots):
                    seen.add(y)
                    queue.append(y)
    raise RuntimeError(f"no fundamental-domain representative found for {w}")


# rank 1

def sl2_prime(n: int, ell: int) -> int | None:
    n0, n1 = n % ell, n // ell
    if n1 == 0 or n0 == ell - 1:
        return None
    return (ell - 2 - n0) + ell * (n1 - 1)


def sl2_sequence(n: int, ell: int, count: int) -> list[int]:
    if not 0 <= n <= ell - 2:
        raise ValueError(f"sequence start must satisfy 0 <= n <= ell-2, got {n}")
    if count <= 0:
        return []
    # each orbit member below 2*ell*k: at most two per ell-window pair
    bound = ell * (count + 2) + 2
    orbit = orbit_dominant(Weight((n,)), ell, bound)
    seq = [w.coords[0] for w in orbit.members][:count]
    while len(seq) < count:
        bound *= 2
        orbit = orbit_dominant(Weight((n,)), ell, bound)
        seq = [w.coords[0] for w in orbit.members][:count]
    for a, b in zip(seq, seq[1:]):
        if sl2_prime(b, ell) != a:
            raise AssertionError(f"orbit order broken: {b}' != {a} (ell={ell})")
    return seq


def sl2_block_of(n: int, ell: int) -> int | None:
    """Block label n_1 in {0..ell-2} of the linkage class of n; None for the Steinberg family."""
    if n % ell == ell - 1:
        return None
    r = n % (2 * ell)
    return r if r <= ell - 2 else 2 * ell - 2 - r
