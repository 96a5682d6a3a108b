"""Sparse exact linear algebra over an arbitrary field.

Vectors are ``dict`` objects mapping an index to a nonzero field element.
Matrices are column-sparse (:class:`SMat`): column ``j`` is the image of the
``j``-th basis vector.  Nothing here knows which field it runs over; the
entries only need ``+ - * /`` and truthiness for zero.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def vadd(x: dict, y: dict, c=None) -> dict:
    """x + c*y (c defaults to 1) as a new dict."""
    out = dict(x)
    for k, b in y.items():
        if c is not None:
            b = b * c
        s = out.get(k)
        s = b if s is None else s + b
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vaxpy(x: dict, y: dict, c) -> None:
    """In place x += c*y."""
    for k, b in y.items():
        s = x.get(k)
        s = b * c if s is None else s + b * c
        if s:
            x[k] = s
        else:
            del x[k]


def vscale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: a * c for k, a in x.items()}


class SMat:
    """Column-sparse matrix with shape (nrows, ncols)."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [{} for _ in range(ncols)]
        self.cols = cols
        assert len(self.cols) == ncols

    @classmethod
    def identity(cls, n: int, one) -> "SMat":
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "SMat":
        cols = [{} for _ in range(ncols)]
        for (i, j), v in entries:
            if v:
                s = cols[j].get(i)
                s = v if s is None else s + v
                if s:
                    cols[j][i] = s
                else:
                    cols[j].pop(i, None)
        return cls(nrows, ncols, cols)

    @classmethod
    def from_dense(cls, rows: list) -> "SMat":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        return cls.from_entries(nr, nc, (((i, j), rows[i][j]) for i in range(nr) for j in range(nc)))

    @classmethod
    def from_columns(cls, nrows: int, columns: list) -> "SMat":
        return cls(nrows, len(columns), [dict(c) for c in columns])

    def entries(self) -> Iterator:
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                yield (i, j), v

    def get(self, i: int, j: int, default=0):
        return self.cols[j].get(i, default)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            col = self.cols[j]
            if col:
                vaxpy(out, col, c)
        return out

    def __matmul__(self, other: "SMat") -> "SMat":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SMat(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SMat") -> "SMat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return SMat(self.nrows, self.ncols, [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "SMat") -> "SMat":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return SMat(self.nrows, self.ncols, [vadd(a, {k: -x for k, x in b.items()}) for a, b in zip(self.cols, other.cols)])

    def scale(self, c) -> "SMat":
        return SMat(self.nrows, self.ncols, [vscale(col, c) for col in self.cols])

    def __neg__(self):
        return SMat(self.nrows, self.ncols, [{k: -x for k, x in col.items()} for col in self.cols])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def transpose(self) -> "SMat":
        cols = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v
        return SMat(self.ncols, self.nrows, cols)

    T = property(transpose)

    def rows(self) -> list:
        return self.transpose().cols

    def __eq__(self, other):
        if not isinstance(other, SMat):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.cols, other.cols))

    def kron(self, other: "SMat") -> "SMat":
        """Kronecker product; index (i, r) -> i * other.nrows + r."""
        nr, nc = other.nrows, other.ncols
        cols = []
        for j, a in enumerate(self.cols):
            for s, b in enumerate(other.cols):
                col = {}
                for i, x in a.items():
                    for r, y in b.items():
                        col[i * nr + r] = x * y
                cols.append(col)
        return SMat(self.nrows * nr, self.ncols * nc, cols)

    def restrict(self, row_idx: list, col_idx: list) -> "SMat":
        pos = {r: k for k, r in enumerate(row_idx)}
        cols = []
        for j in col_idx:
            cols.append({pos[i]: v for i, v in self.cols[j].items() if i in pos})
        return SMat(len(row_idx), len(col_idx), cols)

    def map(self, f) -> "SMat":
        cols = []
        for col in self.cols:
            c = {}
            for i, v in col.items():
                w = f(v)
                if w:
                    c[i] = w
            cols.append(c)
        return SMat(self.nrows, self.ncols, cols)

    def to_dense(self, zero=0) -> list:
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries():
            out[i][j] = v
        return out

    def __repr__(self):
        return f"SMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"


class Echelon:
    """Reduced row echelon basis of a subspace, grown one vector at a time.

    Every stored row has a 1 at its pivot and zeros at all other pivots, so the
    coordinates of a vector of the span are its entries at the pivots.
    """

    __slots__ = ("rows", "order")

    def __init__(self, vectors: Iterable[dict] = ()):
        self.rows: dict = {}
        self.order: list = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        r = dict(vec)
        rows = self.rows
        hit = [p for p in r if p in rows]
        while hit:
            for p in hit:
                c = r.get(p)
                if c:
                    vaxpy(r, rows[p], -c)
            hit = [p for p in r if p in rows]
        return r

    def add(self, vec: dict) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p] if not _is_one(r[p]) else None
        if inv is not None:
            r = {k: x * inv for k, x in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                vaxpy(row, r, -c)
        self.rows[p] = r
        self.order.append(p)
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def coords(self, vec: dict) -> dict:
        """Coordinates of vec with respect to basis(); raises if vec is outside the span."""
        if self.reduce(vec):
            raise ValueError("vector not in span")
        pos = self.position()
        return {pos[p]: vec[p] for p in vec if p in self.rows}

    def position(self) -> dict:
        return {p: k for k, p in enumerate(self.order)}

    def basis(self) -> list:
        return [self.rows[p] for p in self.order]

    def pivots(self) -> list:
        return list(self.order)

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = {p: dict(r) for p, r in self.rows.items()}
        e.order = list(self.order)
        return e


def _is_one(x) -> bool:
    try:
        return x == 1
    except Exception:
        return False


def rank(vectors: Iterable[dict]) -> int:
    return Echelon(vectors).dim


def nullspace(equations: Iterable[dict], unknowns: Iterable, one=1) -> list:
    """Basis of {x : sum_k eq[k] x[k] == 0 for every equation}.

    ``unknowns`` lists every unknown key; the solutions are dicts over them.
    """
    ech = Echelon()
    for eq in equations:
        if eq:
            ech.add(eq)
    basis = []
    for f in unknowns:
        if f in ech.rows:
            continue
        sol = {f: one}
        for p, row in ech.rows.items():
            c = row.get(f)
            if c:
                sol[p] = -c
        basis.append(sol)
    return basis


def inverse(m: SMat, one) -> SMat:
    """Inverse of a square matrix via Gauss-Jordan on [M | I]."""
    n = m.nrows
    if m.ncols != n:
        raise ValueError("inverse of a non-square matrix")
    rows = m.rows()
    ech = Echelon()
    for i, r in enumerate(rows):
        v = {(0, j): a for j, a in r.items()}
        v[(1, i)] = one
        ech.add(v)
    out_rows = [None] * n
    for j in range(n):
        row = ech.rows.get((0, j))
        if row is None:
            raise ZeroDivisionError("singular matrix")
        out_rows[j] = {k[1]: a for k, a in row.items() if k[0] == 1}
    for row in ech.rows.values():
        if not any(k[0] == 0 for k in row):
            raise ZeroDivisionError("singular matrix")
    return SMat(n, n, out_rows).transpose()


def is_invertible(m: SMat) -> bool:
    if m.nrows != m.ncols:
        return False
    return rank(m.cols) == m.nrows


def left_inverse(m: SMat, one) -> SMat:
    """A matrix P with P @ m = I for m of full column rank.

    Built from a set of pivot rows: choose rows where m restricted is invertible.
    """
    ech = Echelon()
    rows = m.rows()
    chosen = []
    for i, r in enumerate(rows):
        if ech.add(r):
            chosen.append(i)
            if ech.dim == m.ncols:
                break
    if ech.dim < m.ncols:
        raise ValueError("matrix does not have full column rank")
    sq = m.restrict(chosen, list(range(m.ncols)))
    inv = inverse(sq, one)
    cols = [{} for _ in range(m.nrows)]
    for k, i in enumerate(chosen):
        cols[i] = dict(inv.cols[k])
    return SMat(m.ncols, m.nrows, cols)


def image_basis(m: SMat) -> list:
    return Echelon(m.cols).basis()


def kernel(m: SMat, one=1) -> list:
    """Basis of ker m as vectors indexed by column number."""
    return nullspace(m.rows(), range(m.ncols), one)


class GradedSpan:
    """A subspace spanned by homogeneous vectors, one Echelon per grade.

    ``grade`` maps a coordinate index to its grade; vectors handed to
    :meth:`add` are split into homogeneous components first.
    """

    def __init__(self, grade):
        self.grade = grade
        self.parts: dict = {}

    def split(self, vec: dict) -> dict:
        out: dict = {}
        for k, x in vec.items():
            out.setdefault(self.grade(k), {})[k] = x
        return out

    def add(self, vec: dict) -> list:
        """Add the homogeneous components of vec; return the new (reduced) ones."""
        new = []
        for g, part in self.split(vec).items():
            ech = self.parts.get(g)
            if ech is None:
                ech = self.parts[g] = Echelon()
            r = ech.reduce(part)
            if r and ech.add(r):
                new.append(r)
        return new

    def contains(self, vec: dict) -> bool:
        for g, part in self.split(vec).items():
            ech = self.parts.get(g)
            if ech is None or ech.reduce(part):
                return False
        return True

    @property
    def dim(self) -> int:
        return sum(e.dim for e in self.parts.values())

    def basis(self) -> list:
        out = []
        for g in sorted(self.parts):
            out.extend(self.parts[g].basis())
        return out

    def pivot_order(self) -> list:
        """Pivots aligned with basis()."""
        out = []
        for g in sorted(self.parts):
            out.extend(self.parts[g].order)
        return out

    def pivots(self) -> set:
        out = set()
        for e in self.parts.values():
            out.update(e.rows)
        return out

    def reduce(self, vec: dict) -> dict:
        out: dict = {}
        for g, part in self.split(vec).items():
            ech = self.parts.get(g)
            out.update(ech.reduce(part) if ech is not None else part)
        return out
