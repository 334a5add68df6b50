"""Exact field arithmetic and dense/sparse linear algebra.

Two coefficient fields are supported: the rationals (arbitrary precision,
backed by gmpy2.mpq) and prime fields F_p for an odd prime p.  Everything
downstream (polynomials, graded algebras, resolutions) funnels its linear
algebra through this module.

Pivoting is deterministic: leftmost nonzero column, first nonzero row.
There is no numerical pivoting because the arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from gmpy2 import mpq


class FieldMismatch(ValueError):
    pass


class Rationals:
    """Field descriptor for Q.  Elements are gmpy2.mpq values."""

    characteristic = 0

    def of(self, x):
        if isinstance(x, (int, Fraction)):
            return mpq(x)
        if isinstance(x, str):
            return mpq(x)
        if isinstance(x, type(mpq(0))):
            return x
        raise TypeError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return mpq(0)

    @property
    def one(self):
        return mpq(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / mpq(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """Field descriptor for F_p, p an odd prime.  Elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p < 3 or any(p % q == 0 for q in range(2, min(p, 1 + int(p ** 0.5) + 1))):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p

    @property
    def characteristic(self):
        return self.p

    def of(self, x):
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/")
                return (int(num) * pow(int(den), -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, type(mpq(0))):
            return (int(x.numerator) * pow(int(x.denominator), -1, self.p)) % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F{self.p}"


QQ = Rationals()

#: default fast-path modulus; the paper's conclusions are characteristic
#: independent away from 2, and 32003 keeps numpy int64 matmuls exact
DEFAULT_PRIME = 32003


def field_from_name(name: str):
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F"):
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


class Matrix:
    """Dense matrix over a single field.  Immutable by convention."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries):
        if len(entries) != rows * cols:
            raise ValueError("entries length != rows*cols")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = [field.of(e) for e in entries]

    @classmethod
    def from_rows(cls, field, rowdata):
        rowdata = [list(r) for r in rowdata]
        rows = len(rowdata)
        cols = len(rowdata[0]) if rows else 0
        if any(len(r) != cols for r in rowdata):
            raise ValueError("ragged rows")
        flat = [e for r in rowdata for e in r]
        return cls(field, rows, cols, flat)

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        ent = [field.one if i == j else field.zero for i in range(n) for j in range(n)]
        return cls(field, n, n, ent)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        ent = [self[i, j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.field, self.cols, self.rows, ent)

    def matvec(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            s = self.field.zero
            for j in range(self.cols):
                s = s + self[i, j] * v[j]
            out.append(self.field.of(s) if self.field is not QQ else s)
        if isinstance(self.field, PrimeField):
            out = [x % self.field.p for x in out]
        return out

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch("field mismatch")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        f = self.field
        ent = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                s = f.zero
                for k in range(self.cols):
                    s = s + ri[k] * other[k, j]
                if isinstance(f, PrimeField):
                    s = s % f.p
                ent.append(s)
        return Matrix(f, self.rows, other.cols, ent)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"


def _check_uniform(ms):
    f = ms[0].field
    for m in ms[1:]:
        if m.field != f:
            raise FieldMismatch("field mismatch")


def rref(M: Matrix):
    """Reduced row-echelon form.  Returns (matrix, pivot column list)."""
    f = M.field
    rows = M.to_rows()
    pivots = []
    r = 0
    for c in range(M.cols):
        sel = None
        for i in range(r, M.rows):
            if rows[i][c] != f.zero:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.of(inv * e) for e in rows[r]]
        for i in range(M.rows):
            if i != r and rows[i][c] != f.zero:
                fac = rows[i][c]
                rows[i] = [f.of(a - fac * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return Matrix.from_rows(f, rows) if M.rows else M, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def nullspace_basis(M: Matrix):
    """Canonical nullspace basis: one vector per RREF free column, with a
    unit in the free position and zeros in the other free positions."""
    R, pivots = rref(M)
    f = M.field
    pivset = set(pivots)
    free = [c for c in range(M.cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [f.zero] * M.cols
        v[fc] = f.one
        for r_i, pc in enumerate(pivots):
            v[pc] = f.of(-R[r_i, fc])
        basis.append(v)
    return basis


def solve_linear(A: Matrix, b):
    """Some solution of Ax = b with free variables set to zero, or None."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    f = A.field
    aug = Matrix.from_rows(f, [A.row(i) + [f.of(b[i])] for i in range(A.rows)]) \
        if A.rows else Matrix.zero(f, 0, A.cols + 1)
    R, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [f.zero] * A.cols
    for r_i, pc in enumerate(pivots):
        x[pc] = R[r_i, A.cols]
    return x


def det(M: Matrix):
    """Determinant by fraction-free style elimination (exact)."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    f = M.field
    rows = M.to_rows()
    n = M.rows
    d = f.one
    for c in range(n):
        sel = None
        for i in range(c, n):
            if rows[i][c] != f.zero:
                sel = i
                break
        if sel is None:
            return f.zero
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            d = f.of(-d)
        piv = rows[c][c]
        d = f.of(d * piv)
        inv = f.inv(piv)
        for i in range(c + 1, n):
            if rows[i][c] != f.zero:
                fac = f.of(rows[i][c] * inv)
                rows[i] = [f.of(a - fac * b) for a, b in zip(rows[i], rows[c])]
    return d


# --------------------------------------------------------------------------
# Sparse / bulk elimination engines.
#
# The graded-algebra builds reduce spans with thousands of rows; the dense
# Matrix API above is too slow for that.  SparseEchelon keeps RREF rows as
# {col: value} dicts (rationals), GFEchelon keeps a dense numpy block and
# eliminates by exact float64/int64 matmul (prime fields).


class SparseEchelon:
    """Incrementally maintained RREF over Q, rows stored sparsely."""

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivrows = {}      # pivot col -> row dict (pivot entry == 1)
        self.pivots = []       # sorted pivot cols

    @property
    def rank(self):
        return len(self.pivrows)

    def reduce(self, row: dict) -> dict:
        f = self.field
        out = dict(row)
        for c in sorted(out):
            val = out.get(c)
            if val is None or val == 0:
                continue
            pr = self.pivrows.get(c)
            if pr is None:
                continue
            for cc, vv in pr.items():
                nv = out.get(cc, f.zero) - val * vv
                if nv == 0:
                    out.pop(cc, None)
                else:
                    out[cc] = nv
        return {c: v for c, v in out.items() if v != 0}

    def add_row(self, row: dict) -> bool:
        """Reduce and absorb a row; True iff the rank grew."""
        f = self.field
        red = self.reduce(row)
        if not red:
            return False
        p = min(red)
        inv = f.inv(red[p])
        newrow = {c: f.of(inv * v) for c, v in red.items()}
        # back-eliminate the new pivot from existing rows
        for pc, pr in self.pivrows.items():
            val = pr.get(p)
            if val is not None:
                for cc, vv in newrow.items():
                    nv = pr.get(cc, f.zero) - val * vv
                    if nv == 0:
                        pr.pop(cc, None)
                    else:
                        pr[cc] = nv
        self.pivrows[p] = newrow
        self.pivots = sorted(self.pivrows)
        return True

    def add_rows(self, rows, stop_rank=None):
        for row in rows:
            self.add_row(row)
            if stop_rank is not None and self.rank >= stop_rank:
                break
        return self.rank

    def reduced_rows(self):
        """The RREF rows as {pivot col: {col: value}}."""
        return {pc: dict(pr) for pc, pr in self.pivrows.items()}


class GFEchelon:
    """Incrementally maintained RREF over F_p, dense numpy storage.

    Bulk row absorption reduces whole chunks against the current pivots with
    one matmul; exactness of the float64 path is guaranteed as long as
    rank * p**2 < 2**53, otherwise int64 matmul is used.
    """

    CHUNK = 256

    def __init__(self, field: PrimeField, ncols: int):
        self.field = field
        self.p = field.p
        self.ncols = ncols
        self.E = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = []

    @property
    def rank(self):
        return len(self.pivots)

    def _matmul_mod(self, A, B):
        bound = A.shape[1] * (self.p - 1) ** 2
        if bound < 2 ** 53:
            return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % self.p
        return (A @ B) % self.p

    def _reduce_block(self, V):
        if self.rank and V.size:
            V = (V - self._matmul_mod(V[:, self.pivots], self.E)) % self.p
        return V % self.p

    def reduce(self, row):
        v = self._row_to_np(row)
        return self._reduce_block(v.reshape(1, -1))[0]

    def _row_to_np(self, row):
        if isinstance(row, np.ndarray):
            return row.astype(np.int64) % self.p
        v = np.zeros(self.ncols, dtype=np.int64)
        for c, val in row.items():
            v[c] = val % self.p
        return v

    def add_row(self, row) -> bool:
        return self.add_rows([row]) == 1

    def add_rows(self, rows, stop_rank=None) -> int:
        """Absorb rows (dicts or ndarrays); returns number of new pivots."""
        added = 0
        buf = []
        it = iter(rows)
        while True:
            if stop_rank is not None and self.rank >= stop_rank:
                break
            chunk = []
            for row in it:
                chunk.append(self._row_to_np(row))
                if len(chunk) >= self.CHUNK:
                    break
            if not chunk:
                break
            V = self._reduce_block(np.stack(chunk))
            added += self._absorb_reduced(V)
        return added

    def _absorb_reduced(self, V):
        """Gaussian-eliminate a pre-reduced chunk, then splice into E."""
        p = self.p
        keep = []
        newpivs = []
        for i in range(V.shape[0]):
            nz = np.nonzero(V[i])[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            V[i] = (V[i] * pow(int(V[i][c]), -1, p)) % p
            if i + 1 < V.shape[0]:
                col = V[i + 1:, c]
                hit = np.nonzero(col)[0]
                if hit.size:
                    V[i + 1 + hit] = (V[i + 1 + hit] - np.outer(col[hit], V[i])) % p
            keep.append(i)
            newpivs.append(c)
        if not keep:
            return 0
        N = V[keep]
        # back-substitution pass so the chunk itself is in RREF
        for idx in range(len(keep) - 1, -1, -1):
            col = N[:, newpivs[idx]].copy()
            col[idx] = 0
            hit = np.nonzero(col)[0]
            if hit.size:
                N[hit] = (N[hit] - np.outer(col[hit], N[idx])) % p
        if self.rank:
            coef = self.E[:, newpivs]
            if coef.any():
                self.E = (self.E - self._matmul_mod(coef, N)) % p
        self.E = np.vstack([self.E, N])
        self.pivots = self.pivots + newpivs
        order = np.argsort(self.pivots, kind="stable")
        self.E = self.E[order]
        self.pivots = [self.pivots[i] for i in order]
        return len(newpivs)

    def reduced_rows(self):
        """The RREF rows as {pivot col: {col: value}}."""
        out = {}
        for i, pc in enumerate(self.pivots):
            row = self.E[i]
            nz = np.nonzero(row)[0]
            out[pc] = {int(c): int(row[c]) for c in nz}
        return out


def make_echelon(field, ncols: int):
    if isinstance(field, PrimeField):
        return GFEchelon(field, ncols)
    return SparseEchelon(field, ncols)


def kernel_of_rows(rows, ncols, field):
    """Nullspace basis of the matrix with the given (sparse dict) rows.

    Returns sparse dict vectors with the canonical free-column unit pattern,
    in free-column order.
    """
    ech = make_echelon(field, ncols)
    ech.add_rows(rows)
    return echelon_nullspace(ech)


def echelon_nullspace(ech):
    """Canonical nullspace vectors of the row space held by an echelon."""
    field = ech.field
    pivset = set(ech.pivots)
    basis = []
    if isinstance(ech, SparseEchelon):
        for fc in range(ech.ncols):
            if fc in pivset:
                continue
            v = {fc: field.one}
            for pc, pr in ech.pivrows.items():
                val = pr.get(fc)
                if val is not None and val != 0:
                    v[pc] = field.of(-val)
            basis.append(v)
    else:
        p = ech.p
        for fc in range(ech.ncols):
            if fc in pivset:
                continue
            v = {fc: 1}
            col = ech.E[:, fc]
            nz = np.nonzero(col)[0]
            for ri in nz:
                v[ech.pivots[int(ri)]] = int(-col[ri]) % p
            basis.append(v)
    return basis
