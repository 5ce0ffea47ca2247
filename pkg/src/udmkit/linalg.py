"""Dense exact linear algebra over GF(q).

Matrices hold integer element codes.  Pivoting takes the first row (top-down)
with a non-zero entry in the pivot column, so every echelon form, null-space
basis and row selection is deterministic.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .gf import GF, FieldError

__all__ = [
    "MatrixGF",
    "LinAlgError",
    "SingularSystemError",
    "InconsistentSystemError",
    "Echelon",
    "identity",
    "identity_NK",
    "reversal_NK",
    "rank",
    "solve",
    "inverse",
    "left_null_space",
    "kronecker",
    "kron_power",
    "stack_rows",
]


class LinAlgError(ArithmeticError):
    pass


class SingularSystemError(LinAlgError):
    pass


class InconsistentSystemError(LinAlgError):
    pass


class MatrixGF:
    """Immutable dense matrix over a field, stored row-major."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: GF, data: Iterable[Sequence[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"ragged matrix: row of length {len(r)}, expected {cols}")
            for x in r:
                if not 0 <= x < field.q:
                    raise FieldError(f"entry {x} outside GF({field.q})")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "MatrixGF":
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.field, zip(*self.data) if self.rows else [], self.rows)

    def replace(self, i: int, j: int, value: int) -> "MatrixGF":
        rows = self.tolist()
        rows[i][j] = value
        return MatrixGF(self.field, rows, self.cols)

    def replace_row(self, i: int, row: Sequence[int]) -> "MatrixGF":
        rows = self.tolist()
        rows[i] = list(row)
        return MatrixGF(self.field, rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "MatrixGF":
        cols = range(self.cols) if cols is None else cols
        return MatrixGF(self.field, [[self.data[i][j] for j in cols] for i in rows], len(cols))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.field, self.cols, self.data))

    def __matmul__(self, other):
        F = self.field
        if isinstance(other, MatrixGF):
            if other.field != F:
                raise FieldError("matrices over different fields")
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            out = []
            for r in self.data:
                acc = [0] * other.cols
                for a, orow in zip(r, other.data):
                    if a:
                        acc = F.axpy(acc, a, orow)
                out.append(acc)
            return MatrixGF(F, out, other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        out = []
        for r in self.data:
            acc = 0
            for a, b in zip(r, vec):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def is_lower_triangular(self) -> bool:
        return all(self.data[i][j] == 0 for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_upper_triangular(self) -> bool:
        return all(self.data[i][j] == 0 for i in range(self.rows) for j in range(min(i, self.cols)))

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.data[i][i] for i in range(min(self.rows, self.cols)))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.data)

    def __repr__(self) -> str:
        return f"MatrixGF({self.field!r}, {self.tolist()})"


def identity(field: GF, K: int) -> MatrixGF:
    return identity_NK(field, K, K)


def identity_NK(field: GF, N: int, K: int) -> MatrixGF:
    """First N rows of the K x K identity."""
    if N > K:
        raise ValueError(f"I_(N,K) needs N <= K, got N={N}, K={K}")
    return MatrixGF(field, [[1 if k == n else 0 for k in range(K)] for n in range(N)], K)


def reversal_NK(field: GF, N: int, K: int) -> MatrixGF:
    """First N rows of the K x K anti-diagonal matrix."""
    if N > K:
        raise ValueError(f"J_(N,K) needs N <= K, got N={N}, K={K}")
    return MatrixGF(field, [[1 if k == K - 1 - n else 0 for k in range(K)] for n in range(N)], K)


class Echelon:
    """Incrementally grown row basis with pivots normalised to one.

    Rows are reduced against the basis in insertion order; ``add`` reports
    whether the row was independent.  ``copy`` is cheap (rows are shared).
    """

    __slots__ = ("field", "pivots", "basis")

    def __init__(self, field: GF):
        self.field = field
        self.pivots: list[int] = []
        self.basis: list[list[int]] = []

    def copy(self) -> "Echelon":
        e = Echelon.__new__(Echelon)
        e.field = self.field
        e.pivots = self.pivots.copy()
        e.basis = self.basis.copy()
        return e

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, row: Sequence[int]) -> list[int]:
        F = self.field
        r = list(row)
        for pc, b in zip(self.pivots, self.basis):
            c = r[pc]
            if c:
                r = F.axpy(r, F.neg(c), b)
        return r

    def add(self, row: Sequence[int]) -> bool:
        r = self.reduce(row)
        for j, x in enumerate(r):
            if x:
                F = self.field
                self.pivots.append(j)
                self.basis.append(F.scale_row(F.inv(x), r) if x != 1 else r)
                return True
        return False


def rank(M: MatrixGF) -> int:
    e = Echelon(M.field)
    for r in M.data:
        e.add(r)
        if e.rank == M.cols:
            break
    return e.rank


def _independent_rows(M: MatrixGF) -> list[int]:
    e = Echelon(M.field)
    keep = []
    for i, r in enumerate(M.data):
        if e.add(r):
            keep.append(i)
            if len(keep) == M.cols:
                break
    return keep


def _solve_square(F, a: list[list[int]], y: list[int]) -> list[int]:
    """Gauss-Jordan on the augmented system; ``F`` may be a counting wrapper."""
    n = len(a)
    aug = [list(r) + [v] for r, v in zip(a, y)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise SingularSystemError(f"singular system: no pivot in column {c}")
        if piv != c:
            aug[c], aug[piv] = aug[piv], aug[c]
        pr = aug[c]
        if pr[c] != 1:
            pr = aug[c] = [0] * c + F.scale_row(F.inv(pr[c]), pr[c:])
        for i in range(c + 1, n):
            f = aug[i][c]
            if f:
                aug[i] = aug[i][:c] + F.axpy(aug[i][c:], F.neg(f), pr[c:])
    x = [0] * n
    for c in range(n - 1, -1, -1):
        acc = aug[c][n]
        for j in range(c + 1, n):
            if aug[c][j]:
                acc = F.sub(acc, F.mul(aug[c][j], x[j]))
        x[c] = acc
    return x


def solve(A: MatrixGF, y: Sequence[int], ops=None) -> list[int]:
    """Unique solution of ``A x = y`` for square or tall full-column-rank A.

    A tall system is cut down to the first ``cols`` linearly independent
    equations; the remaining equations are then checked for consistency.
    ``ops`` optionally replaces the field for counted arithmetic.
    """
    F = ops if ops is not None else A.field
    y = list(y)
    if len(y) != A.rows:
        raise ValueError(f"right-hand side of length {len(y)} for {A.rows} equations")
    if A.rows < A.cols:
        raise SingularSystemError(f"underdetermined system: {A.rows} equations, {A.cols} unknowns")
    if A.rows == A.cols:
        keep = list(range(A.rows))
    else:
        keep = _independent_rows(A)
        if len(keep) < A.cols:
            raise SingularSystemError(f"rank {len(keep)} < {A.cols} unknowns")
    x = _solve_square(F, [list(A.data[i]) for i in keep], [y[i] for i in keep])
    if A.rows > A.cols:
        kept = set(keep)
        check = A @ x
        for i in range(A.rows):
            if i not in kept and check[i] != y[i]:
                raise InconsistentSystemError(f"equation {i} is inconsistent with the others")
    return x


def inverse(A: MatrixGF) -> MatrixGF:
    if A.rows != A.cols:
        raise ValueError(f"inverse of non-square {A.rows}x{A.cols} matrix")
    F, n = A.field, A.rows
    aug = [list(r) + [1 if j == i else 0 for j in range(n)] for i, r in enumerate(A.data)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise SingularSystemError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        aug[c] = F.scale_row(F.inv(aug[c][c]), aug[c])
        for i in range(n):
            if i != c and aug[i][c]:
                aug[i] = F.axpy(aug[i], F.neg(aug[i][c]), aug[c])
    return MatrixGF(F, [r[n:] for r in aug], n)


def _rref(F: GF, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        m[r] = F.scale_row(F.inv(m[r][c]), m[r])
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = F.axpy(m[i], F.neg(m[i][c]), m[r])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def left_null_space(A: MatrixGF) -> list[list[int]]:
    """Basis of {b : b^T A = 0}, one vector per free variable of RREF(A^T)."""
    F = A.field
    if A.rows == 0:
        return []
    red, pivots = _rref(F, [list(A.col(j)) for j in range(A.cols)], A.rows)
    free = [j for j in range(A.rows) if j not in pivots]
    basis = []
    for f in free:
        b = [0] * A.rows
        b[f] = 1
        for row, pc in zip(red, pivots):
            b[pc] = F.neg(row[f])
        basis.append(b)
    return basis


def kronecker(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    if A.field != B.field:
        raise FieldError("kronecker product of matrices over different fields")
    F = A.field
    out = []
    for ar in A.data:
        for br in B.data:
            row = []
            for a in ar:
                row.extend(F.scale_row(a, br))
            out.append(row)
    return MatrixGF(F, out, A.cols * B.cols)


def kron_power(A: MatrixGF, m: int) -> MatrixGF:
    if m < 1:
        raise ValueError("tensor power needs m >= 1")
    out = A
    for _ in range(m - 1):
        out = kronecker(out, A)
    return out


def stack_rows(blocks: Sequence[tuple[MatrixGF, int]]) -> MatrixGF:
    """Concatenate the leading ``count`` rows of each block."""
    if not blocks:
        raise ValueError("stack_rows needs at least one block")
    F, cols = blocks[0][0].field, blocks[0][0].cols
    out: list[tuple[int, ...]] = []
    for M, count in blocks:
        if M.field != F or M.cols != cols:
            raise ValueError("stacked blocks must share field and column count")
        if not 0 <= count <= M.rows:
            raise ValueError(f"row count {count} outside [0, {M.rows}]")
        out.extend(M.data[:count])
    return MatrixGF(F, out, cols)
