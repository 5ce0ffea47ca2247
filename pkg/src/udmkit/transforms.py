"""Transformations that map UDM families to UDM families."""
from __future__ import annotations

from typing import Sequence

from .linalg import (
    Echelon,
    MatrixGF,
    identity_NK,
    inverse,
    kron_power,
    left_null_space,
    rank,
    reversal_NK,
)
from .udm import UdmFamily

__all__ = [
    "TransformError",
    "row_transform",
    "col_transform",
    "permute",
    "tensor_power",
    "pair_reversal",
    "normalize_leading_pair",
    "reduce",
    "mirrored",
]


class TransformError(ValueError):
    """A transformation could not be carried out on the given family."""


def row_transform(family: UdmFamily, ell: int, C: MatrixGF) -> UdmFamily:
    """Replace A_ell by C @ A_ell for lower-triangular C with non-zero diagonal."""
    N = family.N
    if C.shape != (N, N):
        raise TransformError(f"row transform must be {N}x{N}, got {C.shape}")
    if not C.is_lower_triangular():
        raise TransformError("row transform must be lower-triangular")
    if any(d == 0 for d in C.diagonal()):
        raise TransformError("row transform has a zero on its diagonal")
    if not 0 <= ell < family.L:
        raise TransformError(f"matrix index {ell} outside [0, {family.L})")
    mats = list(family.matrices)
    mats[ell] = C @ mats[ell]
    return family.with_matrices(mats)


def col_transform(family: UdmFamily, B: MatrixGF) -> UdmFamily:
    """Replace every A_ell by A_ell @ B for invertible K x K B."""
    K = family.K
    if B.shape != (K, K):
        raise TransformError(f"column transform must be {K}x{K}, got {B.shape}")
    if rank(B) != K:
        raise TransformError("column transform is singular")
    return family.with_matrices([M @ B for M in family.matrices])


def permute(family: UdmFamily, sigma: Sequence[int]) -> UdmFamily:
    """Reorder the family as A_sigma(0), ..., A_sigma(L-1)."""
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(family.L)):
        raise TransformError(f"{sigma} is not a permutation of range({family.L})")
    return family.with_matrices([family.matrices[s] for s in sigma])


def tensor_power(family: UdmFamily, m: int) -> UdmFamily:
    """m-fold Kronecker power of every matrix.

    UDM-ness of the result is not implied in general; it is for Pascal
    families over a prime field with N = K = p.
    """
    if m < 1:
        raise TransformError("tensor power needs m >= 1")
    if m == 1:
        return family
    return family.with_matrices([kron_power(M, m) for M in family.matrices])


def mirrored(family: UdmFamily, a: int, b: int) -> bool:
    """Row n of A_a equals row K-1-n of A_b for K-N <= n <= N-1."""
    N, K = family.N, family.K
    A, B = family.matrices[a], family.matrices[b]
    return all(A.row(n) == B.row(K - 1 - n) for n in range(max(K - N, 0), N))


def _mirror_pair(A0: MatrixGF, A1: MatrixGF) -> tuple[MatrixGF, MatrixGF]:
    F = A0.field
    N, K = A0.shape
    for n in range(K - N, N):
        B0 = A0.data[: n + 1]
        B1 = A1.data[: K - n]
        B = MatrixGF(F, list(B0) + list(B1), K)
        null = left_null_space(B)
        if len(null) != 1:
            raise TransformError(
                f"pair reversal step n={n}: left null space has dimension {len(null)}, expected 1 "
                "(input is not a UDM family)"
            )
        b = null[0]
        b0, b1 = b[: n + 1], b[n + 1:]
        if b0[-1] == 0 or b1[-1] == 0:
            raise TransformError(f"pair reversal step n={n}: null vector has a zero end component")
        s = F.inv(b0[-1])
        b0 = F.scale_row(s, b0)
        b1 = F.scale_row(s, b1)
        new = [0] * K
        for c, r in zip(b0, B0):
            if c:
                new = F.axpy(new, c, r)
        A0 = A0.replace_row(n, new)
        A1 = A1.replace_row(K - 1 - n, new)
    return A0, A1


def pair_reversal(family: UdmFamily) -> UdmFamily:
    """Make row n of A_{2i} equal row K-1-n of A_{2i+1} on the overlap.

    Pairs (0,1), (2,3), ... are processed in order; an odd last matrix is
    passed through.  Each replaced row is its old value plus a combination of
    earlier rows of the same matrix, so the family stays a UDM family.
    """
    N, K = family.N, family.K
    if K >= 2 * N:
        return family
    mats = list(family.matrices)
    for i in range(0, family.L - 1, 2):
        mats[i], mats[i + 1] = _mirror_pair(mats[i], mats[i + 1])
    return family.with_matrices(mats)


def normalize_leading_pair(family: UdmFamily) -> UdmFamily:
    """Column-transform the family so that A_0 = I_{N,K} and A_1 = J_{N,K}."""
    F, N, K = family.field, family.N, family.K
    if family.L < 2:
        raise TransformError("normalisation needs at least two matrices")
    I, J = identity_NK(F, N, K), reversal_NK(F, N, K)
    if family.matrices[0] == I and family.matrices[1] == J:
        return family
    A0, A1 = family.matrices[0], family.matrices[1]
    if K < 2 * N:
        A0, A1 = _mirror_pair(A0, A1)
    rows: list[list[int] | None] = [None] * K
    for n in range(N):
        rows[n] = list(A0.row(n))
    for n in range(min(N, K - N)):
        rows[K - 1 - n] = list(A1.row(n))
    ech = Echelon(F)
    for r in rows:
        if r is not None and not ech.add(r):
            raise TransformError("leading rows of A_0 and A_1 are dependent (input is not a UDM family)")
    # fill unspecified rows with the lowest-index standard basis vectors that raise the rank
    for i in range(K):
        if rows[i] is None:
            for j in range(K):
                e = [0] * K
                e[j] = 1
                if ech.add(e):
                    rows[i] = e
                    break
    Binv = inverse(MatrixGF(F, rows, K))
    mats = [M @ Binv for M in family.matrices]
    mats[0], mats[1] = A0 @ Binv, A1 @ Binv
    if mats[0] != I or mats[1] != J:
        raise TransformError("normalisation did not produce the identity/reversal pair")
    return family.with_matrices(mats)


def reduce(family: UdmFamily) -> UdmFamily:
    """(L, N, K, q) -> (L, N-1, K-1, q): drop the last row of every matrix,
    the first column of A_1 and the last column of the others."""
    N, K = family.N, family.K
    if N < 2:
        raise TransformError("reduction needs N >= 2")
    if family.L < 2:
        raise TransformError("reduction needs at least two matrices")
    if family.matrices[1].row(0) != tuple([0] * (K - 1) + [1]):
        raise TransformError("zeroth row of A_1 must be (0,...,0,1); run normalize_leading_pair first")
    mats = []
    for ell, M in enumerate(family.matrices):
        cols = range(1, K) if ell == 1 else range(K - 1)
        mats.append(M.submatrix(range(N - 1), cols))
    return family.with_matrices(mats, keep_kind=family.kind == "pascal")

