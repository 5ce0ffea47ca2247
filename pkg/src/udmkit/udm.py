"""UDM families: constructions, exhaustive verification, bounds on L."""
from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .gf import GF, FieldElement, FieldError, field_new
from .linalg import Echelon, MatrixGF, identity_NK, rank, reversal_NK, stack_rows
from .poly import INFINITY, binomial_mod_p

__all__ = [
    "UdmFamily",
    "BetaSequence",
    "VerificationReport",
    "LBound",
    "BoundViolationError",
    "construct_pascal",
    "construct_monomial_variant",
    "construct_q_plus_2",
    "enumerate_patterns",
    "count_patterns",
    "check_pattern",
    "verify",
    "max_L_bound",
    "check_mds_zeroth_rows",
]

BOUND_CITATION = "L <= q+1 (upper bound on L whenever 2 <= K <= 2N)"
BOUND_CITATION_2 = "L <= q+2 (upper bound on L when K = 2N+1)"


class BoundViolationError(ValueError):
    """Requested parameters exceed what the construction (or any UDM) allows."""


@dataclass(frozen=True)
class BetaSequence:
    """Evaluation points 0, INFINITY, alpha^0, alpha^1, ... of a Pascal family."""

    field: GF
    points: tuple

    @classmethod
    def pascal(cls, field: GF, L: int, alpha: int | None = None) -> "BetaSequence":
        a = field.alpha if alpha is None else alpha
        pts: list = [0, INFINITY][:L]
        pts += [field.pow(a, ell) for ell in range(L - 2)]
        return cls(field, tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


@dataclass(eq=True)
class UdmFamily:
    """L matrices of size N x K over one field.

    ``kind``/``alpha`` record a known construction (used by the Newton
    decoder to recover the evaluation points); ``origin`` is informational.
    """

    field: GF
    matrices: tuple[MatrixGF, ...]
    kind: str | None = None
    alpha: int | None = None
    origin: str = dc_field(default="constructed", compare=False)

    def __post_init__(self):
        self.matrices = tuple(self.matrices)
        if not self.matrices:
            raise ValueError("a family needs at least one matrix")
        N, K = self.matrices[0].shape
        for i, M in enumerate(self.matrices):
            if M.field != self.field:
                raise FieldError(f"matrix {i} is over {M.field}, family over {self.field}")
            if M.shape != (N, K):
                raise ValueError(f"matrix {i} has shape {M.shape}, expected {(N, K)}")
        if not 1 <= N <= K:
            raise ValueError(f"need 1 <= N <= K, got N={N}, K={K}")
        if K > len(self.matrices) * N:
            warnings.warn(f"K={K} > L*N={len(self.matrices) * N}: no pattern can be decoded", stacklevel=2)

    @property
    def L(self) -> int:
        return len(self.matrices)

    @property
    def N(self) -> int:
        return self.matrices[0].rows

    @property
    def K(self) -> int:
        return self.matrices[0].cols

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def params(self) -> tuple[int, int, int, int]:
        return self.L, self.N, self.K, self.q

    def __getitem__(self, i: int) -> MatrixGF:
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def betas(self) -> BetaSequence:
        if self.kind != "pascal":
            raise ValueError("evaluation points are only known for Pascal-constructed families")
        return BetaSequence.pascal(self.field, self.L, self.alpha)

    def stacked(self, v: Sequence[int]) -> MatrixGF:
        check_pattern(v, self.L, self.N)
        return stack_rows([(M, c) for M, c in zip(self.matrices, v)])

    def with_matrices(self, matrices, *, keep_kind: bool = False) -> "UdmFamily":
        return UdmFamily(
            self.field,
            tuple(matrices),
            self.kind if keep_kind else None,
            self.alpha if keep_kind else None,
            origin="transformed",
        )


def _field_and_alpha(q: int | GF, alpha) -> tuple[GF, int]:
    F = q if isinstance(q, GF) else field_new(q)
    if alpha is None:
        return F, F.alpha
    a = alpha.value if isinstance(alpha, FieldElement) else F.check(alpha)
    if not F.is_primitive(a):
        raise ValueError(f"alpha={a} is not a primitive element of GF({F.q})")
    return F, a


def construct_pascal(L: int, N: int, K: int, q: int | GF, alpha=None) -> UdmFamily:
    """I_{N,K}, J_{N,K}, then [A_{l+2}]_{n,k} = C(k,n) alpha^(l(k-n))."""
    F, a = _field_and_alpha(q, alpha)
    if L < 1:
        raise ValueError("L must be positive")
    if L > F.q + 1:
        raise BoundViolationError(f"L={L} exceeds q+1={F.q + 1}: {BOUND_CITATION}")
    if not 1 <= N <= K:
        raise ValueError(f"need 1 <= N <= K, got N={N}, K={K}")
    mats = [identity_NK(F, N, K), reversal_NK(F, N, K)][:L]
    for ell in range(L - 2):
        step = F.pow(a, ell)
        rows = []
        for n in range(N):
            rows.append([
                F.mul(binomial_mod_p(k, n, F.p), F.pow(step, k - n)) if k >= n else 0
                for k in range(K)
            ])
        mats.append(MatrixGF(F, rows, K))
    return UdmFamily(F, tuple(mats), "pascal", a)


def _digits(x: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        x, r = divmod(x, p)
        out.append(r)
    return out


def construct_monomial_variant(L: int, N: int, q: int | GF, alpha=None) -> UdmFamily:
    """Square N = p^m family with entries prod_h k_h^{n_h} alpha^(l(k-n)), 0^0 = 1."""
    F, a = _field_and_alpha(q, alpha)
    p = F.p
    m, t = 0, 1
    while t < N:
        t *= p
        m += 1
    if t != N:
        raise ValueError(f"N={N} is not a power of the characteristic {p}")
    if L > F.q + 1:
        raise BoundViolationError(f"L={L} exceeds q+1={F.q + 1}: {BOUND_CITATION}")
    mats = [identity_NK(F, N, N), reversal_NK(F, N, N)][:L]
    kd = [_digits(k, p, m) for k in range(N)]
    for ell in range(L - 2):
        step = F.pow(a, ell)
        rows = []
        for n in range(N):
            nd = _digits(n, p, m)
            row = []
            for k in range(N):
                c = 1
                for kh, nh in zip(kd[k], nd):
                    c = c * pow(kh, nh) % p
                row.append(F.mul(c, F.pow(step, k - n)) if c else 0)
            rows.append(row)
        mats.append(MatrixGF(F, rows, N))
    return UdmFamily(F, tuple(mats), "monomial", a)


def construct_q_plus_2(q: int | GF, alpha=None) -> UdmFamily:
    """The (q+2, 1, 3, q) family for q a power of two."""
    F, a = _field_and_alpha(q, alpha)
    if F.p != 2:
        raise ValueError(f"(q+2,1,3,q) family needs characteristic 2, got GF({F.q})")
    rows = [[1, 0, 0], [0, 0, 1]]
    rows += [[1, F.pow(a, ell), F.pow(a, 2 * ell)] for ell in range(F.q - 1)]
    rows.append([0, 1, 0])
    return UdmFamily(F, tuple(MatrixGF(F, [r], 3) for r in rows), "qplus2", a)


# -- erasure patterns -------------------------------------------------------

def check_pattern(v: Sequence[int], L: int, N: int) -> tuple[int, ...]:
    v = tuple(int(x) for x in v)
    if len(v) != L:
        raise ValueError(f"pattern {v} has length {len(v)}, expected L={L}")
    if any(not 0 <= x <= N for x in v):
        raise ValueError(f"pattern {v} has entries outside [0, {N}]")
    return v


def enumerate_patterns(L: int, N: int, K: int, mode: str = "exact") -> Iterator[tuple[int, ...]]:
    """All (v_0..v_{L-1}) with 0 <= v_l <= N and sum == K (or >= K), lexicographic."""
    if mode not in ("exact", "atleast", "at-least"):
        raise ValueError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    v = [0] * L

    def rec(ell: int, total: int):
        if ell == L:
            if total == K or (not exact and total > K):
                yield tuple(v)
            return
        rest = (L - ell - 1) * N
        top = min(N, K - total) if exact else N
        for x in range(top + 1):
            if total + x + rest < K:
                continue
            v[ell] = x
            yield from rec(ell + 1, total + x)
        v[ell] = 0

    return rec(0, 0)


@lru_cache(maxsize=None)
def _completions(channels: int, N: int, need: int, exact: bool) -> int:
    """Number of ways ``channels`` entries in [0, N] sum to ``need`` (or >= need)."""
    if channels == 0:
        return 1 if (need == 0 or (not exact and need <= 0)) else 0
    if exact and need < 0:
        return 0
    if not exact and need <= 0:
        return (N + 1) ** channels
    return sum(_completions(channels - 1, N, need - x, exact) for x in range(N + 1))


def count_patterns(L: int, N: int, K: int, mode: str = "exact") -> int:
    return _completions(L, N, K, mode == "exact")


# -- verification -----------------------------------------------------------

@dataclass
class VerificationReport:
    passed: bool
    patterns_checked: int
    mode: str = "exact"
    first_failure: tuple[int, ...] | None = None
    failing_matrix: MatrixGF | None = None

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        if self.passed:
            return f"PASS {self.patterns_checked} patterns"
        return f"FAIL at ({','.join(map(str, self.first_failure))}) after {self.patterns_checked} patterns"


def _walk(rows, L: int, N: int, K: int, exact: bool, prefix: tuple[int, ...], ech: Echelon):
    """Depth-first pattern walk below ``prefix``; returns (checked, first failure)."""
    v = list(prefix) + [0] * (L - len(prefix))
    checked = 0

    def rec(ell: int, total: int, e: Echelon):
        nonlocal checked
        if ell == L:
            checked += 1
            return None if e.rank == K else tuple(v)
        if not exact and e.rank == K:
            # every completion passes; count them without visiting
            checked += _completions(L - ell, N, K - total, False)
            return None
        rest = (L - ell - 1) * N
        top = min(N, K - total) if exact else N
        cur = e
        for x in range(top + 1):
            if x:
                cur = cur.copy()
                cur.add(rows[ell][x - 1])
            if total + x + rest < K:
                continue
            v[ell] = x
            bad = rec(ell + 1, total + x, cur)
            if bad is not None:
                return bad
        v[ell] = 0
        return None

    bad = rec(len(prefix), sum(prefix), ech)
    return checked, bad


def _walk_branch(args):
    family, exact, x0 = args
    rows = [M.data for M in family.matrices]
    e = Echelon(family.field)
    for r in rows[0][:x0]:
        e.add(r)
    return _walk(rows, family.L, family.N, family.K, exact, (x0,), e)


def verify(family: UdmFamily, mode: str = "exact", jobs: int = 1) -> VerificationReport:
    """Check the full-rank condition for every pattern with sum K (or >= K).

    Stops at the lexicographically first failing pattern.
    """
    if mode not in ("exact", "atleast", "at-least"):
        raise ValueError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    mode = "exact" if exact else "atleast"
    L, N, K = family.L, family.N, family.K
    if jobs <= 1 or L == 1:
        rows = [M.data for M in family.matrices]
        checked, bad = _walk(rows, L, N, K, exact, (), Echelon(family.field))
    else:
        top = min(N, K) if exact else N
        branches = [x for x in range(top + 1) if x + (L - 1) * N >= K]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_walk_branch, [(family, exact, x) for x in branches]))
        checked, bad = 0, None
        for x, (n, b) in zip(branches, results):
            if b is not None:
                checked += n
                bad = b
                break
            checked += n
    if bad is None:
        return VerificationReport(True, checked, mode)
    return VerificationReport(False, checked, mode, bad, family.stacked(bad))


# -- bounds and MDS ---------------------------------------------------------

@dataclass(frozen=True)
class LBound:
    kind: str  # "finite" | "unknown" | "unbounded"
    value: int | None
    citation: str

    def __str__(self) -> str:
        shown = {"finite": str(self.value), "unknown": "UNKNOWN", "unbounded": "UNBOUNDED"}[self.kind]
        return f"{shown}\t{self.citation}"


def max_L_bound(N: int, K: int, q: int) -> LBound:
    """Largest L for which (L, N, K, q)-UDMs can exist, where known."""
    if not 1 <= N <= K:
        raise ValueError(f"need 1 <= N <= K, got N={N}, K={K}")
    if K == 1:
        return LBound("unbounded", None, "K = 1: the matrices (1),...,(1) are UDMs for any L")
    if K <= 2 * N:
        return LBound("finite", q + 1, BOUND_CITATION)
    if K == 2 * N + 1:
        return LBound("finite", q + 2, BOUND_CITATION_2)
    return LBound(
        "unknown",
        None,
        "K > 2N+1: no general bound; for N = 1 this is the MDS-code existence question"
        " (conjecturally L <= q+1 for 2 <= K <= L-2)",
    )


def check_mds_zeroth_rows(family: UdmFamily) -> bool:
    """Every K x K submatrix of the stacked zeroth rows is nonsingular."""
    L, K = family.L, family.K
    if L < K:
        raise ValueError(f"MDS check needs L >= K, got L={L}, K={K}")
    G = MatrixGF(family.field, [M.row(0) for M in family.matrices], K)
    return all(rank(G.submatrix(idx)) == K for idx in combinations(range(L), K))
