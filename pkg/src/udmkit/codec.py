"""Encoding, the prefix-erasure channel, and the two decoders."""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .gf import GF
from .linalg import SingularSystemError, solve, stack_rows
from .poly import INFINITY, hasse_value
from .udm import BetaSequence, UdmFamily, _completions, construct_pascal

__all__ = [
    "ERASED",
    "ChannelOutput",
    "OpCounter",
    "DecoderTrace",
    "DecodingError",
    "InsufficientSymbolsError",
    "NotUDMError",
    "DecoderInvariantError",
    "encode_matrix",
    "encode_taylor",
    "channel_erase",
    "sample_pattern",
    "reduce_pattern",
    "decode_gaussian",
    "decode_newton",
    "op_count_profile",
    "ProfileRow",
    "simulate",
    "SimulationStats",
]

ERASED = None


class DecodingError(ArithmeticError):
    pass


class InsufficientSymbolsError(DecodingError):
    pass


class NotUDMError(DecodingError):
    def __init__(self, pattern: tuple[int, ...]):
        super().__init__(f"stacked matrix for pattern {pattern} is singular: family is not a UDM family")
        self.pattern = pattern


class DecoderInvariantError(AssertionError):
    pass


class OpCounter:
    """Field proxy that counts multiplications and inversions.

    Additions, subtractions and negations pass through uncounted.
    """

    def __init__(self, field: GF):
        self.field = field
        self.p = field.p
        self.muls = 0
        self.invs = 0

    @property
    def total(self) -> int:
        return self.muls + self.invs

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        self.muls += 1
        return self.field.mul(a, b)

    def inv(self, a):
        self.invs += 1
        return self.field.inv(a)

    def axpy(self, y, c, x):
        self.muls += len(x)
        return self.field.axpy(y, c, x)

    def scale_row(self, c, x):
        self.muls += len(x)
        return self.field.scale_row(c, x)


@dataclass
class DecoderTrace:
    """Per-call instrumentation: operation counts and optional step snapshots."""

    ops: OpCounter
    keep_steps: bool = False
    check_invariants: bool = False
    steps: list = dc_field(default_factory=list)

    @classmethod
    def for_field(cls, field: GF, **kw) -> "DecoderTrace":
        return cls(OpCounter(field), **kw)


# -- encoding and channel ---------------------------------------------------

def encode_matrix(family: UdmFamily, u: Sequence[int]) -> list[list[int]]:
    u = [family.field.check(int(x)) for x in u]
    if len(u) != family.K:
        raise ValueError(f"information vector of length {len(u)}, expected K={family.K}")
    return [M @ u for M in family.matrices]


def encode_taylor(u: Sequence[int], betas: BetaSequence, N: int) -> list[list[int]]:
    """Channel l carries the first N Taylor coefficients of u(L) around beta_l."""
    F = betas.field
    u = [F.check(int(x)) for x in u]
    K = len(u)
    if N > K:
        raise ValueError(f"need N <= K, got N={N}, K={K}")
    out = []
    for beta in betas:
        if beta is INFINITY:
            out.append([u[K - 1 - n] for n in range(N)])
        else:
            out.append([hasse_value(F, F.p, u, n, beta) for n in range(N)])
    return out


@dataclass(frozen=True)
class ChannelOutput:
    """Received vectors; each is a non-erased prefix followed by erasures."""

    field: GF
    symbols: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        syms = tuple(tuple(s) for s in self.symbols)
        object.__setattr__(self, "symbols", syms)
        lengths = {len(s) for s in syms}
        if len(lengths) > 1:
            raise ValueError("all received vectors must have length N")
        for i, s in enumerate(syms):
            v = self._prefix(s)
            if any(x is not ERASED for x in s[v:]):
                raise ValueError(f"channel {i}: received symbols after an erasure")
            for x in s[:v]:
                self.field.check(x)

    @staticmethod
    def _prefix(s) -> int:
        v = 0
        while v < len(s) and s[v] is not ERASED:
            v += 1
        return v

    @property
    def L(self) -> int:
        return len(self.symbols)

    @property
    def N(self) -> int:
        return len(self.symbols[0]) if self.symbols else 0

    @property
    def pattern(self) -> tuple[int, ...]:
        return tuple(self._prefix(s) for s in self.symbols)


def channel_erase(x: Sequence[Sequence[int]], v: Sequence[int], field: GF) -> ChannelOutput:
    if len(v) != len(x):
        raise ValueError(f"pattern of length {len(v)} for {len(x)} channels")
    out = []
    for xl, vl in zip(x, v):
        if not 0 <= vl <= len(xl):
            raise ValueError(f"prefix length {vl} outside [0, {len(xl)}]")
        out.append(tuple(xl[:vl]) + (ERASED,) * (len(xl) - vl))
    return ChannelOutput(field, tuple(out))


def sample_pattern(L: int, N: int, K: int, seed, mode: str = "exact") -> tuple[int, ...]:
    """Uniform draw from the patterns with sum == K (or >= K).

    ``seed`` is an int/str seed or a ``random.Random`` instance.
    """
    exact = mode == "exact"
    if mode not in ("exact", "atleast", "at-least"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if _completions(L, N, K, exact) == 0:
        raise ValueError(f"no admissible pattern for L={L}, N={N}, K={K}")
    v, need = [], K
    for ell in range(L):
        weights = [_completions(L - ell - 1, N, need - x, exact) for x in range(N + 1)]
        r = rng.randrange(sum(weights))
        for x, w in enumerate(weights):
            if r < w:
                break
            r -= w
        v.append(x)
        need -= x
    return tuple(v)


def reduce_pattern(v: Sequence[int], K: int) -> tuple[int, ...]:
    """Trim an over-complete pattern to sum K, taking from the last channel first."""
    v = list(v)
    excess = sum(v) - K
    for ell in range(len(v) - 1, -1, -1):
        if excess <= 0:
            break
        d = min(v[ell], excess)
        v[ell] -= d
        excess -= d
    return tuple(v)


# -- decoders -------------------------------------------------------------

def decode_gaussian(family: UdmFamily, out: ChannelOutput, trace: DecoderTrace | None = None) -> list[int]:
    """Solve the stacked linear system for the received prefix symbols."""
    K = family.K
    if out.L != family.L or out.N != family.N:
        raise ValueError(f"received {out.L}x{out.N} symbols for an (L={family.L}, N={family.N}) family")
    if sum(out.pattern) < K:
        raise InsufficientSymbolsError(f"received {sum(out.pattern)} symbols, need K={K}")
    v = reduce_pattern(out.pattern, K)
    A = stack_rows([(M, c) for M, c in zip(family.matrices, v)])
    y = [s for syms, c in zip(out.symbols, v) for s in syms[:c]]
    try:
        return solve(A, y, ops=trace.ops if trace else None)
    except SingularSystemError:
        raise NotUDMError(v) from None


def _times_linear(F, g: list[int], beta: int) -> list[int]:
    """g(L) * (L - beta)."""
    nb = F.neg(beta)
    out = [0] * (len(g) + 1)
    for i, c in enumerate(g):
        out[i + 1] = F.add(out[i + 1], c)
        out[i] = F.add(out[i], F.mul(nb, c))
    return out


def decode_newton(
    out: ChannelOutput,
    betas: BetaSequence,
    K: int,
    trace: DecoderTrace | None = None,
) -> list[int]:
    """Newton-interpolation decoder for Pascal families, O(K^2) field operations.

    Symbols from the channel at infinity are the top coefficients of u(L);
    they are removed from the finite-channel symbols before interpolating
    the rest.
    """
    F = betas.field
    ops = trace.ops if trace else F
    p = F.p
    if out.L != len(betas):
        raise ValueError(f"received {out.L} channels, {len(betas)} evaluation points")
    if sum(out.pattern) < K:
        raise InsufficientSymbolsError(f"received {sum(out.pattern)} symbols, need K={K}")
    v = reduce_pattern(out.pattern, K)
    y = out.symbols
    inf_ch = [i for i, b in enumerate(betas) if b is INFINITY]
    v_inf = sum(v[i] for i in inf_ch)
    top = [0] * K
    for i in inf_ch:
        for n in range(v[i]):
            top[K - 1 - n] = y[i][n]

    h: list[int] = []
    g: list[int] = [1]
    consumed: list[tuple[int, int, int]] = []
    for ell, beta in enumerate(betas):
        if beta is INFINITY:
            continue
        for n in range(v[ell]):
            target = y[ell][n]
            if v_inf:
                target = F.sub(target, hasse_value(ops, p, top, n, beta))
            delta = F.sub(target, hasse_value(ops, p, h, n, beta))
            gd = hasse_value(ops, p, g, n, beta)
            if gd == 0:
                raise DecoderInvariantError(f"g^({n})(beta_{ell}) vanished")
            c = ops.mul(delta, ops.inv(gd))
            h = ops.axpy(h + [0] * (len(g) - len(h)), c, g)
            g = _times_linear(ops, g, beta)
            if trace is not None:
                consumed.append((ell, n, target))
                if trace.keep_steps:
                    trace.steps.append((ell, n, delta, tuple(h), tuple(g)))
                if trace.check_invariants:
                    _check_newton_state(F, h, g, consumed, betas)
    while h and h[-1] == 0:
        h.pop()
    if len(h) > K - v_inf:
        raise DecoderInvariantError(f"deg h = {len(h) - 1} but must be < K - v_inf = {K - v_inf}")
    return [F.add(h[k] if k < len(h) else 0, top[k]) for k in range(K)]


def _check_newton_state(F: GF, h, g, consumed, betas) -> None:
    if len(g) - 1 != len(consumed):
        raise DecoderInvariantError(f"deg g = {len(g) - 1} after {len(consumed)} updates")
    for ell, n, target in consumed:
        b = betas[ell]
        if hasse_value(F, F.p, h, n, b) != target:
            raise DecoderInvariantError(f"h^({n})(beta_{ell}) no longer matches the received symbol")
        if hasse_value(F, F.p, g, n, b) != 0:
            raise DecoderInvariantError(f"g^({n})(beta_{ell}) is non-zero")


# -- profiling and simulation -----------------------------------------------

@dataclass(frozen=True)
class ProfileRow:
    K: int
    N: int
    L: int
    gaussian_mean: float
    newton_mean: float


def op_count_profile(Ks: Sequence[int], trials: int, seed: int, q: int = 127, L: int | None = None) -> list[ProfileRow]:
    """Mean counted mul+inv operations per decode, N = K, uniform exact patterns."""
    rows = []
    for K in Ks:
        fam = construct_pascal(L or q + 1, K, K, q)
        betas = fam.betas()
        F = fam.field
        g_tot = n_tot = 0
        for t in range(trials):
            rng = random.Random(f"{seed}:{K}:{t}")
            v = sample_pattern(fam.L, fam.N, K, rng)
            u = [rng.randrange(F.q) for _ in range(K)]
            out = channel_erase(encode_matrix(fam, u), v, F)
            tg, tn = DecoderTrace.for_field(F), DecoderTrace.for_field(F)
            ug = decode_gaussian(fam, out, tg)
            un = decode_newton(out, betas, K, tn)
            if ug != u or un != u:
                raise DecoderInvariantError(f"profile decode mismatch at K={K}, trial {t}")
            g_tot += tg.ops.total
            n_tot += tn.ops.total
        rows.append(ProfileRow(K, fam.N, fam.L, g_tot / trials, n_tot / trials))
    return rows


@dataclass
class SimulationStats:
    trials: int = 0
    successes: int = 0
    gaussian_failures: int = 0
    newton_failures: int = 0
    singular: int = 0
    mismatches: int = 0
    gaussian_ops: int = 0
    newton_ops: int = 0

    def merge(self, other: "SimulationStats") -> None:
        for k in self.__dataclass_fields__:
            setattr(self, k, getattr(self, k) + getattr(other, k))

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0


def _simulate_chunk(args) -> SimulationStats:
    family, betas, trial_ids, seed, mode, decoder = args
    F, K = family.field, family.K
    st = SimulationStats()
    for t in trial_ids:
        rng = random.Random(f"{seed}:{t}")
        v = sample_pattern(family.L, family.N, K, rng, mode)
        u = [rng.randrange(F.q) for _ in range(K)]
        out = channel_erase(encode_matrix(family, u), v, F)
        ok = True
        ug = un = None
        if decoder in ("gaussian", "both"):
            tr = DecoderTrace.for_field(F)
            try:
                ug = decode_gaussian(family, out, tr)
            except NotUDMError:
                st.singular += 1
            st.gaussian_ops += tr.ops.total
            if ug != u:
                st.gaussian_failures += 1
                ok = False
        if decoder in ("newton", "both"):
            tr = DecoderTrace.for_field(F)
            try:
                un = decode_newton(out, betas, K, tr)
            except DecoderInvariantError:
                pass
            st.newton_ops += tr.ops.total
            if un != u:
                st.newton_failures += 1
                ok = False
        if decoder == "both" and ug != un:
            st.mismatches += 1
        st.trials += 1
        st.successes += ok
    return st


def simulate(
    family: UdmFamily,
    trials: int,
    seed: int,
    mode: str = "exact",
    decoder: str = "gaussian",
    jobs: int = 1,
) -> SimulationStats:
    """Encode random information, erase by a random pattern, decode; tally outcomes.

    Trial t draws from its own seeded generator, so results do not depend
    on ``jobs``.
    """
    if decoder not in ("gaussian", "newton", "both"):
        raise ValueError(f"unknown decoder {decoder!r}")
    betas = family.betas() if decoder != "gaussian" else None
    if jobs <= 1:
        return _simulate_chunk((family, betas, range(trials), seed, mode, decoder))
    chunks = [range(i, trials, jobs) for i in range(jobs)]
    total = SimulationStats()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for st in pool.map(_simulate_chunk, [(family, betas, c, seed, mode, decoder) for c in chunks]):
            total.merge(st)
    return total
