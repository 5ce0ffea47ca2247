"""Dense univariate polynomials over GF(q), Hasse derivatives and Taylor expansions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence, Union

from .gf import GF, FieldElement, FieldError

__all__ = [
    "INFINITY",
    "Poly",
    "TaylorCoeffs",
    "binomial_mod_p",
    "hasse_derivative",
    "hasse_compose_check",
    "hasse_value",
    "hasse_eval",
    "taylor_expand",
    "taylor_reconstruct",
    "root_multiplicity",
]


class _Infinity:
    """The point at infinity; ``u^(n)(inf)`` is ``u_{K-1-n}``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Point = Union[int, FieldElement, _Infinity]


@lru_cache(maxsize=1 << 16)
def binomial_mod_p(k: int, n: int, p: int) -> int:
    """C(k, n) mod p as a product of base-p digit binomials (Lucas)."""
    if k < 0 or n < 0:
        raise ValueError("binomial arguments must be non-negative")
    if n > k:
        return 0
    r = 1
    while n:
        kd, nd = k % p, n % p
        if nd > kd:
            return 0
        r = r * comb(kd, nd) % p
        k //= p
        n //= p
    return r % p


def _code(field: GF, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise FieldError(f"point from {x.field} used with {field}")
        return x.value
    return field.check(x)


class Poly:
    """Polynomial with coefficients (integer element codes) indexed by power."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable[int | FieldElement] = ()):
        cs = [_code(field, c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def zero(cls, field: GF) -> "Poly":
        return cls(field)

    @classmethod
    def constant(cls, field: GF, c: int) -> "Poly":
        return cls(field, [c])

    @classmethod
    def monomial(cls, field: GF, k: int, c: int = 1) -> "Poly":
        return cls(field, [0] * k + [c])

    @classmethod
    def linear(cls, field: GF, beta: int) -> "Poly":
        """The polynomial X - beta."""
        return cls(field, [field.neg(beta), 1])

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def _same(self, other: "Poly") -> None:
        if other.field != self.field:
            raise FieldError(f"polynomials over {self.field} and {other.field}")

    def __add__(self, other: "Poly") -> "Poly":
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self[i], other[i]) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        self._same(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.sub(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        F = self.field
        if isinstance(other, (int, FieldElement)):
            c = F.natural(other) if isinstance(other, int) else _code(F, other)
            return Poly(F, [F.mul(c, a) for a in self.coeffs])
        self._same(other)
        if self.is_zero() or other.is_zero():
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        r = Poly.constant(self.field, 1)
        for _ in range(e):
            r = r * self
        return r

    def scale(self, c: int) -> "Poly":
        """Multiply by the element with code c."""
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        d = other.deg
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1 - d, -1, -1):
            c = F.mul(rem[i + d], inv_lead)
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Poly(F, quot), Poly(F, rem[:d] if d > 0 else [])

    def __call__(self, x) -> int:
        """Evaluate at a field point (Horner); returns an element code."""
        F = self.field
        x = _code(F, x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def __repr__(self) -> str:
        return f"Poly({self.field!r}, [{self}])"


def hasse_derivative(a: Poly, i: int) -> Poly:
    """i-th Hasse derivative: coefficient j is C(i+j, i) * a_{i+j}."""
    if i < 0:
        raise ValueError("derivative order must be non-negative")
    F = a.field
    return Poly(F, [F.mul(binomial_mod_p(i + j, i, F.p), a[i + j]) for j in range(len(a.coeffs) - i)])


def hasse_compose_check(a: Poly, i1: int, i2: int) -> bool:
    """Check D^{i1} D^{i2} a == C(i1+i2, i1) D^{i1+i2} a."""
    lhs = hasse_derivative(hasse_derivative(a, i2), i1)
    rhs = hasse_derivative(a, i1 + i2).scale(binomial_mod_p(i1 + i2, i1, a.field.p))
    return lhs == rhs


def hasse_value(F, p: int, coeffs: Sequence[int], n: int, x: int) -> int:
    """n-th Hasse derivative of ``coeffs`` at ``x`` by nested evaluation.

    ``F`` is any object with ``add``/``mul``; the decoders pass a counting
    wrapper here.  No derivative polynomial is materialised.
    """
    acc = 0
    for k in range(len(coeffs) - 1, n - 1, -1):
        c = coeffs[k]
        term = F.mul(binomial_mod_p(k, n, p), c) if c else 0
        acc = F.add(F.mul(acc, x), term)
    return acc


def hasse_eval(a: Poly, n: int, point: Point, K: int | None = None) -> int:
    """Value of the n-th Hasse derivative at a field point or at ``INFINITY``."""
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    if point is INFINITY:
        if K is None or K <= 0:
            raise ValueError("evaluation at infinity needs the information length K")
        if n >= K:
            raise ValueError(f"evaluation at infinity requires n < K (n={n}, K={K})")
        if a.deg >= K:
            raise ValueError(f"evaluation at infinity requires deg < K (deg={a.deg}, K={K})")
        return a[K - 1 - n]
    F = a.field
    return hasse_value(F, F.p, a.coeffs, n, _code(F, point))


@dataclass(frozen=True)
class TaylorCoeffs:
    """Coefficients of ``sum_n coeffs[n] (X - beta)^n``."""

    field: GF
    beta: int
    coeffs: tuple[int, ...]


def taylor_expand(a: Poly, beta) -> TaylorCoeffs:
    F = a.field
    b = _code(F, beta)
    return TaylorCoeffs(F, b, tuple(hasse_value(F, F.p, a.coeffs, n, b) for n in range(len(a.coeffs))))


def taylor_reconstruct(t: TaylorCoeffs) -> Poly:
    """Invert ``taylor_expand``: a_k = sum_n t_n C(n, k) (-beta)^(n-k)."""
    F = t.field
    nb = F.neg(t.beta)
    powers = [1]
    for _ in range(len(t.coeffs)):
        powers.append(F.mul(powers[-1], nb))
    out = []
    for k in range(len(t.coeffs)):
        acc = 0
        for n in range(k, len(t.coeffs)):
            c = binomial_mod_p(n, k, F.p)
            if c and t.coeffs[n]:
                acc = F.add(acc, F.mul(F.mul(c, t.coeffs[n]), powers[n - k]))
        out.append(acc)
    return Poly(F, out)


def root_multiplicity(a: Poly, beta) -> int:
    """Exponent of (X - beta) in a; the first non-vanishing Taylor coefficient."""
    if a.is_zero():
        raise ValueError("root multiplicity of the zero polynomial is undefined")
    F = a.field
    b = _code(F, beta)
    for n in range(len(a.coeffs)):
        if hasse_value(F, F.p, a.coeffs, n, b):
            return n
    raise AssertionError("a non-zero polynomial has a non-zero Taylor coefficient")
