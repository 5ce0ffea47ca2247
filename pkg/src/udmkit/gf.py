"""Exact arithmetic in GF(p^s).

Elements are handled internally as their canonical integer code: the
polynomial-basis coefficient vector ``(c_0, ..., c_{s-1})`` read as the
radix-p integer ``sum c_i p^i``.  ``GF`` exposes arithmetic on those codes
(fast path used by matrices and polynomials) and ``FieldElement`` wraps a
code for scalar work with operators.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

__all__ = [
    "GF",
    "FieldElement",
    "FieldError",
    "field_new",
    "factor_prime_power",
    "is_irreducible",
    "smallest_irreducible",
]

# full q*q add/mul tables are built below this order
_TABLE_LIMIT = 256
MAX_ORDER = 1 << 16


class FieldError(ValueError):
    """Invalid field parameters or mixed-field operands."""


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, s)`` with ``q == p**s``, or raise ``FieldError``."""
    if not isinstance(q, int) or q < 2:
        raise FieldError(f"field order must be an integer >= 2, got {q!r}")
    fac = _factorize(q)
    if len(fac) != 1:
        shown = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(fac.items()))
        raise FieldError(f"{q} is not a prime power: {q} = {shown}")
    ((p, s),) = fac.items()
    return p, s


# -- polynomials over GF(p) as low-degree-first coefficient lists -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _monic_polys(p: int, deg: int) -> Iterator[list[int]]:
    for low in product(range(p), repeat=deg):
        yield list(low) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _trim([c % p for c in poly])
    d = len(poly) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for m in _monic_polys(p, k):
            if not _pmod(poly, m, p):
                return False
    return True


def smallest_irreducible(p: int, s: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree s (low-degree-first)."""
    for cand in _monic_polys(p, s):
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("an irreducible polynomial always exists")


class GF:
    """The finite field GF(p^s) with a fixed modulus and primitive element.

    All arithmetic methods take and return integer codes in ``range(q)``.
    """

    def __init__(self, q: int, modulus: Sequence[int] | None = None):
        p, s = factor_prime_power(q)
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds supported maximum {MAX_ORDER}")
        self.p, self.s, self.q = p, s, q
        if s == 1:
            self.modulus: tuple[int, ...] = (0, 1)
        else:
            mod = list(modulus) if modulus is not None else smallest_irreducible(p, s)
            if len(mod) != s + 1 or mod[-1] != 1 or not is_irreducible(mod, p):
                raise FieldError(f"modulus {mod} is not a monic irreducible of degree {s} over GF({p})")
            self.modulus = tuple(mod)
        self._build()
        self.alpha: int = self._find_primitive()

    def _build(self) -> None:
        q = self.q
        if self.s == 1:
            self._add_t = self._mul_t = None
        elif q <= _TABLE_LIMIT:
            self._add_t = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
            self._neg_t = [self._neg_digits(a) for a in range(q)]
            self._mul_t = [[self.mul_reference(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add_t = self._mul_t = None
        # log/exp over some generator; rebuilt after alpha is known
        self._exp: list[int] = []
        self._log: list[int] = []

    # -- representation ------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of code ``a`` in the polynomial basis."""
        out = []
        for _ in range(self.s):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_digits(self, rep: Sequence[int]) -> int:
        if len(rep) != self.s or any(not 0 <= c < self.p for c in rep):
            raise FieldError(f"invalid representation {tuple(rep)} for GF({self.q})")
        v = 0
        for c in reversed(rep):
            v = v * self.p + c
        return v

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _neg_digits(self, a: int) -> int:
        p = self.p
        return self.from_digits([(-x) % p for x in self.digits(a)])

    def mul_reference(self, a: int, b: int) -> int:
        """Schoolbook product modulo the field modulus (no tables)."""
        if self.s == 1:
            return a * b % self.p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.s - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        r = _pmod(prod, self.modulus, self.p)
        return self.from_digits(r + [0] * (self.s - len(r)))

    # -- arithmetic on codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.s == 1:
            return -a % self.p
        if self.p == 2:
            return a
        if self._add_t is not None:
            return self._neg_t[a]
        return self._neg_digits(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        if self._mul_t is not None:
            return self._mul_t[a][b]
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.q})")
        if self.s == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def axpy(self, y: Sequence[int], c: int, x: Sequence[int]) -> list[int]:
        """Row update ``y + c*x`` on element codes."""
        if self.s == 1:
            p = self.p
            return [(a + c * b) % p for a, b in zip(y, x)]
        if self._mul_t is not None:
            mt = self._mul_t[c]
            if self.p == 2:
                return [a ^ mt[b] for a, b in zip(y, x)]
            at = self._add_t
            return [at[a][mt[b]] for a, b in zip(y, x)]
        return [self.add(a, self.mul(c, b)) for a, b in zip(y, x)]

    def scale_row(self, c: int, x: Sequence[int]) -> list[int]:
        if self.s == 1:
            p = self.p
            return [c * b % p for b in x]
        return [self.mul(c, b) for b in x]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.s == 1:
            return pow(a, e, self.p)
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def natural(self, n: int) -> int:
        """Code of the integer n mapped into the prime subfield."""
        return n % self.p

    # -- primitive element ---------------------------------------------

    def _pow_reference(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul_reference(r, a)
            a = self.mul_reference(a, a)
            e >>= 1
        return r

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = self.q - 1
        for r in _factorize(self.q - 1):
            while n % r == 0 and self._pow_reference(a, n // r) == 1:
                n //= r
        return n

    def _find_primitive(self) -> int:
        if self.q == 2:
            self._exp, self._log = [1], [0, 0]
            return 1
        for a in range(1, self.q):
            if self.order(a) == self.q - 1:
                exp = [1]
                for _ in range(self.q - 2):
                    exp.append(self.mul_reference(exp[-1], a))
                log = [0] * self.q
                for i, x in enumerate(exp):
                    log[x] = i
                self._exp, self._log = exp, log
                return a
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def is_primitive(self, a: int) -> bool:
        return a != 0 and self.order(a) == self.q - 1

    # -- conveniences --------------------------------------------------

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def primitive_element(self) -> "FieldElement":
        return FieldElement(self, self.alpha)

    def natural_map(self, n: int) -> "FieldElement":
        return FieldElement(self, self.natural(n))

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldError(f"{a!r} is not an element code of GF({self.q})")
        return a

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and self.q == other.q and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field_new, (self.q, self.modulus if self.s > 1 else None))


@lru_cache(maxsize=None)
def _cached_field(q: int, modulus: tuple[int, ...] | None) -> GF:
    return GF(q, modulus)


def field_new(q: int, modulus: Sequence[int] | None = None) -> GF:
    """Return the (cached) field of order q with the deterministic modulus."""
    return _cached_field(q, tuple(modulus) if modulus is not None else None)


class FieldElement:
    """Immutable element of a ``GF`` with arithmetic operators.

    Integers on the right-hand side of an operator are passed through the
    natural map into the prime subfield.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.check(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def rep(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"operands from {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.natural(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < self._coerce(other)

    def __repr__(self) -> str:
        return f"{self.field!r}[{self.value}]"
