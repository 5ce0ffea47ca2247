"""Text formats for families (``UDM`` files) and received words (``RX`` files).

Family file::

    UDM L N K q c_0 ... c_s        # header, then the field modulus coefficients
    # kind pascal                  # optional provenance comments
    # alpha 2
    # betas 0 inf 1 2
    <L blocks of N rows of K element codes, blocks separated by blank lines>

Received-word file::

    RX L N K q
    <L lines of N tokens: v_l element codes followed by '?'>
"""
from __future__ import annotations

from .codec import ERASED, ChannelOutput
from .gf import GF, FieldError, field_new
from .linalg import MatrixGF
from .poly import INFINITY
from .udm import UdmFamily

__all__ = ["FormatError", "write_family", "read_family", "write_rx", "read_rx", "format_vector", "parse_vector"]


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


def format_vector(v) -> str:
    return " ".join(str(x) for x in v)


def parse_vector(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def write_family(family: UdmFamily) -> str:
    F = family.field
    lines = [f"UDM {family.L} {family.N} {family.K} {F.q} {format_vector(F.modulus)}"]
    if family.kind:
        lines.append(f"# kind {family.kind}")
    if family.alpha is not None:
        lines.append(f"# alpha {family.alpha}")
    if family.kind == "pascal":
        shown = ["inf" if b is INFINITY else str(b) for b in family.betas()]
        lines.append(f"# betas {' '.join(shown)}")
    for i, M in enumerate(family.matrices):
        if i:
            lines.append("")
        lines.extend(format_vector(r) for r in M.data)
    return "\n".join(lines) + "\n"


def _ints(tokens, lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _header(lines: list[str], tag: str, width: int) -> tuple[int, list[int]]:
    for i, raw in enumerate(lines, 1):
        if raw.strip():
            toks = raw.split()
            if toks[0] != tag:
                raise FormatError(f"expected header starting with {tag!r}", i)
            if len(toks) < width + 1:
                raise FormatError(f"header needs {width} integers after {tag!r}", i)
            return i, _ints(toks[1:], i)
    raise FormatError(f"empty file: missing {tag} header", 1)


def read_family(text: str) -> UdmFamily:
    lines = text.splitlines()
    hline, nums = _header(lines, "UDM", 4)
    L, N, K, q = nums[:4]
    modulus = nums[4:] or None
    try:
        F = field_new(q, modulus if modulus and len(modulus) > 2 else None)
    except FieldError as e:
        raise FormatError(str(e), hline) from None
    if modulus and len(modulus) > 2 and list(F.modulus) != modulus:
        raise FormatError(f"modulus {modulus} does not define GF({q})", hline)
    kind = alpha = None
    blocks: list[list[list[int]]] = [[]]
    for lineno in range(hline + 1, len(lines) + 1):
        raw = lines[lineno - 1].strip()
        if raw.startswith("#"):
            toks = raw[1:].split()
            if len(toks) >= 2 and toks[0] == "kind":
                kind = toks[1]
            elif len(toks) >= 2 and toks[0] == "alpha":
                alpha = _ints(toks[1:2], lineno)[0]
            continue
        if not raw:
            if blocks[-1]:
                blocks.append([])
            continue
        row = _ints(raw.split(), lineno)
        if len(row) != K:
            raise FormatError(f"row has {len(row)} entries, expected K={K}", lineno)
        if any(not 0 <= x < q for x in row):
            raise FormatError(f"entry outside [0, {q})", lineno)
        if len(blocks[-1]) == N:
            raise FormatError(f"block has more than N={N} rows", lineno)
        blocks[-1].append(row)
    if not blocks[-1]:
        blocks.pop()
    if len(blocks) != L:
        raise FormatError(f"found {len(blocks)} matrices, header says L={L}", len(lines))
    for b in blocks:
        if len(b) != N:
            raise FormatError(f"matrix with {len(b)} rows, header says N={N}", len(lines))
    try:
        return UdmFamily(F, tuple(MatrixGF(F, b, K) for b in blocks), kind, alpha, origin="loaded")
    except ValueError as e:
        raise FormatError(str(e)) from None


def write_rx(out: ChannelOutput, K: int) -> str:
    lines = [f"RX {out.L} {out.N} {K} {out.field.q}"]
    for syms in out.symbols:
        lines.append(" ".join("?" if s is ERASED else str(s) for s in syms))
    return "\n".join(lines) + "\n"


def read_rx(text: str, field: GF | None = None) -> tuple[ChannelOutput, int]:
    lines = text.splitlines()
    hline, nums = _header(lines, "RX", 4)
    L, N, K, q = nums[:4]
    if field is None:
        field = field_new(q)
    elif field.q != q:
        raise FormatError(f"received word over GF({q}), family over GF({field.q})", hline)
    rows = []
    for lineno in range(hline + 1, len(lines) + 1):
        raw = lines[lineno - 1].strip()
        if not raw or raw.startswith("#"):
            continue
        toks = raw.split()
        if len(toks) != N:
            raise FormatError(f"channel line has {len(toks)} symbols, expected N={N}", lineno)
        row = [ERASED if t == "?" else _ints([t], lineno)[0] for t in toks]
        if any(x is not ERASED and not 0 <= x < q for x in row):
            raise FormatError(f"symbol outside [0, {q})", lineno)
        if ERASED in row and any(x is not ERASED for x in row[row.index(ERASED):]):
            raise FormatError("received symbol after an erasure '?'", lineno)
        rows.append(row)
    if len(rows) != L:
        raise FormatError(f"found {len(rows)} channel lines, header says L={L}", len(lines))
    try:
        return ChannelOutput(field, tuple(tuple(r) for r in rows)), K
    except ValueError as e:
        raise FormatError(str(e)) from None
