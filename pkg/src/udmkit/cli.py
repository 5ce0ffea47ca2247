"""Command-line interface.

Exit codes: 0 success/PASS, 1 verification FAIL or decode mismatch,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import codec, transforms
from .formats import FormatError, format_vector, parse_vector, read_family, read_rx, write_family, write_rx
from .gf import FieldError
from .linalg import MatrixGF
from .udm import (
    BoundViolationError,
    check_mds_zeroth_rows,
    construct_monomial_variant,
    construct_pascal,
    construct_q_plus_2,
    max_L_bound,
    verify,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_family(path: str):
    try:
        return read_family(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _parse_matrix(field, text: str) -> MatrixGF:
    rows = [parse_vector(r) for r in text.split(";") if r.strip()]
    return MatrixGF(field, rows)


def cmd_construct(args) -> int:
    if args.variant == "pascal":
        if None in (args.L, args.N, args.q):
            raise UsageError("construct --variant pascal needs --L, --N and --q")
        fam = construct_pascal(args.L, args.N, args.K if args.K is not None else args.N, args.q, args.alpha)
    elif args.variant == "monomial":
        if None in (args.L, args.N, args.q):
            raise UsageError("construct --variant monomial needs --L, --N and --q")
        if args.K is not None and args.K != args.N:
            raise UsageError("the monomial variant is square: K must equal N")
        fam = construct_monomial_variant(args.L, args.N, args.q, args.alpha)
    else:
        if args.q is None:
            raise UsageError("construct --variant qplus2 needs --q")
        fam = construct_q_plus_2(args.q, args.alpha)
    _emit(write_family(fam), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    fam = _load_family(args.file)
    rep = verify(fam, args.mode, args.jobs)
    print(rep.summary())
    if not rep.passed:
        print(rep.failing_matrix)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    print(max_L_bound(args.N, args.K, args.q))
    return EXIT_OK


def cmd_mds_check(args) -> int:
    fam = _load_family(args.file)
    ok = check_mds_zeroth_rows(fam)
    print("MDS" if ok else "NOT MDS")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_transform(args) -> int:
    fam = _load_family(args.file)
    op = args.op
    if op == "permute":
        if not args.sigma:
            raise UsageError("transform permute needs --sigma")
        res = transforms.permute(fam, parse_vector(args.sigma))
    elif op == "row":
        if args.ell is None or not args.matrix:
            raise UsageError("transform row needs --ell and --matrix")
        res = transforms.row_transform(fam, args.ell, _parse_matrix(fam.field, args.matrix))
    elif op == "col":
        if not args.matrix:
            raise UsageError("transform col needs --matrix")
        res = transforms.col_transform(fam, _parse_matrix(fam.field, args.matrix))
    elif op == "tensor":
        res = transforms.tensor_power(fam, args.m)
    elif op == "pair-reversal":
        res = transforms.pair_reversal(fam)
    elif op == "normalize":
        res = transforms.normalize_leading_pair(fam)
    else:
        res = transforms.reduce(fam)
    _emit(write_family(res), args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    fam = _load_family(args.family)
    u = parse_vector(args.u)
    if args.taylor:
        x = codec.encode_taylor(u, fam.betas(), fam.N)
    else:
        x = codec.encode_matrix(fam, u)
    v = parse_vector(args.pattern) if args.pattern else [fam.N] * fam.L
    out = codec.channel_erase(x, v, fam.field)
    _emit(write_rx(out, fam.K), args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    fam = _load_family(args.family)
    try:
        out, K = read_rx(Path(args.rx).read_text(), fam.field)
    except OSError as e:
        raise UsageError(f"cannot read {args.rx}: {e.strerror}") from None
    if K != fam.K:
        raise UsageError(f"received word has K={K}, family has K={fam.K}")
    if args.decoder == "newton":
        u = codec.decode_newton(out, fam.betas(), K)
    else:
        u = codec.decode_gaussian(fam, out)
    print(format_vector(u))
    if args.expect is not None and u != parse_vector(args.expect):
        print("decode mismatch", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_simulate(args) -> int:
    fam = _load_family(args.family)
    if args.decoder != "gaussian" and fam.kind != "pascal":
        raise UsageError("the Newton decoder needs a Pascal family (file lacks '# kind pascal' provenance)")
    st = codec.simulate(fam, args.trials, args.seed, args.pattern_mode, args.decoder, args.jobs)
    L, N, K, q = fam.params
    print("# field ops count mul+inv only; additions are not counted")
    print("key\tvalue")
    rows = [
        ("family", f"({L},{N},{K},{q})"),
        ("decoder", args.decoder),
        ("pattern_mode", args.pattern_mode),
        ("seed", args.seed),
        ("trials", st.trials),
        ("success_rate", f"{st.success_rate:.6f}"),
        ("singular", st.singular),
        ("gaussian_failures", st.gaussian_failures),
        ("newton_failures", st.newton_failures),
        ("mismatches", st.mismatches),
    ]
    if args.decoder in ("gaussian", "both"):
        rows.append(("mean_ops_gaussian", f"{st.gaussian_ops / max(st.trials, 1):.2f}"))
    if args.decoder in ("newton", "both"):
        rows.append(("mean_ops_newton", f"{st.newton_ops / max(st.trials, 1):.2f}"))
    for k, v in rows:
        print(f"{k}\t{v}")
    return EXIT_OK if st.success_rate == 1.0 and st.mismatches == 0 else EXIT_FAIL


def cmd_bench(args) -> int:
    rows = codec.op_count_profile(args.K, args.trials, args.seed, args.q)
    print(f"# q={args.q} L={rows[0].L} N=K trials={args.trials} seed={args.seed}; field ops count mul+inv only")
    print("K\tgaussian_mean\tnewton_mean\tgaussian_ratio\tnewton_ratio")
    prev = None
    for r in rows:
        gr = f"{r.gaussian_mean / prev.gaussian_mean:.3f}" if prev else "-"
        nr = f"{r.newton_mean / prev.newton_mean:.3f}" if prev else "-"
        print(f"{r.K}\t{r.gaussian_mean:.2f}\t{r.newton_mean:.2f}\t{gr}\t{nr}")
        prev = r
    if args.figure:
        from .plotting import plot_profile

        plot_profile(rows, args.figure, title=f"decoder cost over GF({args.q})")
        print(f"# figure written to {args.figure}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="udm", description="Universally decodable matrices over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write an explicit UDM family")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--alpha", type=int, help="primitive element code (default: smallest primitive)")
    p.add_argument("--variant", choices=["pascal", "monomial", "qplus2"], default="pascal")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exhaustively check the UDM condition")
    p.add_argument("file")
    p.add_argument("--mode", choices=["exact", "atleast"], default="exact")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="largest L for which UDMs can exist")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("mds-check", help="check that the zeroth rows generate an MDS code")
    p.add_argument("file")
    p.set_defaults(func=cmd_mds_check)

    p = sub.add_parser("transform", help="apply a UDM-preserving transformation")
    p.add_argument("op", choices=["permute", "row", "col", "tensor", "pair-reversal", "normalize", "reduce"])
    p.add_argument("file")
    p.add_argument("--sigma", help="permutation, e.g. '1 0 3 2'")
    p.add_argument("--ell", type=int)
    p.add_argument("--matrix", help="rows separated by ';', e.g. '2 0;1 1'")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("encode", help="encode an information vector into a received-word file")
    p.add_argument("--family", required=True)
    p.add_argument("--u", required=True, help="information vector, e.g. '1 2 0'")
    p.add_argument("--pattern", help="non-erased prefix lengths (default: nothing erased)")
    p.add_argument("--taylor", action="store_true", help="encode via Taylor coefficients (Pascal families)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a received-word file")
    p.add_argument("--family", required=True)
    p.add_argument("--rx", required=True)
    p.add_argument("--decoder", choices=["gaussian", "newton"], default="gaussian")
    p.add_argument("--expect", help="exit 1 if the decoded vector differs")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="random encode/erase/decode trials")
    p.add_argument("--family", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pattern-mode", choices=["exact", "atleast"], default="exact")
    p.add_argument("--decoder", choices=["gaussian", "newton", "both"], default="gaussian")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="operation-count profile of both decoders")
    p.add_argument("--K", type=int, nargs="+", default=[16, 32, 64])
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q", type=int, default=127)
    p.add_argument("--figure", help="write a log-log plot (png/pdf/svg) here")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, FieldError, BoundViolationError, transforms.TransformError,
            codec.DecodingError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
