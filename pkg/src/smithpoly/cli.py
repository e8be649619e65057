"""Command-line interface.

Exit codes: 0 success, 2 not regular, 3 verification failure,
4 parse error, 5 bad arguments.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bench import DEFAULT_SEED, bench_run, format_table, write_csv
from .errors import (
    BadFamilyParam,
    NotRegular,
    ParseError,
    PrimeDoesNotDivideDet,
    ShapeMismatch,
    SmithError,
)
from .factorization import factor_over_rationals
from .families import PERMUTATIONS, FamilySpec, gen_test_matrix
from .globalsmith import smith_with_multipliers
from .localsmith import local_smith, local_smith_over_K
from .matio import (
    read_matpoly_file,
    write_matpoly_file,
    write_matpoly_json,
    write_matpoly_text,
)
from .matpoly import MatPoly, mat_det
from .poly import parse_poly
from .verify import verify_smith

EXIT_OK = 0
EXIT_NOT_REGULAR = 2
EXIT_VERIFY_FAILED = 3
EXIT_PARSE_ERROR = 4
EXIT_BAD_ARGS = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_ARGS)


def _build_parser() -> _Parser:
    parser = _Parser(prog="smith", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Smith form with multipliers")
    p.add_argument("file")
    p.add_argument("--with-U", action="store_true", dest="with_u")
    p.add_argument("--bezout", choices=["whole", "per-column"], default=None)
    p.add_argument(
        "--triangularize", choices=["plain", "reduced"], default="reduced"
    )
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("local", help="local Smith form at one prime")
    p.add_argument("file")
    p.add_argument("--prime", required=True)
    p.add_argument("--variant", choices=["rpr", "k"], default="rpr")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("factor-det", help="factor the determinant")
    p.add_argument("file")

    p = sub.add_parser("gen", help="generate a test matrix")
    p.add_argument("--family", type=int, required=True, choices=range(1, 7))
    p.add_argument("--param", type=int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--permute", choices=PERMUTATIONS, default="none")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="verify a claimed Smith form")
    p.add_argument("--A", required=True, dest="a_file")
    p.add_argument("--E", required=True, dest="e_file")
    p.add_argument("--D", required=True, dest="d_file")
    p.add_argument("--F", dest="f_file", default=None)
    p.add_argument("--V", dest="v_file", default=None)

    p = sub.add_parser("bench", help="median-of-N timings over a family sweep")
    p.add_argument("--family", type=int, required=True, choices=range(1, 7))
    p.add_argument("--params", required=True, help="range a..b or single value")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--csv", default=None)
    p.add_argument("--permute", choices=PERMUTATIONS, default="none")
    p.add_argument("--seed", type=_u64, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _u64(text: str) -> int:
    v = int(text)
    if not (0 <= v < 1 << 64):
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _emit(name: str, A: MatPoly, out_dir, as_json: bool):
    if out_dir is None:
        print(f"# {name}")
        text = write_matpoly_json(A) if as_json else write_matpoly_text(A)
        sys.stdout.write(text)
    else:
        suffix = "json" if as_json else "mp"
        write_matpoly_file(os.path.join(out_dir, f"{name}.{suffix}"), A, as_json)


def _cmd_compute(args) -> int:
    A = read_matpoly_file(args.file)
    result = smith_with_multipliers(
        A,
        bezout=args.bezout or "auto",
        triangularize_variant=args.triangularize,
        with_U=args.with_u,
    )
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    for name, M in (("D", result.D), ("V", result.V), ("E", result.E)):
        _emit(name, M, args.out, args.json)
    if result.U is not None:
        _emit("U", result.U, args.out, args.json)
    return EXIT_OK


def _cmd_local(args) -> int:
    A = read_matpoly_file(args.file)
    p = parse_poly(args.prime).monic()
    det = mat_det(A)
    if det.is_zero():
        raise NotRegular("det(A) is identically zero")
    mu = 0
    rem = det
    while True:
        q, r = rem.divmod(p)
        if not r.is_zero():
            break
        rem = q
        mu += 1
    if mu == 0:
        raise PrimeDoesNotDivideDet(f"{args.prime} does not divide det(A)")
    fn = local_smith if args.variant == "rpr" else local_smith_over_K
    result = fn(A, p, mu)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    print(f"prime: {p.human_text()}")
    print(f"exponents: {' '.join(str(a) for a in result.alphas)}")
    print(f"ranks: {' '.join(str(r) for r in result.ranks)}")
    print(f"max chain length: {result.beta}")
    for name, M in (("D", result.diagonal()), ("V", result.V), ("E", result.E)):
        _emit(name, M, args.out, args.json)
    return EXIT_OK


def _cmd_factor_det(args) -> int:
    A = read_matpoly_file(args.file)
    det = mat_det(A)
    if det.is_zero():
        raise NotRegular("det(A) is identically zero")
    fact = factor_over_rationals(det)
    print(f"unit {fact.unit}")
    for p, e in fact.factors:
        print(f"factor {p.human_text()} {e}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = FamilySpec(
        family=args.family, param=args.param, seed=args.seed,
        permutation=args.permute,
    )
    A = gen_test_matrix(spec)
    if args.out:
        write_matpoly_file(args.out, A, args.json)
    else:
        text = write_matpoly_json(A) if args.json else write_matpoly_text(A)
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    if (args.f_file is None) == (args.v_file is None):
        raise ShapeMismatch("provide exactly one of --F and --V")
    A = read_matpoly_file(args.a_file)
    E = read_matpoly_file(args.e_file)
    D = read_matpoly_file(args.d_file)
    F = read_matpoly_file(args.f_file) if args.f_file else None
    V = read_matpoly_file(args.v_file) if args.v_file else None
    report = verify_smith(A, E, D, F=F, V=V)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


def _cmd_bench(args) -> int:
    params = _parse_params(args.params)
    rows = bench_run(
        args.family,
        params,
        permutation=args.permute,
        repetitions=args.repeat,
        seed=args.seed,
        jobs=args.jobs,
    )
    print(format_table(rows))
    if args.csv:
        write_csv(rows, args.csv)
    return EXIT_OK


def _parse_params(text: str) -> list:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise BadFamilyParam(f"bad parameter range {text!r}") from None
        if hi_i < lo_i:
            raise BadFamilyParam(f"empty parameter range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(text)]
    except ValueError:
        raise BadFamilyParam(f"bad parameter {text!r}") from None


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "compute": _cmd_compute,
        "local": _cmd_local,
        "factor-det": _cmd_factor_det,
        "gen": _cmd_gen,
        "verify": _cmd_verify,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except NotRegular as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_REGULAR
    except ShapeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (BadFamilyParam, PrimeDoesNotDivideDet) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except SmithError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
