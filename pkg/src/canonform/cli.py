"""Command-line front end.

Exit codes: 0 success / YES, 1 NO (decision verbs), 2 error.
"""

from __future__ import annotations

import argparse
import sys

from . import textio
from .contra import ContraPair, contragredient_canonical, is_contra_equivalent, rank_profile
from .errors import CanonFormError, DegreeBoundExceeded, FieldMismatch, ParseError, ShapeMismatch
from .factor import DEFAULT_MAX_DEGREE, factor
from .field import parse_field
from .jordan import is_similar, jordan_canonical
from .linalg import minimal_polynomial
from .poly import parse_poly

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: usage error: {message}", file=sys.stderr)
        sys.exit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized factoring")
    common.add_argument(
        "--max-degree",
        type=int,
        default=DEFAULT_MAX_DEGREE,
        help="degree cap for factoring over the rationals",
    )
    parser = _Parser(prog="canonform", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    p = sub.add_parser("jordan", parents=[common], help="generalized Jordan form")
    p.add_argument("matrix")
    p = sub.add_parser("minpoly", parents=[common], help="minimal polynomial")
    p.add_argument("matrix")
    p = sub.add_parser("factor", parents=[common], help="factor a polynomial")
    p.add_argument("poly", help="e.g. 'x^2 - 1' or 'poly: -1 0 1'")
    p.add_argument("--field", default="q", help="q, gf7, 'gf 7' (default q)")
    p = sub.add_parser("similar", parents=[common], help="decide similarity")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("contra", parents=[common], help="contragredient canonical form")
    p.add_argument("a", help="m x n matrix A")
    p.add_argument("b", help="n x m matrix B")
    p = sub.add_parser("contra-equiv", parents=[common], help="decide contragredient equivalence")
    for name in ("a", "b", "c", "d"):
        p.add_argument(name)
    return parser


def _decision(answer: bool, as_json: bool, key: str) -> int:
    if as_json:
        sys.stdout.write(textio.dumps({key: answer}))
    else:
        print("YES" if answer else "NO")
    return EXIT_YES if answer else EXIT_NO


def _run(args: argparse.Namespace) -> int:
    opts = {"seed": args.seed, "max_degree": args.max_degree}
    out = sys.stdout
    if args.verb == "jordan":
        report = jordan_canonical(textio.parse_matrix_file(args.matrix), **opts)
        out.write(textio.dumps(textio.jordan_json(report)) if args.json else textio.jordan_text(report))
        return EXIT_YES
    if args.verb == "minpoly":
        A = textio.parse_matrix_file(args.matrix)
        f = minimal_polynomial(A)
        out.write(textio.dumps(textio.minpoly_json(A.field, A.rows, f)) if args.json else f"{f}\n")
        return EXIT_YES
    if args.verb == "factor":
        p = parse_poly(args.poly, parse_field(args.field))
        fac = factor(p, **opts)
        out.write(textio.dumps(textio.factor_json(p, fac)) if args.json else textio.factor_text(fac))
        return EXIT_YES
    if args.verb == "similar":
        A = textio.parse_matrix_file(args.a)
        B = textio.parse_matrix_file(args.b)
        return _decision(is_similar(A, B, **opts), args.json, "similar")
    if args.verb == "contra":
        pair = ContraPair(textio.parse_matrix_file(args.a), textio.parse_matrix_file(args.b))
        report = contragredient_canonical(pair, **opts)
        profile = rank_profile(pair)
        out.write(
            textio.dumps(textio.contra_json(report, profile))
            if args.json
            else textio.contra_text(report, profile)
        )
        return EXIT_YES
    if args.verb == "contra-equiv":
        mats = [textio.parse_matrix_file(f) for f in (args.a, args.b, args.c, args.d)]
        p, q = ContraPair(mats[0], mats[1]), ContraPair(mats[2], mats[3])
        return _decision(is_contra_equivalent(p, q, **opts), args.json, "equivalent")
    raise AssertionError(args.verb)


_LABELS = (
    (ParseError, "parse error"),
    (ShapeMismatch, "shape mismatch"),
    (FieldMismatch, "field mismatch"),
    (DegreeBoundExceeded, "degree bound exceeded"),
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except CanonFormError as exc:
        label = next((name for cls, name in _LABELS if isinstance(exc, cls)), "error")
        print(f"canonform: {label}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OverflowError, RecursionError) as exc:
        # keep exit code 1 reserved for a NO answer
        print(f"canonform: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
