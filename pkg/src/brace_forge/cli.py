"""Command-line interface.

Exit codes: 0 success/verified, 1 property failure or counterexample,
2 input or usage error.  All structured output goes to stdout in the
document format or as line-oriented CASE reports; timings and
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .core import (
    BraceForgeError,
    DocumentSyntaxError,
    FiniteSkewBrace,
    PreconditionError,
    SizeCapExceeded,
    ValidationFailure,
    fmt_members,
    validate,
)
from .docio import parse_documents, parse_int_grid, serialize_document
from .corpus import holomorph_enumerate, standard_corpus
from .ideals import as_ideal, enumerate_ideals, is_semiprime, quotient
from .products import SigmaAction, semidirect, trivial_sigma, wreath
from .verify import (
    DEFAULT_SIGMA_BUDGET,
    render_report,
    search_q34,
    verify_cor28_thm33,
    verify_lemma31,
    verify_lemma32,
)
from .ybe import check_braid, check_nondegenerate, solution_map

USAGE_ERROR = 2
PROPERTY_ERROR = 1


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_braces(path: str) -> list[FiniteSkewBrace]:
    docs = parse_documents(_read_text(path), check=True)
    if not docs:
        raise DocumentSyntaxError("no documents in input", line=1)
    return [d.to_brace() for d in docs]


def _cmd_validate(args) -> int:
    docs = parse_documents(_read_text(args.file), check=False)
    if not docs:
        raise DocumentSyntaxError("no documents in input", line=1)
    status = 0
    for doc in docs:
        report = validate(doc.add, doc.circ, doc.name)
        if report.ok:
            print(f"OK order={report.order}")
        else:
            status = PROPERTY_ERROR
            print(f"INVALID order={report.order} violations={len(report.violations)}")
            for rule, (a, b, c) in report.violations:
                print(f"violation {rule} at ({a},{b},{c})")
    return status


def _cmd_ideals(args) -> int:
    for brace in _load_braces(args.file):
        ideals = enumerate_ideals(brace)
        print(f"ideals {brace.name or '<unnamed>'} order={brace.order} count={len(ideals)}")
        for ideal in ideals:
            print(fmt_members(ideal.members))
    return 0


def _cmd_semiprime(args) -> int:
    status = 0
    for brace in _load_braces(args.file):
        verdict = is_semiprime(brace, method=args.method)
        if verdict.semiprime:
            print("SEMIPRIME")
        else:
            status = PROPERTY_ERROR
            print(f"NOT SEMIPRIME witness {fmt_members(verdict.witness.members)}")
    return status


def _cmd_quotient(args) -> int:
    braces = _load_braces(args.file)
    try:
        members = [int(tok) for tok in args.ideal.split(",") if tok.strip() != ""]
    except ValueError:
        raise PreconditionError(f"bad --ideal list {args.ideal!r}") from None
    for brace in braces:
        ideal = as_ideal(brace, members)
        q, coset_map = quotient(brace, ideal)
        print("# coset map " + " ".join(str(int(x)) for x in coset_map))
        sys.stdout.write(serialize_document(q))
    return 0


def _cmd_product(args) -> int:
    braces = _load_braces(args.file)
    if len(braces) != 2:
        raise PreconditionError(f"product needs exactly 2 documents, got {len(braces)}")
    G, H = braces
    if args.kind == "semidirect":
        if args.sigma is not None:
            perms = parse_int_grid(_read_text(args.sigma), H.order, G.order, G.order)
            action = SigmaAction(G, H, perms)
        else:
            action = trivial_sigma(G, H)
        result = semidirect(G, H, action)
    else:
        result, _ = wreath(G, H)
    sys.stdout.write(serialize_document(result))
    return 0


def _cmd_ybe(args) -> int:
    status = 0
    for brace in _load_braces(args.file):
        sol = solution_map(brace)
        lines = [f"solution {brace.name}".rstrip(), f"order {sol.n}", "u"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in sol.u)
        lines.append("v")
        lines.extend(" ".join(str(int(x)) for x in row) for row in sol.v)
        lines.append("end")
        print("\n".join(lines))
        if args.check:
            ok, witness = check_braid(sol)
            if ok:
                print("BRAID OK")
            else:
                status = PROPERTY_ERROR
                print(f"BRAID FAIL at {witness}")
            ok, witness = check_nondegenerate(sol)
            if ok:
                print("NONDEGENERATE OK")
            else:
                status = PROPERTY_ERROR
                print(f"NONDEGENERATE FAIL at {witness}")
    return status


def _cmd_corpus(args) -> int:
    if args.action != "enumerate":
        raise PreconditionError(f"unknown corpus action {args.action!r}")
    if args.group is not None:
        braces = holomorph_enumerate(args.group, limit=args.max_order or 8)
    else:
        braces = standard_corpus(args.max_order or 8)
    for brace in braces:
        sys.stdout.write(serialize_document(brace))
    print(f"# {len(braces)} braces", file=sys.stderr)
    return 0


def _report_exit(reports) -> int:
    status = 0
    for report in reports:
        render_report(report, sys.stdout)
        print(f"# {report.statement} elapsed {report.elapsed:.2f}s", file=sys.stderr)
        if report.counterexamples:
            status = PROPERTY_ERROR
    return status


def _cmd_verify(args) -> int:
    if args.statement == "lemma31":
        report = verify_lemma31(base_cap=args.max_order or 64,
                                jobs=args.jobs, only=args.only)
        return _report_exit([report])
    if args.statement == "lemma32":
        report = verify_lemma32(base_max=args.max_order,
                                jobs=args.jobs, only=args.only)
        return _report_exit([report])
    if args.statement in ("cor28", "thm33"):
        reports = verify_cor28_thm33(
            corpus_max=args.max_order or 8,
            sigma_budget=args.sigma_budget,
            statements=(args.statement,),
            jobs=args.jobs, only=args.only)
        return _report_exit([reports[args.statement]])
    raise PreconditionError(f"unknown statement {args.statement!r}")


def _cmd_search(args) -> int:
    if args.problem != "q34":
        raise PreconditionError(f"unknown search problem {args.problem!r}")
    report = search_q34(max_g=args.max_order or 6, max_h=args.max_h,
                        sigma_budget=args.sigma_budget,
                        jobs=args.jobs, only=args.only)
    return _report_exit([report])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brace-forge",
        description="Finite skew braces: validation, ideals, products, "
                    "Yang-Baxter solutions, and verification sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file(p):
        p.add_argument("file", nargs="?", default="-",
                       help="input document file ('-' or omitted for stdin)")

    p = sub.add_parser("validate", help="check the skew brace axioms")
    add_file(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("ideals", help="enumerate all ideals")
    add_file(p)
    p.set_defaults(func=_cmd_ideals)

    p = sub.add_parser("semiprime", help="decide semiprimality")
    p.add_argument("--method", choices=("fast", "exhaustive"), default="fast")
    add_file(p)
    p.set_defaults(func=_cmd_semiprime)

    p = sub.add_parser("quotient", help="quotient by an ideal")
    p.add_argument("--ideal", required=True,
                   help="comma-separated member indices, e.g. 0,2")
    add_file(p)
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("product", help="semidirect or wreath product of two documents")
    p.add_argument("kind", choices=("semidirect", "wreath"))
    p.add_argument("--sigma", default=None,
                   help="file with |H| rows of |G| entries (semidirect only; "
                        "defaults to the trivial action)")
    add_file(p)
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("ybe", help="extract the Yang-Baxter solution map")
    p.add_argument("--check", action="store_true",
                   help="also verify the braid relation and nondegeneracy")
    add_file(p)
    p.set_defaults(func=_cmd_ybe)

    p = sub.add_parser("corpus", help="corpus construction")
    p.add_argument("action", choices=("enumerate",))
    p.add_argument("--group", default=None,
                   help="group spec like c4, s3, d4, c2xc2xc2 (omit for the "
                        "standard corpus)")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(func=_cmd_corpus)

    def add_sweep_flags(p):
        p.add_argument("--max-order", type=int, default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--sigma-budget", type=int, default=DEFAULT_SIGMA_BUDGET)
        p.add_argument("--only", default=None, help="run a single case by id")

    p = sub.add_parser("verify", help="run a statement verification sweep")
    p.add_argument("statement", choices=("lemma31", "lemma32", "cor28", "thm33"))
    add_sweep_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="counterexample search")
    p.add_argument("problem", choices=("q34",))
    p.add_argument("--max-h", type=int, default=4)
    add_sweep_flags(p)
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return USAGE_ERROR if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except ValidationFailure as exc:
        report = exc.report
        print(f"invalid brace: {len(report.violations)} violations, first: "
              f"{report.violations[0]}", file=sys.stderr)
        return USAGE_ERROR
    except (DocumentSyntaxError, PreconditionError, SizeCapExceeded,
            BraceForgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
