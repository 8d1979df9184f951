#!/usr/bin/env python3
"""
Command-line front end.

    ranks      --b2 K [--sig S] [--max N] [--method lie|closed|all]
    loops      --b2 K [--sig S] --max N
    gauge      --group G --b2 K [--form odd|even] [--c2 odd|even] --space SPACE [--max N]
    check      [--group G] --b2 K --max N
    suspension --b2 K [--sig S] --max N

Exit codes: 0 success, 1 internal consistency failure, 2 domain error, 3 budget refusal.
"""

import argparse
import json
import logging
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from typing import Any, TextIO

import pandas as pd

from rational_fourfolds.errors import BudgetExceededError, ConsistencyError, DomainError
from rational_fourfolds.fourfold import (
    BABENKO_CONVENTION_NOTE,
    compare_methods,
    loop_hilbert,
    rank_table_closed,
    ranks_lie,
    ranks_suspension_of_manifold,
    signature_independence,
)
from rational_fourfolds.gauge import (
    LOOP_SPACES,
    cohomology_presentation,
    consistency_report,
    exhaustive_degree,
    expected_total,
    is_su2,
    loop_presentation,
    presentation_hilbert,
    simply_connected_status,
)
from rational_fourfolds.log import setup_logging
from rational_fourfolds.schema import (
    BundleContext,
    IntersectionForm,
    Query,
    ResultDocument,
    SimpleGroup,
    Space,
)

logger = logging.getLogger(__name__)

SIGNATURE_NOTE = "rational ranks depend only on b2; the signature split does not change them"


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _exact(value) -> int | str:
    value = Fraction(value)
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default="table")
    common.add_argument("--log-level", default=None, help="Override RF_LOG_LEVEL")

    form = argparse.ArgumentParser(add_help=False)
    form.add_argument("--b2", type=_non_negative_int, required=True, help="Second Betti number")
    form.add_argument(
        "--sig", type=int, default=None, help="Signature b+ - b- (default: b2, positive definite)"
    )

    parser = argparse.ArgumentParser(
        prog="rational-fourfolds",
        description="Rational homotopy of simply connected four-manifolds and their gauge spaces",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    ranks = commands.add_parser("ranks", parents=[common, form], help="rk pi_k(M) (x) Q")
    ranks.add_argument("--max", type=_positive_int, default=5, help="Largest k (default: 5)")
    ranks.add_argument("--method", choices=["lie", "closed", "all"], default="all")

    loops = commands.add_parser(
        "loops", parents=[common, form], help="Hilbert series of H_*(OmegaM)"
    )
    loops.add_argument("--max", type=_positive_int, required=True, help="Truncation order")

    gauge = commands.add_parser("gauge", parents=[common], help="Gauge-space ring presentations")
    gauge.add_argument("--group", required=True, help="SU<n>, Spin<n>, Sp<n>, G2, F4, E6, E7, E8")
    gauge.add_argument("--b2", type=_non_negative_int, required=True)
    gauge.add_argument("--form", choices=["odd", "even"], default=None)
    gauge.add_argument("--c2", choices=["odd", "even"], default=None)
    gauge.add_argument("--space", choices=[s.value for s in Space], required=True)
    gauge.add_argument("--max", type=_positive_int, default=None, help="Largest degree")
    gauge.add_argument("--hilbert", action="store_true", help="Append the Hilbert series")
    gauge.add_argument(
        "--assume-simply-connected",
        action="store_true",
        help="Compute loop rings even when pi_1 of the base is Z2",
    )

    check = commands.add_parser("check", parents=[common], help="Cross-checks")
    check.add_argument("--group", default=None, help="Run the gauge consistency report")
    check.add_argument("--b2", type=_non_negative_int, required=True)
    check.add_argument("--sig", type=int, default=None)
    check.add_argument("--form", choices=["odd", "even"], default=None)
    check.add_argument("--c2", choices=["odd", "even"], default=None)
    check.add_argument("--max", type=_positive_int, required=True)

    suspension = commands.add_parser(
        "suspension", parents=[common, form], help="rk pi_k(Sigma M) (x) Q"
    )
    suspension.add_argument("--max", type=_positive_int, required=True, help="Largest j")
    return parser


def _context(args) -> BundleContext:
    return BundleContext(
        group=SimpleGroup.parse(args.group),
        b2=args.b2,
        form_parity=args.form or "unspecified",
        c2_parity=args.c2 or "unspecified",
    )


def _ranks(args, warnings: list[str]) -> tuple[dict[str, Any], int]:
    form = IntersectionForm.from_rank_signature(args.b2, args.sig)
    if args.max < 2:
        raise DomainError("--max must be at least 2 for rank tables")
    warnings.append(SIGNATURE_NOTE)
    if args.method == "closed":
        tables = {"closed": rank_table_closed(form.b2, args.max)}
        agree = True
    elif args.method == "lie":
        tables = {"lie-model": ranks_lie(form, args.max)}
        agree = True
    else:
        comparison = compare_methods(form, args.max)
        tables, agree = comparison.tables, comparison.agree
        warnings.extend(comparison.notes)
        if not agree:
            warnings.append(f"methods disagree at k={comparison.disagreements}")
    consensus = next(iter(tables.values()))
    result = {
        "form": form.model_dump(),
        "methods": list(tables),
        "agreement": agree,
        "ranks": consensus.rows(),
        "tables": {name: table.rows() for name, table in tables.items()},
    }
    return result, 0 if agree else 1


def _loops(args, warnings: list[str]) -> tuple[dict[str, Any], int]:
    form = IntersectionForm.from_rank_signature(args.b2, args.sig)
    warnings.append(SIGNATURE_NOTE)
    series = loop_hilbert(form, args.max)
    result = {
        "form": form.model_dump(),
        "method": "lie-model",
        "series": [{"degree": k, "dim": _exact(c)} for k, c in enumerate(series.coefficients)],
    }
    return result, 0


def _gauge(args, warnings: list[str]) -> tuple[dict[str, Any], int]:
    ctx = _context(args)
    space = Space(args.space)
    status = simply_connected_status(ctx)
    max_degree = args.max or exhaustive_degree(ctx.group)
    if space in LOOP_SPACES:
        pi1 = status.pi1_btilde if space is Space.LOOP_BTILDE else status.pi1_bstar
        if pi1 == "unknown" and not args.assume_simply_connected:
            if is_su2(ctx.group):
                raise DomainError(
                    f"{ctx.group.label()} {space.value} needs --form"
                    + (" and --c2" if space is Space.LOOP_BSTAR else "")
                    + " to decide whether the base is simply connected"
                )
            warnings.append(f"pi_1 of the base is unknown for {ctx.group.label()}; assumed 0")
        presentation = loop_presentation(
            ctx, space, max_degree, assume_simply_connected=args.assume_simply_connected
        )
        if space is Space.LOOP_BSTAR:
            mismatches = consistency_report(ctx, max_degree).mismatches[Space.BSTAR.value]
            if mismatches:
                warnings.append(
                    "loop-bstar counts differ from the degree-shifted B* cohomology counts "
                    f"at degrees {mismatches}"
                )
    else:
        presentation = cohomology_presentation(ctx, space, max_degree)
    result: dict[str, Any] = {
        "group": ctx.group.label(),
        "b2": ctx.b2,
        "space": space.value,
        "label": presentation.label,
        "kind": presentation.kind,
        "generators": presentation.rows(),
        "total": presentation.total,
        "connectivity": status.model_dump(),
    }
    if max_degree >= exhaustive_degree(ctx.group):
        result["expected_total"] = expected_total(ctx.group, ctx.b2, space)
    if args.hilbert:
        series = presentation_hilbert(presentation, max_degree)
        result["hilbert"] = [
            {"degree": k, "dim": _exact(c)} for k, c in enumerate(series.coefficients)
        ]
    return result, 0


def _check(args, warnings: list[str]) -> tuple[dict[str, Any], int]:
    if args.group:
        report = consistency_report(_context(args), args.max)
        for space, degrees in report.mismatches.items():
            if degrees:
                warnings.append(f"{space}: loop and shifted cohomology counts differ at {degrees}")
        return report.model_dump(mode="json"), 0

    form = IntersectionForm.from_rank_signature(args.b2, args.sig)
    if args.max < 2:
        raise DomainError("--max must be at least 2 for rank tables")
    comparison = compare_methods(form, args.max)
    splits, independent = signature_independence(form.b2, args.max)
    warnings.extend(comparison.notes)
    if not comparison.agree:
        warnings.append(f"methods disagree at k={comparison.disagreements}")
    if not independent:
        warnings.append("rank tables depend on the signature split")
    result = {
        "form": form.model_dump(),
        "agreement": comparison.agree,
        "disagreements": comparison.disagreements,
        "tables": {name: table.rows() for name, table in comparison.tables.items()},
        "signature_independent": independent,
        "splits": {label: table.rows() for label, table in splits.items()},
    }
    return result, 0 if comparison.agree and independent else 1


def _suspension(args, warnings: list[str]) -> tuple[dict[str, Any], int]:
    form = IntersectionForm.from_rank_signature(args.b2, args.sig)
    ranks = ranks_suspension_of_manifold(form, args.max)
    warnings.append(BABENKO_CONVENTION_NOTE)
    result = {
        "form": form.model_dump(),
        "ranks": [{"k": j + 1, "rank": r} for j, r in ranks.items()],
    }
    return result, 0


HANDLERS = {
    "ranks": _ranks,
    "loops": _loops,
    "gauge": _gauge,
    "check": _check,
    "suspension": _suspension,
}


def render_json(document: ResultDocument) -> str:
    return json.dumps(
        document.model_dump(mode="json"), sort_keys=True, separators=(",", ":"), ensure_ascii=False
    )


def _frame(rows: list[dict[str, Any]]) -> str:
    return pd.DataFrame(rows).to_string(index=False) if rows else "(empty)"


def render_table(document: ResultDocument) -> str:
    """Human-readable rendering; every number stays an integer or an exact fraction."""
    result = document.result
    lines = [f"# {document.query.command} {json.dumps(document.query.parameters, sort_keys=True)}"]
    match document.query.command:
        case "ranks":
            by_method = {
                name: {r["k"]: r["rank"] for r in rows} for name, rows in result["tables"].items()
            }
            rows = [
                {"k": r["k"], **{name: ranks.get(r["k"], "-") for name, ranks in by_method.items()}}
                for r in result["ranks"]
            ]
            lines.append(_frame(rows))
            lines.append(f"agreement: {'yes' if result['agreement'] else 'NO'}")
        case "loops":
            lines.append(_frame(result["series"]))
        case "gauge":
            lines.append(f"{result['label']} ({result['group']}, b2={result['b2']})")
            lines.append(_frame(result["generators"]))
            total = f"total generators: {result['total']}"
            if "expected_total" in result:
                total += f" (expected {result['expected_total']})"
            lines.append(total)
            if "hilbert" in result:
                lines.append(_frame(result["hilbert"]))
        case "check" if "comparisons" in result:
            for space, rows in result["comparisons"].items():
                lines.append(f"[{space}]")
                lines.append(_frame(rows))
        case "check":
            for name, rows in result["tables"].items():
                lines.append(f"[{name}]")
                lines.append(_frame(rows))
            lines.append(f"agreement: {'yes' if result['agreement'] else 'NO'}")
            lines.append(
                f"signature independent: {'yes' if result['signature_independent'] else 'NO'}"
            )
        case "suspension":
            lines.append(_frame(result["ranks"]))
    lines.extend(f"note: {w}" for w in document.warnings)
    return "\n".join(lines)


def run(
    argv: list[str] | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    setup_logging(args.log_level)

    parameters = {
        k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "log_level")
    }
    query = Query(command=args.command, parameters=parameters, output_format=args.format)
    warnings: list[str] = []
    try:
        result, code = HANDLERS[args.command](args, warnings)
    except DomainError as e:
        print(f"error: {e}", file=stderr)
        return 2
    except BudgetExceededError as e:
        print(f"refused: {e}", file=stderr)
        return 3
    except ConsistencyError as e:
        print(f"internal consistency failure: {e}", file=stderr)
        return 1

    document = ResultDocument(query=query, result=result, warnings=warnings)
    rendered = render_json(document) if args.format == "json" else render_table(document)
    print(rendered, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
