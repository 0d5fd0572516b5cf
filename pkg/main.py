"""
Torsion Toolkit: exact symbolic-numeric Reidemeister torsion of knot
complements, Dehn surgeries and Seifert fibered homology spheres.

CLI entry point: Riley polynomials, A-polynomials, surgery solution tables
and annihilators, Seifert torsion values, integrality certificates and the
splice condition.

Usage:
    python main.py riley --knot "J(2,4)"
    python main.py apoly --knot 5_2 --verify all
    python main.py surgery --knot "J(2,-2)" --slope 2/3 --emit table
    python main.py seifert --brieskorn 2,3,5 --emit sigma
    python main.py certify --knot 4_1 --slope 1/3 --perron
    python main.py splice --knot trefoil

Examples:
    # Torsion polynomial of 1-surgery on the figure-eight knot
    python main.py surgery --knot "J(2,-2)" --slope 1 --emit annihilator

    # Full certificate as JSON
    python main.py --format json --out ./out/2_3.json surgery --knot 4_1 --slope 2/3 --emit certificate

Exit codes: 0 success, 1 certification-negative, 2 usage or parse error,
3 internal computation error.
"""

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from pydantic import BaseModel

from config.settings import DEFAULT_OUTPUT_DIR, DEFAULT_PRECISION, MIN_PRECISION, VERSION
from src.algebra.poly import MultiPoly, parse_poly
from src.apoly.apoly import APoly, a_polynomial, hoste_shanahan, same_up_to_unit
from src.apoly.lemmas import verify_all
from src.errors import (
    ConvergenceError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    ToolkitError,
    VerificationError,
)
from src.export.exporters import export_json, export_table_csv, format_table
from src.extraction.schema import (
    CheckResult,
    PolynomialReport,
    ReportBundle,
    RunManifest,
    SeifertTable,
    SolutionTable,
    VerificationReport,
)
from src.representations.riley import (
    TwistKnotFamily,
    at_imaginary_unit,
    longitude_commutation_check,
    parse_knot,
    riley_criterion_check,
    riley_polynomial,
)
from src.seifert.index import SeifertIndex, SeifertTuple, admissible_tuples, brieskorn_index
from src.seifert.torsion import (
    brieskorn_sigma,
    seifert_integrality_certificate,
    seifert_torsion_values,
    torsion_sigma,
)
from src.surgery.annihilator import torsion_annihilator
from src.surgery.certificates import (
    integer_surgery_eliminant,
    integrality_chain,
    one_over_q_certificate,
    perron_check,
)
from src.surgery.slope import SurgerySlope
from src.surgery.splice import splice_condition_check
from src.surgery.system import solution_points, solve_representations, surgery_system


# ──────────────────────────────────────────────────────────────
# Logging Setup
# ──────────────────────────────────────────────────────────────
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
    datefmt="%H:%M:%S",
)
logger = logging.getLogger("torsion-toolkit")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


# ──────────────────────────────────────────────────────────────
# Argument helpers
# ──────────────────────────────────────────────────────────────
def twist_parameter(token: str, allow_unknot: bool = False) -> int:
    """m of J(2,2m); ``unknot`` and J(2,0) only where the command accepts them."""
    text = token.replace(" ", "").lower()
    if text in ("unknot", "j(2,0)", "0_1"):
        if not allow_unknot:
            raise PreconditionError("J(2,0) is the unknot; this command needs m != 0")
        return 0
    return parse_knot(token).m


def parse_orders(text: str) -> List[int]:
    try:
        orders = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"malformed Brieskorn orders {text!r}; expected a1,a2,a3") from exc
    if len(orders) != 3 or min(orders) < 2:
        raise ParseError(f"Brieskorn spheres need three orders >= 2, got {text!r}")
    return orders


def read_tuples(path: str) -> List[SeifertTuple]:
    """One tuple per line, entries separated by spaces or commas; '#' starts a comment."""
    tuples = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            tuples.append(SeifertTuple(tuple(int(k) for k in line.split())))
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: malformed tuple {line!r}") from exc
    return tuples


def polynomial_report(name: str, subject: str, poly: MultiPoly, provenance: str = "", removed=()) -> PolynomialReport:
    return PolynomialReport(
        name=name,
        subject=subject,
        polynomial=str(poly),
        variables=list(poly.vars),
        degrees={v: poly.degree(v) for v in poly.vars},
        provenance=provenance,
        removed_factors=list(removed),
    )


def bundle(command: str, subject: str, polynomials=(), reports=(), perron=None) -> ReportBundle:
    reports = list(reports)
    verified = all(r.verified for r in reports) and (perron is None or perron.is_perron)
    return ReportBundle(
        command=command, subject=subject, verified=verified,
        polynomials=list(polynomials), reports=reports, perron=perron,
    )


# ──────────────────────────────────────────────────────────────
# Commands
# ──────────────────────────────────────────────────────────────
def cmd_riley(args) -> BaseModel:
    family = TwistKnotFamily(twist_parameter(args.knot))
    phi = riley_polynomial(family)
    polys = [polynomial_report("riley", family.label, phi, "word evaluation")]
    if args.at_i:
        polys.append(polynomial_report("riley at s=i", family.label, at_imaginary_unit(phi), "s = i"))
    reports = []
    if args.check:
        checks = [
            CheckResult(label="rho(wx) = rho(yw) modulo phi", passed=riley_criterion_check(family)),
            CheckResult(label="rho(lambda) commutes with rho(x) modulo phi", passed=longitude_commutation_check(family)),
        ]
        reports.append(VerificationReport.from_checks("riley-criterion", family.label, checks))
    return bundle("riley", family.label, polys, reports)


def cmd_apoly(args) -> BaseModel:
    m = twist_parameter(args.knot, allow_unknot=True)
    subject = f"J(2,{2 * m})"
    apoly: APoly = hoste_shanahan(m) if args.recursion else a_polynomial(m)
    polys = [polynomial_report("A-polynomial", subject, apoly.poly, apoly.provenance, apoly.removed)]
    reports: List[VerificationReport] = []
    if args.verify == "all":
        reports = verify_all(m, apoly)
        if args.recursion and m:
            other = a_polynomial(m)
            reports.append(VerificationReport.from_checks("recursion-vs-elimination", subject, [
                CheckResult(label="recursion equals elimination up to a unit",
                            passed=same_up_to_unit(apoly.poly, other.poly)),
            ]))
    return bundle("apoly", subject, polys, reports)


def cmd_surgery(args) -> BaseModel:
    family = TwistKnotFamily(twist_parameter(args.knot))
    slope = SurgerySlope.parse(args.slope)
    system = surgery_system(family, slope)
    if args.emit == "table":
        reps = solve_representations(family, slope, args.precision, args.cross_check)
        return SolutionTable(
            subject=family.label, slope=str(slope), rows=solution_points(reps), removed_factors=list(system.removed)
        )
    certificate = torsion_annihilator(family, slope, args.precision, args.cross_check)
    if args.emit == "annihilator":
        report = PolynomialReport(
            name="torsion annihilator",
            subject=f"{family.label} slope {slope}",
            polynomial=certificate.annihilator,
            variables=["x"],
            degrees={"x": parse_poly(certificate.annihilator).degree("x")},
            provenance="matched factors of the torsion eliminant",
            removed_factors=certificate.removed_factors,
        )
        return bundle("surgery", report.subject, [report], [
            VerificationReport(name="annihilator", subject=report.subject, verified=certificate.verified,
                               data={"monic": certificate.monic, "divides_eliminant": certificate.divides_eliminant}),
        ])
    return certificate


def cmd_seifert(args) -> BaseModel:
    if args.brieskorn:
        orders = parse_orders(args.brieskorn)
        index = brieskorn_index(orders)
        subject = "Sigma(" + ",".join(map(str, orders)) + ")"
    else:
        orders = None
        index = SeifertIndex.parse(args.index)
        subject = str(index)
    tuples = list(admissible_tuples(index)) if args.tuples == "all" else read_tuples(args.tuples)

    if args.emit == "sigma":
        if orders:
            return brieskorn_sigma(orders, tuples, args.precision)
        return torsion_sigma(index, tuples, args.precision, subject)

    values = seifert_torsion_values(index, tuples, args.precision)
    table = SeifertTable(index=subject, values=[v.to_value() for v in values])
    if args.emit == "certificate":
        table.certificates = [
            seifert_integrality_certificate(index, v.tuple, args.precision) for v in values if v.acyclic
        ]
    return table


def cmd_certify(args) -> BaseModel:
    m = twist_parameter(args.knot)
    family = TwistKnotFamily(m)
    slope = SurgerySlope.parse(args.slope)
    subject = f"{family.label} slope {slope}"
    reports: List[VerificationReport] = []
    if m == -1 and slope.q == 1:
        reports.append(integer_surgery_eliminant(slope.p).report())
    if m == -1 and abs(slope.p) == 1:
        reports.append(one_over_q_certificate(slope.p * slope.q))
    if slope.p == 1 and slope.q % 2 == 1:
        reports.append(integrality_chain(m, slope.q))
    perron = None
    if args.perron:
        certificate = torsion_annihilator(family, slope, args.precision)
        reports.append(VerificationReport(
            name="annihilator", subject=subject, verified=certificate.verified,
            data={"annihilator": certificate.annihilator},
        ))
        perron = perron_check(parse_poly(certificate.annihilator).to_unipoly("x"), args.precision)
    if not reports:
        raise PreconditionError(f"{subject}: no exact certificate applies; add --perron or use surgery --emit certificate")
    return bundle("certify", subject, reports=reports, perron=perron)


def cmd_splice(args) -> BaseModel:
    m = twist_parameter(args.knot, allow_unknot=True)
    return splice_condition_check(a_polynomial(m), precision=args.precision)


COMMANDS = {
    "riley": cmd_riley,
    "apoly": cmd_apoly,
    "surgery": cmd_surgery,
    "seifert": cmd_seifert,
    "certify": cmd_certify,
    "splice": cmd_splice,
}


# ──────────────────────────────────────────────────────────────
# Output
# ──────────────────────────────────────────────────────────────
def build_manifest(args, elapsed: float) -> RunManifest:
    arguments = {k: v for k, v in vars(args).items() if k not in ("func", "verbose", "out", "format")}
    canonical = json.dumps(arguments, sort_keys=True, default=str)
    return RunManifest(
        command=args.command,
        arguments=arguments,
        precision=args.precision,
        tool_version=VERSION,
        input_hash=hashlib.sha256(canonical.encode("utf-8")).hexdigest(),
        elapsed_seconds=round(elapsed, 3),
    )


def verdict(payload: BaseModel) -> bool:
    if hasattr(payload, "verified"):
        return bool(payload.verified)
    if hasattr(payload, "satisfied"):
        return bool(payload.satisfied)
    return True


def render_text(payload: BaseModel) -> str:
    lines = ["", "=" * 60]
    name = type(payload).__name__
    if isinstance(payload, ReportBundle):
        lines.append(f"  {payload.command} - {payload.subject}")
        lines.append("=" * 60)
        for poly in payload.polynomials:
            lines.append(f"  {poly.name} [{poly.provenance}]")
            lines.append(f"    {poly.polynomial}")
            if poly.removed_factors:
                lines.append(f"    removed: {', '.join(poly.removed_factors)}")
        for report in payload.reports:
            lines.append(f"  {report.name}: {'verified' if report.verified else 'NOT verified'}")
            for check in report.checks:
                mark = "ok  " if check.passed else "FAIL"
                lines.append(f"    [{mark}] {check.label} {check.detail}".rstrip())
        if payload.perron:
            p = payload.perron
            lines.append(f"  perron: {p.is_perron}, dominant root {p.dominant_root.short(10)}, bracket {p.bracket}")
    elif isinstance(payload, SolutionTable):
        lines.append(f"  {payload.subject} slope {payload.slope}: {len(payload.rows)} representations")
        lines.append("=" * 60)
        lines.append(format_table(payload.rows, ["index", "s", "t", "tau"]))
        if payload.removed_factors:
            lines.append(f"  removed from S(s): {', '.join(payload.removed_factors)}")
    elif name == "AnnihilatorCertificate":
        lines.append(f"  {payload.subject} slope {payload.slope}: verified={payload.verified}")
        lines.append("=" * 60)
        lines.append(f"  S(s)        : {payload.s_eliminant}")
        lines.append(f"  annihilator : {payload.annihilator}")
        lines.append(f"  continuation: {tuple(payload.continuation)}")
        lines.append(f"  residual    : {payload.max_witness_residual:.3e}")
        for note in payload.notes:
            lines.append(f"  note: {note}")
    elif isinstance(payload, SeifertTable):
        lines.append(f"  {payload.index}: {len(payload.values)} tuples")
        lines.append("=" * 60)
        lines.append(format_table(payload.values))
        for cert in payload.certificates:
            lines.append(f"  k={cert.k}: {cert.annihilator}")
    elif name == "SigmaReport":
        lines.append(f"  {payload.subject}: sigma of degree {payload.degree}")
        lines.append("=" * 60)
        lines.append(f"  sigma         : {payload.sigma}")
        lines.append(f"  max deviation : {payload.max_deviation:.3e}")
    elif name == "SpliceReport":
        lines.append(f"  {payload.subject}: splice condition {'satisfied' if payload.satisfied else 'not satisfied'}")
        lines.append("=" * 60)
        lines.append(f"  eliminated {payload.eliminated}, eliminant degree {payload.eliminant_degree}")
        for w in payload.witnesses[:5]:
            lines.append(f"  L0 = {w.L.short()}, M0 = {w.M.short()}  (residual {w.residual:.2e})")
    else:
        lines.append(payload.model_dump_json(indent=2, exclude={"manifest"}))
    lines.append("=" * 60)
    return "\n".join(lines)


def output_path(name: str) -> Path:
    """A bare file name lands in the default output directory; any other path is used as given."""
    out = Path(name)
    return DEFAULT_OUTPUT_DIR / out if out.parent == Path(".") else out


def emit(payload: BaseModel, args) -> None:
    if args.out:
        out = output_path(args.out)
        if out.suffix == ".csv":
            rows = getattr(payload, "rows", None) or getattr(payload, "values", None)
            if rows is None:
                raise PreconditionError("CSV output is only available for tables")
            export_table_csv(rows, out)
        else:
            export_json(payload, out)
    if args.format == "json":
        print(payload.model_dump_json(indent=2))
    else:
        print(render_text(payload))


# ──────────────────────────────────────────────────────────────
# CLI Argument Parsing
# ──────────────────────────────────────────────────────────────
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsion-toolkit",
        description="Torsion Toolkit: exact Reidemeister torsion of knots, surgeries and Seifert spheres",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py riley --knot "J(2,4)"
  python main.py surgery --knot "J(2,-2)" --slope 2/3 --emit table
  python main.py seifert --brieskorn 2,3,5 --emit sigma
        """,
    )
    parser.add_argument(
        "--precision",
        type=int,
        default=DEFAULT_PRECISION,
        help=f"Working precision in bits (default: {DEFAULT_PRECISION}).",
    )
    parser.add_argument(
        "--format",
        choices=["json", "text"],
        default="text",
        help="Output format on stdout (default: text).",
    )
    parser.add_argument(
        "--out",
        type=str,
        default=None,
        help="Also write the artifact to this file (.json, or .csv for tables); a bare name goes to out/.",
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose (DEBUG) logging.",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    riley = sub.add_parser("riley", help="Riley polynomial phi(s,t) of a twist knot.")
    riley.add_argument("--knot", required=True, help="J(2,2m) or a catalog name such as 5_2.")
    riley.add_argument("--at-i", action="store_true", help="Also print phi(i, t).")
    riley.add_argument("--check", action="store_true", help="Verify Riley's criterion and longitude commutation.")

    apoly = sub.add_parser("apoly", help="A-polynomial of a twist knot.")
    apoly.add_argument("--knot", required=True)
    apoly.add_argument("--recursion", action="store_true", help="Use the three-term recursion instead of elimination.")
    apoly.add_argument("--verify", choices=["none", "all"], default="none", help="Run the exact structural checks.")

    surgery = sub.add_parser("surgery", help="Representations and torsion of a closed surgery.")
    surgery.add_argument("--knot", required=True)
    surgery.add_argument("--slope", required=True, help="p/q or p.")
    surgery.add_argument("--emit", choices=["table", "annihilator", "certificate"], default="table")
    surgery.add_argument("--cross-check", action="store_true", help="Recompute tau with a second continuation.")

    seifert = sub.add_parser("seifert", help="Torsion of Seifert fibered homology spheres.")
    source = seifert.add_mutually_exclusive_group(required=True)
    source.add_argument("--index", help='Seifert index "b;g;(a1,b1),(a2,b2),...".')
    source.add_argument("--brieskorn", help="Pairwise coprime orders a1,a2,a3.")
    seifert.add_argument("--tuples", default="all", help="File of admissible tuples, or 'all' (default).")
    seifert.add_argument("--emit", choices=["values", "sigma", "certificate"], default="values")

    certify = sub.add_parser("certify", help="Exact integrality certificates for a surgery slope.")
    certify.add_argument("--knot", required=True)
    certify.add_argument("--slope", required=True)
    certify.add_argument("--perron", action="store_true", help="Also certify the annihilator and run the Perron test.")

    splice = sub.add_parser("splice", help="Splice condition: common zeros of f_C and A(M, L).")
    splice.add_argument("--knot", required=True, help="J(2,2m), a catalog name, or 'unknot'.")

    return parser


# ──────────────────────────────────────────────────────────────
# Main
# ──────────────────────────────────────────────────────────────
def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    started = time.perf_counter()
    try:
        if args.precision < MIN_PRECISION:
            raise PreconditionError(f"--precision must be at least {MIN_PRECISION} bits")
        payload = COMMANDS[args.command](args)
        payload.manifest = build_manifest(args, time.perf_counter() - started)
        emit(payload, args)
    except (ParseError, PreconditionError) as e:
        logger.error(f"{args.command}: {e}")
        return EXIT_USAGE
    except (InternalConsistencyError, ConvergenceError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_INTERNAL
    except VerificationError as e:
        logger.warning(f"{args.command}: verification failed: {e}")
        return EXIT_NEGATIVE
    except ToolkitError as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_INTERNAL
    except Exception as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        return EXIT_INTERNAL

    if not verdict(payload):
        logger.warning(f"{args.command}: certification-negative result")
        return EXIT_NEGATIVE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
