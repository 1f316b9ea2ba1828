"""Command-line front end for hakencx.

Every command prints a RunReport (aligned text, or JSON with --json) and
exits 0 when all verdicts pass, 1 on a failing verdict, 2 on a usage error
and 3 when an input cannot be parsed or is structurally malformed.
"""

import argparse
import hashlib
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from dotenv import load_dotenv

# Load environment variables before anything reads the configuration
load_dotenv()

from app import HakencxApp
from config_loader import config
from errors import HakencxError, ParseError, StructuralError, UnknownCatalogEntryError
from models.complexes import RegularCellComplex, SimplicialComplex
from models.reports import RunReport, Verdict
from models.summaries import CutData, Hierarchy, ManifoldSummary
from services import catalog
from services.coefficients import generate_constraints, solve_unique
from services.complex_core import euler_characteristic, f_vector, first_non_simple_cell, validate_boundary_pattern
from services.duality import barycentric_subdivision, dual_cell_complex, dual_simplicial
from services.flagness import flag_report
from services.haken_checks import check_haken_cell
from services.phi_cd import charney_davis, charney_davis_from_counts, haken_4cell_bound, phi, requirement_report
from services.serialization import dumps, load_document, to_jsonable
from services.surgery import cut, evaluate_chain, phi_after_cut, verify_induction_chain
from ui import ReportView

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3

CATALOG_SCHEME = "catalog:"


@dataclass
class Input:
    """A resolved command input: the decoded object, its catalog entry if any, and a digest."""

    source: str
    value: Any
    digest: str
    entry: Optional[catalog.CatalogEntry] = None


def _sha256(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def load_input(source: str, prefer: str = "complex") -> Input:
    """Resolve a file path or a catalog:<name> reference.

    Args:
        source: Path to a JSON document, or catalog:<entry name>
        prefer: Which part of a catalog entry to use: complex, summary or cut

    Returns:
        Input: decoded value with its digest
    """
    if source.startswith(CATALOG_SCHEME):
        entry = catalog.get_entry(source[len(CATALOG_SCHEME):])
        value = entry.data.get(prefer)
        if value is None:
            value = entry.complex or entry.summary or entry.cut
        return Input(source, value, _sha256(dumps(value)), entry)
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError.from_config("parse_error", source=source, reason=e.strerror or str(e))
    except UnicodeDecodeError as e:
        raise ParseError.from_config("parse_error", source=source, reason=str(e))
    return Input(source, load_document(text, source=source), _sha256(text))


def _expect(inp: Input, *types) -> None:
    if not isinstance(inp.value, types):
        wanted = " or ".join(t.__name__ for t in types)
        raise StructuralError(f"{inp.source}: expected {wanted}, got {type(inp.value).__name__}")


def _verdict(name: str, passed: bool, **details) -> Verdict:
    return Verdict(name, bool(passed), to_jsonable(details))


def _dimension(inp: Input, override: Optional[int]) -> int:
    if override is not None:
        return override
    return inp.value.top_dim if isinstance(inp.value, RegularCellComplex) else inp.value.dimension


# Each command returns (inputs, verdicts); catalog emit returns the JSON document instead
CommandResult = Union[Tuple[Dict[str, str], List[Verdict]], str]


def cmd_fvec(args) -> CommandResult:
    inp = load_input(args.input)
    fvec = f_vector(inp.value)
    return {inp.source: inp.digest}, [_verdict("fvec", True, f=fvec.counts, chi_sums=fvec.chi_sums)]


def cmd_chi(args) -> CommandResult:
    inp = load_input(args.input)
    return {inp.source: inp.digest}, [_verdict("chi", True, chi=euler_characteristic(inp.value))]


def cmd_validate(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, RegularCellComplex)
    report = validate_boundary_pattern(inp.value)
    verdicts = [_verdict("boundary_pattern", report.passed, checked=report.checked, entries=len(report.entries))]
    verdicts += [
        _verdict(f"boundary_pattern/{','.join(map(str, entry.subject))}", False, detail=entry.detail)
        for entry in report.failures
    ]
    return {inp.source: inp.digest}, verdicts


def cmd_simple(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, RegularCellComplex)
    n = _dimension(inp, args.n)
    offender = first_non_simple_cell(inp.value, n)
    details = {"n": n}
    if offender is not None:
        cell, count = offender
        details.update(cell=cell.id, dim=cell.dim, maximal_cells=count, expected=n - cell.dim + 1)
    return {inp.source: inp.digest}, [_verdict("simple", offender is None, **details)]


def cmd_dualize(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, RegularCellComplex, SimplicialComplex)
    n = _dimension(inp, args.n)
    if isinstance(inp.value, RegularCellComplex):
        dual, direction = dual_simplicial(inp.value, n), "cells to simplices"
    else:
        dual, direction = dual_cell_complex(inp.value, n), "simplices to cells"
    return {inp.source: inp.digest}, [
        _verdict("dualize", True, direction=direction, f=f_vector(dual).counts, dual=dual)
    ]


def cmd_subdivide(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, RegularCellComplex, SimplicialComplex)
    subdivided = barycentric_subdivision(inp.value).simplices
    chi_before, chi_after = euler_characteristic(inp.value), euler_characteristic(subdivided)
    return {inp.source: inp.digest}, [
        _verdict("subdivide", chi_before == chi_after, chi=chi_before, f=f_vector(subdivided).counts, subdivision=subdivided)
    ]


def cmd_flag(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, SimplicialComplex)
    report = flag_report(inp.value, args.max_size)
    return {inp.source: inp.digest}, [
        _verdict(
            "flag",
            report.verdict,
            minimal_non_faces=report.minimal_non_faces,
            empty_simplices_by_dim=report.empty_simplices_by_dim,
        )
    ]


def cmd_haken_check(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, RegularCellComplex)
    if args.n is not None:
        n = args.n
    elif inp.entry is not None and inp.entry.n is not None:
        n = inp.entry.n
    else:
        n = inp.value.top_dim + 1
    certificate = check_haken_cell(inp.value, n)
    return {inp.source: inp.digest}, [_verdict("haken_cell", certificate.verdict, n=n, certificate=certificate)]


def cmd_phi(args) -> CommandResult:
    inp = load_input(args.input, prefer="summary")
    _expect(inp, RegularCellComplex, ManifoldSummary)
    value = phi(inp.value)
    verdicts = [_verdict("phi", True, phi=value)]
    if isinstance(inp.value, ManifoldSummary):
        is_cell = inp.entry is not None and inp.entry.kind == "both"
        verdicts += [
            _verdict(f"phi/{verdict.name}", verdict.passed, **verdict.details)
            for verdict in requirement_report(inp.value, is_cell=is_cell)
        ]
    return {inp.source: inp.digest}, verdicts


def cmd_cd(args) -> CommandResult:
    if args.counts is not None:
        report = charney_davis_from_counts(*args.counts)
        inputs = {"counts": ",".join(map(str, args.counts))}
    elif args.input is not None:
        inp = load_input(args.input)
        _expect(inp, SimplicialComplex)
        report = charney_davis(inp.value)
        inputs = {inp.source: inp.digest}
    else:
        raise _UsageError("cd needs an input or --counts F0 F1")
    return inputs, [
        _verdict("charney_davis/equivalence", report.equivalence_holds, kappa=report.kappa, f_star=report.f_star.counts),
        _verdict("charney_davis/kappa_nonnegative", report.kappa >= 0, kappa=report.kappa, flag=report.flag),
        _verdict("charney_davis/dual_inequality", report.dual_inequality),
        _verdict("charney_davis/lower_bound", report.lower_bound_inequality),
    ]


def cmd_bound(args) -> CommandResult:
    value, within = haken_4cell_bound(args.f0, args.f3)
    return {"f0": str(args.f0), "f3": str(args.f3)}, [_verdict("haken_4cell_bound", within, phi=value)]


def cmd_cut(args) -> CommandResult:
    x_input = load_input(args.summary, prefer="summary")
    g_input = load_input(args.cut, prefer="cut")
    _expect(x_input, ManifoldSummary)
    _expect(g_input, CutData)
    x, g = x_input.value, g_input.value
    y = cut(x, g)
    verdicts = [_verdict("cut/transformation_law", phi_after_cut(x, g) == phi(y), phi_after_cut=phi_after_cut(x, g), y=y)]
    verdicts += [
        _verdict(f"cut/{line.relation}", line.holds, lhs=line.lhs, rhs=line.rhs)
        for line in evaluate_chain(x, g)
    ]
    return {x_input.source: x_input.digest, g_input.source: g_input.digest}, verdicts


def cmd_verify_chain(args) -> CommandResult:
    inp = load_input(args.input)
    _expect(inp, Hierarchy)
    report = verify_induction_chain(inp.value)
    verdicts = [
        _verdict(f"chain/{i:03d} {line.stage}: {line.relation}", line.holds, lhs=line.lhs, rhs=line.rhs)
        for i, line in enumerate(report.lines)
    ]
    return {inp.source: inp.digest}, verdicts


def cmd_derive_coeffs(args) -> CommandResult:
    system = generate_constraints()
    for provenance in args.drop or ():
        system = system.drop(provenance)
    verdicts = [
        _verdict(f"constraint/{i:02d}", True, row=str(constraint), provenance=constraint.provenance)
        for i, constraint in enumerate(system.constraints)
    ]
    solution = solve_unique(system)
    verdicts.append(_verdict("solution/unique", solution.unique, solution=solution.solution))
    return {"drop": ",".join(args.drop or [])}, verdicts


def cmd_catalog(args) -> CommandResult:
    if args.action == "emit":
        if not args.name:
            raise _UsageError("catalog emit needs an entry name")
        entry = catalog.get_entry(args.name)
        value = entry.complex or entry.summary or entry.cut
        return dumps(value)
    verdicts = []
    for name in catalog.entry_names():
        entry = catalog.get_entry(name)
        verdicts.append(_verdict(f"catalog/{name}", True, kind=entry.kind, note=entry.note))
    return {}, verdicts


def cmd_verify_all(args) -> CommandResult:
    try:
        app = HakencxApp(args.suite)
    except ValueError as e:
        raise _UsageError(str(e))
    report = app.run()
    return report.inputs, list(report.results)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print the report as JSON")
    common.add_argument(
        "-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="debug logging on stderr"
    )
    parser = argparse.ArgumentParser(
        prog="hakencx", description="Haken-cell and flag-sphere verification toolkit", parents=[common]
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    def command(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text, parents=[common])
        sub.set_defaults(handler=handler)
        return sub

    def with_input(sub: argparse.ArgumentParser) -> argparse.ArgumentParser:
        sub.add_argument("input", help="JSON file or catalog:<name>")
        return sub

    with_input(command("fvec", cmd_fvec, "f-vector of a complex"))
    with_input(command("chi", cmd_chi, "Euler characteristic of a complex"))
    with_input(command("validate", cmd_validate, "boundary-pattern validation"))
    with_input(command("simple", cmd_simple, "simplicity check")).add_argument("--n", type=int)
    with_input(command("dualize", cmd_dualize, "dual complex, direction chosen by input kind")).add_argument("--n", type=int)
    with_input(command("subdivide", cmd_subdivide, "barycentric subdivision"))
    with_input(command("flag", cmd_flag, "flag verdict and minimal non-faces")).add_argument("--max-size", type=int)
    with_input(command("haken-check", cmd_haken_check, "Haken n-cell certificate")).add_argument("--n", type=int)
    with_input(command("phi", cmd_phi, "phi of a summary or a 4-cell boundary"))

    cd = command("cd", cmd_cd, "Charney-Davis quantity of a simplicial 3-sphere")
    cd.add_argument("input", nargs="?", help="JSON file or catalog:<name>")
    cd.add_argument("--counts", type=int, nargs=2, metavar=("F0", "F1"), help="use f0* and f1* only")

    bound = command("bound", cmd_bound, "phi <= 1 bound from vertex and facet counts")
    bound.add_argument("f0", type=int)
    bound.add_argument("f3", type=int)

    cut_cmd = command("cut", cmd_cut, "cut a summary along a cut datum")
    cut_cmd.add_argument("summary", help="summary JSON or catalog:<name>")
    cut_cmd.add_argument("cut", help="cut datum JSON or catalog:<name>")

    with_input(command("verify-chain", cmd_verify_chain, "induction chain of a hierarchy"))

    derive = command("derive-coeffs", cmd_derive_coeffs, "solve for the phi coefficients")
    derive.add_argument("--drop", action="append", metavar="PROVENANCE", help="drop constraints by provenance prefix")

    catalog_cmd = command("catalog", cmd_catalog, "list or emit catalog entries")
    catalog_cmd.add_argument("action", choices=("list", "emit"))
    catalog_cmd.add_argument("name", nargs="?")

    verify = command("verify-all", cmd_verify_all, "run every verification suite over the catalog")
    verify.add_argument("--suite", action="append", help="run only the named suite (repeatable)")
    return parser


def configure_logging(verbose: bool = False) -> None:
    logging_config = config.get_logging_config()
    level = "DEBUG" if verbose else str(logging_config.get("level", "INFO")).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format=logging_config.get("format", "%(asctime)s %(levelname)s %(name)s: %(message)s"),
        stream=sys.stderr,
        force=True,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command and print its report.

    Args:
        argv: Argument list without the program name; sys.argv[1:] by default

    Returns:
        int: exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    configure_logging(getattr(args, "verbose", False))
    logger.debug("command %s", args.command)
    try:
        result = args.handler(args)
    except _UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"hakencx: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, StructuralError, UnknownCatalogEntryError) as e:
        print(f"hakencx: {e.kind}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except HakencxError as e:
        logger.debug("command %s failed: %s", args.command, e)
        result = {}, [_verdict(f"{args.command}/error", False, kind=e.kind, error=str(e))]

    if isinstance(result, str):
        # catalog emit prints the bare document
        print(result)
        return EXIT_OK
    inputs, verdicts = result

    report = RunReport(command=args.command, inputs=inputs, results=verdicts)
    print(ReportView(as_json=getattr(args, "json", False)).render(report))
    return EXIT_OK if report.all_pass else EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
