import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from lie_stability.constants import (
    DEFAULT_GRID,
    DEFAULT_SEARCH_BOUND,
    EINSTEIN_CONSTANT_KILLING,
    OutputFormat,
    ScaleConvention,
    Subcommand,
)
from lie_stability.lattice import TorusPolynomial
from lie_stability.utils import (
    encode_polynomial,
    encode_rational,
    format_rational,
    parse_rational,
)
from lie_stability.algebra.characters import character_from_fundamental, schur_character_g2
from lie_stability.algebra.integration import integrate_class_function
from lie_stability.algebra.root_system import RootSystem, Weight, get_root_system
from lie_stability.algebra.spectra import freudenthal_eigenvalue, in_scale
from lie_stability.algebra.stability import StabilityReport, analyze_stability
from lie_stability.algebra.utils import ComputationPreconditionError, UnknownGroupError
from lie_stability.cli.quadrature import verify_quadrature

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3

EXPRESSIONS = ("one", "chi", "chi2", "chi3")

VOLUME_NOTE = "the Killing-metric integral is C times the raw torus value for a group-dependent constant C > 0"


class UsageError(ValueError):
    """Exception raised for arguments that parse but do not make a valid request."""


@dataclass
class CommandRequest:
    """
    A parsed command line.

    Attributes:
        subcommand (Subcommand): What to compute.
        group (str): Preset name, resolved by ``get_root_system``.
        parameters (dict): Weight coordinates, expression tokens, grid size and flags.
        output_format (OutputFormat): Text or JSON.
    """

    subcommand: Subcommand
    group: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    output_format: OutputFormat = OutputFormat.TEXT


@dataclass
class CommandResult:
    exit_code: int
    output: str
    is_error: bool = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lie-stability",
        description="Exact Laplacian spectra, characters and Weyl integrals for compact simple Lie groups.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    eigenvalue = subparsers.add_parser("eigenvalue", help="Laplacian eigenvalue of an irreducible representation")
    eigenvalue.add_argument("group")
    eigenvalue.add_argument("coords", nargs="+", type=int, help="highest weight in fundamental coordinates")
    eigenvalue.add_argument("--scale", choices=["fh", "killing"], default="fh")

    character = subparsers.add_parser("character", help="irreducible character on the maximal torus")
    character.add_argument("group")
    character.add_argument("coords", nargs="+", type=int, help="highest weight in fundamental coordinates")
    character.add_argument("--form", choices=["cosine", "json"], default="cosine")
    character.add_argument("--route", choices=["weyl", "schur"], default="weyl")

    integrate = subparsers.add_parser("integrate", help="Haar integral of a class function")
    integrate.add_argument("group")
    integrate.add_argument("--expr", nargs="+", required=True, metavar="TOKEN", help="one | chi|chi2|chi3 COORDS...")

    stability = subparsers.add_parser("stability", help="cubic-integral instability test")
    stability.add_argument("group")
    stability.add_argument("--bound", default=str(DEFAULT_SEARCH_BOUND), help="bound on |λ+ρ|^2, p or p/q")
    stability.add_argument(
        "--einstein-constant",
        default=format_rational(EINSTEIN_CONSTANT_KILLING),
        help="Λ for the Killing metric, p or p/q",
    )

    verify = subparsers.add_parser("verify", help="cross-check an exact integral by quadrature")
    verify.add_argument("group")
    verify.add_argument("--expr", nargs="+", required=True, metavar="TOKEN", help="one | chi|chi2|chi3 COORDS...")
    verify.add_argument("--grid", type=int, default=DEFAULT_GRID)

    for subparser in (eigenvalue, character, integrate, stability, verify):
        subparser.add_argument("--json", action="store_true", help="emit JSON")
    return parser


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    subcommand = Subcommand(args.subcommand)
    parameters = {
        key: value
        for key, value in vars(args).items()
        if key not in ("subcommand", "group", "json", "verbose")
    }
    as_json = args.json or getattr(args, "form", None) == "json"
    return CommandRequest(
        subcommand=subcommand,
        group=args.group,
        parameters=parameters,
        output_format=OutputFormat.JSON if as_json else OutputFormat.TEXT,
    )


def _coords(rs: RootSystem, coords: Sequence[int]) -> Tuple[int, ...]:
    if len(coords) != rs.rank:
        raise UsageError(f"{rs.name} has rank {rs.rank}, but {len(coords)} weight coordinates were given")
    return tuple(coords)


def _weight(rs: RootSystem, coords: Sequence[int]) -> Weight:
    return rs.from_fundamental(_coords(rs, coords))


def _fundamental(rs: RootSystem, weight: Weight) -> List[int]:
    return [int(c) for c in rs.fundamental_coords(weight)]


def _expression(rs: RootSystem, tokens: Sequence[str]) -> TorusPolynomial:
    name, arguments = tokens[0], tokens[1:]
    if name not in EXPRESSIONS:
        raise UsageError(f"unknown expression {name!r}; expected one of {', '.join(EXPRESSIONS)}")
    try:
        coords = [int(token) for token in arguments]
    except ValueError:
        raise UsageError(f"expected integer weight coordinates, but got {' '.join(arguments)}")

    if name == "one":
        if coords:
            raise UsageError("the expression 'one' takes no coordinates")
        return TorusPolynomial.one(rs.rank)

    chi = character_from_fundamental(rs, _coords(rs, coords)).poly
    if name == "chi":
        return chi
    elif name == "chi2":
        return chi * chi.conj()
    return chi ** 3


def _render(request: CommandRequest, payload: dict, text: str) -> str:
    if request.output_format == OutputFormat.JSON:
        return json.dumps(payload, ensure_ascii=False)
    return text


def _run_eigenvalue(rs: RootSystem, request: CommandRequest) -> CommandResult:
    weight = _weight(rs, request.parameters["coords"])
    scale = ScaleConvention.from_flag(request.parameters.get("scale", "fh"))
    eigenvalue = in_scale(freudenthal_eigenvalue(rs, weight), scale)
    payload = {
        "group": rs.name,
        "weight": _fundamental(rs, weight),
        "scale": eigenvalue.scale_convention.value,
        "eigenvalue": encode_rational(eigenvalue.value),
    }
    return CommandResult(EXIT_OK, _render(request, payload, format_rational(eigenvalue.value)))


def _run_character(rs: RootSystem, request: CommandRequest) -> CommandResult:
    weight = _weight(rs, request.parameters["coords"])
    if request.parameters.get("route", "weyl") == "schur":
        if rs.name != "G2":
            raise UsageError("the Schur route is only available for G2")
        character = schur_character_g2(*_fundamental(rs, weight))
    else:
        character = character_from_fundamental(rs, _coords(rs, request.parameters["coords"]))
    payload = {
        "group": rs.name,
        "weight": _fundamental(rs, weight),
        "dimension": character.dimension,
        "character": encode_polynomial(character.poly),
    }
    if request.output_format == OutputFormat.JSON:
        return CommandResult(EXIT_OK, json.dumps(payload, ensure_ascii=False))
    if not character.poly.is_real():
        raise UsageError(f"the character of {rs.name} {tuple(payload['weight'])} is not real; use --form json")
    return CommandResult(EXIT_OK, character.poly.render_cosine())


def _run_integrate(rs: RootSystem, request: CommandRequest) -> CommandResult:
    tokens = request.parameters["expr"]
    integral = integrate_class_function(rs, _expression(rs, tokens))
    payload = {
        "group": rs.name,
        "expression": list(tokens),
        "unit_haar_value": encode_rational(integral.unit_haar_value),
        "raw_torus_value": {
            "coefficient": encode_rational(integral.raw_torus_coefficient),
            "pi_power": integral.rank,
        },
    }
    text = "\n".join(
        [
            f"unit_haar = {format_rational(integral.unit_haar_value)}",
            f"raw_torus = {integral.format_raw()}",
            f"note: {VOLUME_NOTE}",
        ]
    )
    return CommandResult(EXIT_OK, _render(request, payload, text))


def render_report(rs: RootSystem, report: StabilityReport) -> str:
    einstein = report.einstein_constant
    lines = [
        f"group: {report.group}",
        f"einstein constant ({einstein.scale_convention.value} scale): {format_rational(einstein.value)}",
    ]
    target = format_rational(-2 * einstein.value)
    if report.neutral_weights:
        lines.append(f"neutral directions (eigenvalue -2Λ = {target}):")
        for weight, eigenvalue in report.neutral_weights:
            lines.append(f"  Γ{tuple(_fundamental(rs, weight))}  eigenvalue {format_rational(eigenvalue.value)}")
    else:
        lines.append(f"neutral directions (eigenvalue -2Λ = {target}): none")
    for weight, integral in report.cube_integrals:
        lines.append(
            f"  ∫χ^3 for Γ{tuple(_fundamental(rs, weight))}: unit Haar {format_rational(integral.unit_haar_value)}, "
            f"raw torus {integral.format_raw()}"
        )
    for weight in report.inapplicable_weights:
        lines.append(f"  skipped Γ{tuple(_fundamental(rs, weight))}: character is not real")
    if report.cube_integrals:
        lines.append(f"note: {VOLUME_NOTE}")
    lines.append(f"verdict: {report.verdict.value}")
    return "\n".join(lines)


def _run_stability(rs: RootSystem, request: CommandRequest) -> CommandResult:
    try:
        bound = parse_rational(str(request.parameters.get("bound", DEFAULT_SEARCH_BOUND)))
        einstein = parse_rational(str(request.parameters.get("einstein_constant", EINSTEIN_CONSTANT_KILLING)))
    except ValueError as e:
        raise UsageError(str(e))
    if bound <= 0 or einstein <= 0:
        raise UsageError("--bound and --einstein-constant must be positive")

    report = analyze_stability(rs, lambda_einstein=einstein, search_bound=bound)
    return CommandResult(EXIT_OK, _render(request, report.to_dict(), render_report(rs, report)))


def _run_verify(rs: RootSystem, request: CommandRequest) -> CommandResult:
    tokens = request.parameters["expr"]
    result = verify_quadrature(rs, _expression(rs, tokens), grid=request.parameters.get("grid", DEFAULT_GRID))
    payload = {
        "group": rs.name,
        "expression": list(tokens),
        "grid": result.grid,
        "quadrature": {"real": result.value.real, "imag": result.value.imag},
        "exact": encode_rational(result.exact),
        "error": result.error,
        "verdict": result.verdict,
    }
    text = "\n".join(
        [
            f"quadrature = {result.value.real:.12f}",
            f"exact = {format_rational(result.exact)}",
            f"error = {result.error:.3e}",
            result.verdict,
        ]
    )
    return CommandResult(EXIT_OK if result.passed else EXIT_FAILURE, _render(request, payload, text))


_HANDLERS = {
    Subcommand.EIGENVALUE: _run_eigenvalue,
    Subcommand.CHARACTER: _run_character,
    Subcommand.INTEGRATE: _run_integrate,
    Subcommand.STABILITY: _run_stability,
    Subcommand.VERIFY: _run_verify,
}


def run(request: CommandRequest) -> CommandResult:
    """
    Executes a request.

    Returns:
        CommandResult: exit code 0 on success, 2 on usage errors (including unknown
            groups), 3 when a computation precondition fails, 1 on a failed
            quadrature check or an internal error.
    """
    try:
        rs = get_root_system(request.group)
        return _HANDLERS[request.subcommand](rs, request)
    except (UsageError, UnknownGroupError) as e:
        return CommandResult(EXIT_USAGE, f"error: {e}", is_error=True)
    except ComputationPreconditionError as e:
        return CommandResult(EXIT_PRECONDITION, f"error: {e}", is_error=True)
    except Exception as e:
        logger.error(f"internal error while running {request.subcommand.value}: {str(e)}")
        return CommandResult(EXIT_FAILURE, f"error: {e}", is_error=True)


def _log_level(verbosity: int) -> int:
    if verbosity >= 2:
        return logging.DEBUG
    elif verbosity == 1:
        return logging.INFO
    return logging.WARNING


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=_log_level(args.verbose), format="%(levelname)s %(name)s: %(message)s")

    result = run(request_from_args(args))
    print(result.output, file=sys.stderr if result.is_error else sys.stdout)
    return result.exit_code
