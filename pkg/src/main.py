import argparse
import sys
from typing import Any, Callable, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from src.models.cell_label import CellLabel
from src.models.errors import ParseError, TldkitError
from src.models.ftl_element import FtlElement
from src.models.half_diagram import BasisVariant, CellBasis
from src.models.poly import RationalValue
from src.models.results import CaseResult, DetMethod, DetResult, Verdict
from src.services.cellular_service import CellularService
from src.services.diagram_service import DiagramService
from src.services.forked_service import ForkedService
from src.services.gram_determinant_service import GramDeterminantService
from src.services.half_diagram_service import HalfDiagramService
from src.services.verification_service import SUITES, VerificationService
from src.utils.formatting import to_json_text
from src.utils.runtime_config import RuntimeConfig, load_runtime_config

"""
The tldkit command line. Every subcommand has a *_handle function that
prints one JSON document (or LaTeX / CSV / text when asked) to stdout and
returns the exit code:
0 success, including false verdicts
1 routes disagree or a verification case failed
2 invalid input, printed as {"error": ...}
"""

EXIT_OK: int = 0
EXIT_FAILED: int = 1
EXIT_INVALID: int = 2

# load environment variables from .env file in root
load_dotenv()
cellular_service: CellularService = CellularService()
determinant_service: GramDeterminantService = GramDeterminantService(cellular_service)
forked_service: ForkedService = ForkedService()


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so bad flags become exit 2"""

    def error(self, message: str) -> Any:
        raise ParseError(message)


def _emit(payload: Any) -> None:
    print(payload if isinstance(payload, str) else to_json_text(payload))


def enumerate_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    basis: CellBasis = HalfDiagramService.enumerate_basis(args.n, args.p, BasisVariant(args.variant))
    if args.format == "text":
        _emit("\n".join(d.to_text() for d in basis.members))
        return EXIT_OK
    _emit(
        {
            "n": basis.n,
            "p": basis.p,
            "variant": basis.variant.value,
            "count": len(basis),
            "diagrams": [
                {**d.to_json(), "assocSeq": HalfDiagramService.assoc_seq(d).to_text()}
                for d in basis.members
            ],
        }
    )
    return EXIT_OK


def gram_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    gram = cellular_service.gram(args.n, CellLabel.parse(args.cell))
    match args.format:
        case "latex":
            _emit(gram.to_latex())
        case "csv":
            _emit(gram.to_csv())
        case _:
            _emit(gram.to_json())
    return EXIT_OK


def det_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    cell: CellLabel = CellLabel.parse(args.cell)
    if args.method != "all":
        _emit(determinant_service.det_gram(args.n, cell, DetMethod(args.method)).to_json())
        return EXIT_OK
    results: list[DetResult] = determinant_service.det_gram_all(args.n, cell)
    agree: bool = len({result.value for result in results}) == 1
    _emit({"agree": agree, "results": [result.to_json() for result in results]})
    return EXIT_OK if agree else EXIT_FAILED


def multiply_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    _emit(DiagramService.evaluate_word(args.n, args.word).to_json())
    return EXIT_OK


def semisimple_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    delta: RationalValue = RationalValue.parse(args.delta)
    verdict: Verdict = GramDeterminantService.semisimple(args.n, delta)
    if not args.crosscheck:
        _emit(verdict.to_json())
        return EXIT_OK
    crosscheck: Verdict = determinant_service.semisimple_crosscheck(args.n, delta)
    agree: bool = verdict.decision == crosscheck.decision
    _emit({"agree": agree, "criterion": verdict.to_json(), "crosscheck": crosscheck.to_json()})
    return EXIT_OK if agree else EXIT_FAILED


def quasihereditary_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    delta: RationalValue = RationalValue.parse(args.delta)
    _emit(determinant_service.quasihereditary(args.n, delta).to_json())
    return EXIT_OK


def forked_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    match args.forked_command:
        case "dim":
            _emit({"n": args.n, "dimension": ForkedService.ftl_dim(args.n)})
        case "semisimple":
            _emit(ForkedService.ftl_semisimple(args.n, RationalValue.parse(args.delta)).to_json())
        case "qh":
            _emit(forked_service.ftl_quasihereditary(args.n, RationalValue.parse(args.delta)).to_json())
        case "multiply":
            element: FtlElement = ForkedService.ftl_evaluate_word(args.n, args.word)
            _emit(element.to_json())
    return EXIT_OK


def dimension_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    if args.forked:
        _, _, second = DiagramService.basis_count(args.n)
        dimension: int = ForkedService.ftl_dim(args.n)
        _emit({"n": args.n, "dimension": dimension, "enumerated": second})
        return EXIT_OK if dimension == second else EXIT_FAILED
    total, first, second = DiagramService.basis_count(args.n)
    formula: int = DiagramService.dimension_formula(args.n)
    _emit(
        {
            "n": args.n,
            "dimension": formula,
            "enumerated": total,
            "firstType": first,
            "secondType": second,
        }
    )
    return EXIT_OK if formula == total else EXIT_FAILED


def verify_handle(args: argparse.Namespace, config: RuntimeConfig) -> int:
    max_n: int = args.max_n if args.max_n is not None else config.default_max_n
    results: list[CaseResult] = VerificationService(config).run(args.suite, max_n)
    passed: bool = all(result.passed for result in results)
    _emit(
        {
            "suite": args.suite,
            "maxN": max_n,
            "passed": passed,
            "cases": [result.to_json() for result in results],
        }
    )
    return EXIT_OK if passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser: argparse.ArgumentParser = _Parser(
        prog="tldkit",
        description="Decorated diagram calculus of type D Temperley-Lieb algebras",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    command = commands.add_parser("enumerate", help="cell basis of half diagrams")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--p", type=int, required=True)
    command.add_argument("--variant", choices=[v.value for v in BasisVariant], default="all")
    command.add_argument("--format", choices=["json", "text"], default="json")
    command.set_defaults(handle=enumerate_handle)

    command = commands.add_parser("gram", help="Gram matrix of a cell")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--cell", required=True, help="plain:k, 0+, 0- or dotted:k")
    command.add_argument("--format", choices=["json", "latex", "csv"], default="json")
    command.set_defaults(handle=gram_handle)

    command = commands.add_parser("det", help="Gram determinant of a cell")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--cell", required=True)
    command.add_argument("--method", choices=[m.value for m in DetMethod] + ["all"], default="direct")
    command.set_defaults(handle=det_handle)

    command = commands.add_parser("multiply", help="evaluate a word in the generators")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--word", required=True, help='e.g. "e1 eb1 e2"')
    command.set_defaults(handle=multiply_handle)

    command = commands.add_parser("semisimple", help="semi-simplicity at a rational d")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--delta", required=True, help="a or a/b; write --delta=-1/2 for negatives")
    command.add_argument("--crosscheck", action="store_true")
    command.set_defaults(handle=semisimple_handle)

    command = commands.add_parser("quasihereditary", help="quasi-heredity at a rational d")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--delta", required=True)
    command.set_defaults(handle=quasihereditary_handle)

    command = commands.add_parser("forked", help="the forked quotient")
    forked_commands = command.add_subparsers(dest="forked_command", required=True, parser_class=_Parser)
    sub = forked_commands.add_parser("dim")
    sub.add_argument("--n", type=int, required=True)
    for name in ("semisimple", "qh"):
        sub = forked_commands.add_parser(name)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--delta", required=True)
    sub = forked_commands.add_parser("multiply")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--word", required=True)
    command.set_defaults(handle=forked_handle)

    command = commands.add_parser("dimension", help="dimension against the enumerated basis")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--forked", action="store_true")
    command.set_defaults(handle=dimension_handle)

    command = commands.add_parser("verify", help="run verification suites")
    command.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    command.add_argument("--max-n", dest="max_n", type=int, default=None)
    command.set_defaults(handle=verify_handle)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args: argparse.Namespace = build_parser().parse_args(argv)
        config: RuntimeConfig = load_runtime_config()
        handle: Callable[[argparse.Namespace, RuntimeConfig], int] = args.handle
        return handle(args, config)
    except (TldkitError, ValidationError) as e:
        _emit({"error": str(e)})
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
