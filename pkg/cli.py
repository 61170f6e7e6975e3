"""Command-line entry point: python cli.py <command> --model NAME_OR_FILE [...]"""
import argparse
import sys
from typing import List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from core.bv_kernel import apply_B, bracket
from core.errors import BVError, SchemaError
from models.schemas import (
    ApplyBResult,
    BracketResult,
    RunConfig,
    SignMutationSpec,
    SuiteReport,
    VerificationWindow,
)
from rules.lie_group import SignMutation
from services.config import get_logger, get_settings
from services.decomposition import decomposition_check
from services.model_loader import load_model
from services.tables import b_table, summarize
from services.verification import check_semidirect, verify_model
from tools.expression import ExpressionTools
from tools.report_tools import ReportTools

logger = get_logger("cli")

EXIT_OK, EXIT_IDENTITY_FAILURE, EXIT_ERROR = 0, 1, 2


def _require(value: Optional[str], flag: str, command: str) -> str:
    if not value:
        raise SchemaError(f"{command} needs {flag}")
    return value


def execute(config: RunConfig) -> Tuple[bool, BaseModel, str]:
    """Run one command; returns (identities ok, report, text rendering)."""
    mutation = SignMutation(config.mutate.sum, config.mutate.position) if config.mutate else None
    model = load_model(config.model, tensor=config.tensor, mutation=mutation)
    window = config.window
    command = config.command

    if command == "build":
        summary = summarize(model, window)
        return True, summary, ReportTools.render_summary(summary)
    if command == "apply-b":
        a = ExpressionTools.parse(model.signature, _require(config.a, "--a", command))
        result = ApplyBResult(model=model.name, input=str(a), output=str(apply_B(model, a)))
        return True, result, ReportTools.render_apply(result)
    if command == "bracket":
        a = ExpressionTools.parse(model.signature, _require(config.a, "--a", command))
        b = ExpressionTools.parse(model.signature, _require(config.b, "--b", command))
        result = BracketResult(model=model.name, a=str(a), b=str(b), output=str(bracket(model, a, b)))
        return True, result, ReportTools.render_bracket(result)
    if command == "table":
        table = b_table(model, window)
        return True, table, ReportTools.render_table(table)
    if command == "verify":
        report = verify_model(model, window)
        return report.ok, report, ReportTools.render_suite(report)
    if command == "decompose":
        if model.lie_data is None:
            raise SchemaError(f"decompose needs a lie_group model, {model.name} is {model.tag}")
        report = decomposition_check(model.lie_data, window, direct=model, name=model.name)
        return report.ok, report, ReportTools.render_decomposition(report)
    if command == "semidirect-check":
        report = SuiteReport(model=model.name, rule=model.tag, window=window, sections=check_semidirect(model, window))
        return report.ok, report, ReportTools.render_suite(report)
    raise SchemaError(f"unknown command {command!r}")


def run(config: RunConfig) -> Tuple[int, str]:
    try:
        ok, report, text = execute(config)
    except BVError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_ERROR, f"error: {e}"
    output = report.model_dump_json(indent=2) if config.output_format == "structured" else text
    return (EXIT_OK if ok else EXIT_IDENTITY_FAILURE), output


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(description="Exact BV-algebra models of free loop space homology")
    parser.add_argument("command", choices=["build", "apply-b", "bracket", "table", "verify", "decompose",
                                            "semidirect-check"])
    parser.add_argument("--model", required=True, help="model file path or catalog name (e.g. 'SU(3)')")
    parser.add_argument("--window", type=int, default=settings.window, help="degree bound D")
    parser.add_argument("--group-range", type=int, default=settings.group_range,
                        help="bound on |free π₁ exponents|")
    parser.add_argument("--max-cases", type=int, default=settings.max_cases,
                        help="sweeps with more tuples than this are sampled")
    parser.add_argument("--seed", type=int, default=settings.seed)
    parser.add_argument("--format", dest="output_format", choices=["text", "structured"], default="text")
    parser.add_argument("--a", help="element expression, e.g. 'x1^3*sx2^2*d1*d2'")
    parser.add_argument("--b", help="second element expression (bracket)")
    parser.add_argument("--tensor", help="tensor the model with this second model")
    parser.add_argument("--mutate", help="flip one sign of the Lie-group rule, SUM:POSITION with SUM in group|poly")
    return parser


def config_from_args(argv: Optional[List[str]] = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    mutate = None
    try:
        if args.mutate:
            which, _, position = args.mutate.partition(":")
            mutate = SignMutationSpec(sum=which, position=position)
        window = VerificationWindow(degree=args.window, group_range=args.group_range,
                                    max_cases=args.max_cases, seed=args.seed)
        return RunConfig(command=args.command, model=args.model, window=window, output_format=args.output_format,
                         a=args.a, b=args.b, tensor=args.tensor, mutate=mutate)
    except ValidationError as e:
        first = e.errors()[0]
        raise SchemaError(f"option {'.'.join(map(str, first['loc']))}: {first['msg']}") from e


def main(argv: Optional[List[str]] = None) -> int:
    try:
        config = config_from_args(argv)
    except SchemaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    status, output = run(config)
    print(output, file=sys.stderr if status == EXIT_ERROR else sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
