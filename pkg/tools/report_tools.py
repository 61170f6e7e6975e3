from typing import List

from models.schemas import (
    ApplyBResult,
    BracketResult,
    DecompositionReport,
    IdentityReport,
    ModelSummary,
    SuiteReport,
    TableReport,
)


class ReportTools:
    @staticmethod
    def render_identity(report: IdentityReport) -> List[str]:
        marker = "✅" if report.ok else "❌"
        mode = " (sampled)" if report.sampled else ""
        lines = [f"{marker} {report.name}: {report.passed}/{report.checked} passed{mode}"]
        if report.counterexample is not None:
            ce = report.counterexample
            lines.append(f"    counterexample: ({', '.join(ce.inputs)})")
            lines.append(f"      lhs = {ce.lhs}")
            lines.append(f"      rhs = {ce.rhs}")
        return lines

    @staticmethod
    def render_suite(report: SuiteReport) -> str:
        window = report.window
        lines = [
            f"model {report.model} [{report.rule}]",
            f"window D={window.degree} g={window.group_range} max_cases={window.max_cases} seed={window.seed}",
        ]
        for section in report.sections:
            lines.extend(ReportTools.render_identity(section))
        lines.append("ALL CHECKS PASSED" if report.ok else "FAILURES FOUND")
        return "\n".join(lines)

    @staticmethod
    def render_decomposition(report: DecompositionReport) -> str:
        lines = [f"{report.group} ≅ {' ⊗ '.join(report.factors)}"]
        if report.ok:
            lines.append(f"✅ Θ conjugation matches on {report.matched} monomials")
        else:
            lines.append(f"❌ Θ conjugation matches on {report.matched}/{report.checked} monomials")
            ce = report.mismatch
            if ce is not None:
                lines.append(f"    first mismatch at {ce.inputs[0]}: Θ∘B∘Θ⁻¹ = {ce.lhs}, B = {ce.rhs}")
        return "\n".join(lines)

    @staticmethod
    def render_table(report: TableReport) -> str:
        width = max((len(row.input) for row in report.rows), default=0)
        lines = [f"B on {report.model} [{report.rule}]"]
        lines.extend(f"B({row.input}){' ' * (width - len(row.input))} = {row.output}" for row in report.rows)
        return "\n".join(lines)

    @staticmethod
    def render_summary(summary: ModelSummary) -> str:
        lines = [f"model {summary.model} [{summary.rule}]"]
        for gen in summary.generators:
            lines.append(f"  {gen['name']}: {gen['kind']} degree {gen['degree']} ({gen['factor']})")
        lines.append(f"{summary.window_basis_size} basis monomials in the window")
        return "\n".join(lines)

    @staticmethod
    def render_apply(result: ApplyBResult) -> str:
        return f"B({result.input}) = {result.output}"

    @staticmethod
    def render_bracket(result: BracketResult) -> str:
        return f"{{{result.a}, {result.b}}} = {result.output}"
