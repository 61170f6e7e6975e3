"""Read-only views of a model: generator summary and the B table on the window."""
from core.algebra import Element
from core.bv_kernel import BVModel, apply_B
from models.schemas import ModelSummary, TableReport, TableRow, VerificationWindow


def summarize(model: BVModel, window: VerificationWindow) -> ModelSummary:
    generators = [
        {"name": g.name, "kind": g.kind.value, "degree": g.degree, "factor": g.factor.value}
        for g in model.signature.generators
    ]
    return ModelSummary(model=model.name, rule=model.tag, generators=generators,
                        window_basis_size=len(model.window_basis(window)))


def b_table(model: BVModel, window: VerificationWindow) -> TableReport:
    rows = []
    for m in model.window_basis(window):
        output = apply_B(model, Element.monomial(model.signature, m))
        rows.append(TableRow(input=model.signature.format_monomial(m), output=str(output)))
    return TableReport(model=model.name, rule=model.tag, rows=rows)
