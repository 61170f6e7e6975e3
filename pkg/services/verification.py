"""Every identity a model is expected to satisfy, grouped into independent tasks."""
from functools import partial
from typing import Callable, List

from core.algebra import Element, Monomial
from core.bv_kernel import BVModel, apply_B, run_axiom_suite, run_sides_sweep
from models.schemas import Counterexample, IdentityReport, SuiteReport, VerificationWindow
from services.config import get_logger
from services.decomposition import decomposition_check
from services.model_builder import build_lie_group_hepworth_model
from services.semidirect import SemidirectAlgebra, check_grouplike_brackets, check_morphism_into_model, check_semidirect_lie
from tools.cap_product import CapProductTools

logger = get_logger("verification")

Task = Callable[[], List[IdentityReport]]


def _single(report: IdentityReport, inputs: List[str], lhs, rhs):
    report.checked += 1
    if lhs == rhs:
        report.passed += 1
    else:
        report.failed += 1
        if report.counterexample is None:
            report.counterexample = Counterexample(inputs=inputs, lhs=str(lhs), rhs=str(rhs))


def check_embeddings(model: BVModel, window: VerificationWindow) -> List[IdentityReport]:
    """B(a⊗[M]) = B_ΩG(a)⊗[M] and B(1⊗x) = 0 on the window."""
    sig = model.signature
    loop_monomials = [(m,) for m in model.window_basis(window) if sig.is_loop_only(m)]
    manifold_monomials = [(m,) for m in model.window_basis(window) if sig.is_manifold_only(m)]
    loop_report = run_sides_sweep(
        model, "loop_embedding",
        lambda mdl, a: (apply_B(mdl, a), mdl.rule.loop_operator(next(iter(a.terms)))),
        loop_monomials,
    )
    manifold_report = run_sides_sweep(
        model, "manifold_annihilated", lambda mdl, x: (apply_B(mdl, x), Element.zero(mdl.signature)),
        manifold_monomials,
    )
    return [loop_report, manifold_report]


def check_action_derivations(model: BVModel) -> List[IdentityReport]:
    report = IdentityReport(name="action_derivation")
    action = model.action
    basis = action.manifold.basis()
    for name in action.classes:
        failures = action.derivation_failures(name)
        report.checked += len(basis) ** 2
        report.failed += len(failures)
        report.passed += len(basis) ** 2 - len(failures)
        if failures and report.counterexample is None:
            sig = action.manifold.signature
            a, b = failures[0]
            report.counterexample = Counterexample(
                inputs=[name, sig.format_monomial(a), sig.format_monomial(b)],
                lhs="h·(xy)", rhs="(h·x)y ± x(h·y)",
            )
    return [report]


def check_hepworth_agreement(model: BVModel, window: VerificationWindow) -> List[IdentityReport]:
    """The closed-form Lie-group B against the coproduct formula with generated σ*."""
    oracle = build_lie_group_hepworth_model(model.lie_data, window.degree, window.group_range)
    report = IdentityReport(name="hepworth_agreement")
    for m in model.window_basis(window):
        a = Element.monomial(model.signature, m)
        direct = apply_B(model, a)
        via_coproduct = apply_B(oracle, Element.monomial(oracle.signature, m))
        _single(report, [model.signature.format_monomial(m)], direct, via_coproduct)
    return [report]


def check_decomposition(model: BVModel, window: VerificationWindow) -> List[IdentityReport]:
    result = decomposition_check(model.lie_data, window, direct=model)
    return [IdentityReport(
        name="decomposition", checked=result.checked, passed=result.matched,
        failed=result.checked - result.matched, counterexample=result.mismatch,
    )]


def cap_law_reports(rank: int) -> List[IdentityReport]:
    cap = IdentityReport(name="cap_product_law")
    for subset, (closed, by_contraction, by_permutation) in CapProductTools.cap_law_table(rank).items():
        label = [",".join(map(str, subset)) or "∅"]
        _single(cap, label, closed, by_contraction)
        _single(cap, label, closed, by_permutation)
    action = IdentityReport(name="module_action_law")
    for subset in CapProductTools.subsets(rank):
        for j in range(1, rank + 1):
            _single(action, [f"x{j}", ",".join(map(str, subset)) or "∅"],
                    CapProductTools.contraction_action(j, subset),
                    CapProductTools.action_by_duality(j, subset, rank))
    return [cap, action]


def check_action_table_against_duality(model: BVModel) -> List[IdentityReport]:
    """The built action x_j·(x^∨ word) against PD⁻¹(x_j·PD(−))."""
    report = IdentityReport(name="action_table_duality")
    rank = model.lie_data.rank
    sig = model.action.manifold.signature
    for m in model.action.manifold.basis():
        indices = tuple(int(sig.generators[i].name[1:]) for i in sig.ext_indices(m))
        for j in range(1, rank + 1):
            sign, rest = CapProductTools.action_by_duality(j, indices, rank)
            expected = Element.zero(sig)
            if sign:
                exps = [0] * len(sig)
                for k in rest:
                    exps[sig.generator(f"d{k}").id] = 1
                expected = Element.monomial(sig, Monomial(tuple(exps)), sign)
            actual = model.action.act(f"x{j}", Element.monomial(sig, m))
            _single(report, [f"x{j}", sig.format_monomial(m)], actual, expected)
    return [report]


def check_semidirect(model: BVModel, window: VerificationWindow) -> List[IdentityReport]:
    algebra = SemidirectAlgebra.from_model(model)
    reports = [check_morphism_into_model(model, window)]
    reports.extend(check_semidirect_lie(algebra, window))
    reports.append(check_grouplike_brackets(model))
    return reports


def verification_tasks(model: BVModel, window: VerificationWindow) -> List[Task]:
    tasks: List[Task] = [
        partial(run_axiom_suite, model, window),
        partial(check_embeddings, model, window),
    ]
    if model.action is not None:
        tasks.append(partial(check_action_derivations, model))
    if model.lie_data is not None and model.sigma is None:
        tasks.append(partial(check_hepworth_agreement, model, window))
        tasks.append(partial(check_decomposition, model, window))
        tasks.append(partial(cap_law_reports, model.lie_data.rank))
        tasks.append(partial(check_action_table_against_duality, model))
    if model.layout is not None and model.monoid is not None and model.samelson is not None:
        tasks.append(partial(check_semidirect, model, window))
    return tasks


def verify_model(model: BVModel, window: VerificationWindow) -> SuiteReport:
    sections: List[IdentityReport] = []
    for task in verification_tasks(model, window):
        sections.extend(task())
    report = SuiteReport(model=model.name, rule=model.tag, window=window, sections=sections)
    logger.info(f"{'✅' if report.ok else '❌'} {model.name}: {len(sections)} sections")
    return report
