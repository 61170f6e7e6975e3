"""ℍ*(LG) ≅ Q[π₁tor] ⊗ ⊗_j ℍ*(LS^{|x_j|}) as BV algebras, checked through Θ."""
from typing import List, Optional, Tuple

from core.algebra import Element, Monomial, Signature, normalize
from core.bv_kernel import BVModel, apply_B
from core.presentation import ActingClass, ActionTable, HurewiczTable, ManifoldAlgebra
from models.schemas import Counterexample, DecompositionReport, LieGroupData, MonoidData, SphericalGenerator, VerificationWindow
from services.config import get_logger
from services.model_builder import (
    build_group_ring_model,
    build_lie_group_model,
    build_rational_action_model,
    build_sphere_model,
    sphere_self_action,
    tensor_of,
)

logger = get_logger("decomposition")


def odd_sphere_factor(j: int, degree: int) -> BVModel:
    """ℍ*(LS^n) for the j-th generator, generators named sx{j} and d{j} (x{j} when n = 1)."""
    if degree == 1:
        action = sphere_self_action("S1", f"d{j}")
        return build_sphere_model("S1", action.manifold, action, loop_generator=f"x{j}", name=f"LS1[{j}]")
    if degree == 3:
        action = sphere_self_action("S3", f"d{j}")
        return build_sphere_model("S3", action.manifold, action, loop_generator=f"sx{j}", name=f"LS3[{j}]")
    manifold = ManifoldAlgebra.sphere(degree, f"d{j}")
    images = {Monomial((1,)): Element.one(manifold.signature)}
    action = ActionTable(manifold=manifold, classes={f"x{j}": ActingClass(f"x{j}", degree, images)})
    monoid = MonoidData(free_rank=0, spherical=[SphericalGenerator(name=f"sx{j}", degree=degree)])
    hurewicz = HurewiczTable(values={f"sx{j}": {f"x{j}": 1}})
    return build_rational_action_model(monoid, manifold, action, hurewicz, name=f"LS{degree}[{j}]")


def decomposition_factors(data: LieGroupData) -> List[BVModel]:
    factors: List[BVModel] = []
    if data.torsion_factors:
        factors.append(build_group_ring_model(list(data.torsion_factors), name="Q[π₁tor]"))
    for j in range(1, data.rank + 1):
        factors.append(odd_sphere_factor(j, data.degree_of(j)))
    return factors


def theta(source: Signature, target: Signature, a: Element) -> Element:
    """Send each generator to the generator of the same name, with the Koszul sign of reordering."""
    out = Element.zero(target)
    for m, c in a.items():
        word = [(source.generators[i].name, e) for i, e in enumerate(m.exponents) if e]
        out = out + normalize(target, word, c)
    return out


def build_decomposition(data: LieGroupData, name: Optional[str] = None) -> Tuple[BVModel, List[BVModel]]:
    factors = decomposition_factors(data)
    if not factors:
        factors = [build_group_ring_model([], name="Q")]
    return tensor_of(factors, name=name or "⊗".join(f.name for f in factors)), factors


def decomposition_check(data: LieGroupData, window: VerificationWindow, direct: Optional[BVModel] = None,
                        name: Optional[str] = None) -> DecompositionReport:
    direct = direct or build_lie_group_model(data)
    lhs, factors = build_decomposition(data)
    report = DecompositionReport(group=name or direct.name, factors=[f.name for f in factors])
    for m in direct.window_basis(window):
        a = Element.monomial(direct.signature, m)
        conjugated = theta(lhs.signature, direct.signature, apply_B(lhs, theta(direct.signature, lhs.signature, a)))
        expected = apply_B(direct, a)
        report.checked += 1
        if conjugated == expected:
            report.matched += 1
        elif report.mismatch is None:
            report.mismatch = Counterexample(
                inputs=[direct.signature.format_monomial(m)], lhs=str(conjugated), rhs=str(expected)
            )
    marker = "✅" if report.ok else "❌"
    logger.info(f"{marker} Θ conjugation matches on {report.matched}/{report.checked} monomials of {report.group}")
    return report
