"""Constructors turning finite presentations into BV models."""
from typing import Dict, List, Optional

from core.algebra import Element, GeneratorKind, GeneratorSpec, Monomial, Signature
from core.bv_kernel import BVModel
from core.errors import ModelIncompleteError
from core.presentation import (
    ActingClass,
    ActionTable,
    HurewiczTable,
    LoopOperatorTable,
    ManifoldAlgebra,
    SamelsonTable,
    SigmaTable,
    TensorLayout,
    invariant_factors,
)
from models.schemas import LieGroupData, MonoidData
from rules.hepworth import HepworthRule
from rules.lie_group import LieGroupRule, SignMutation
from rules.rational_action import RationalActionRule
from rules.sphere import SphereRule
from rules.tensor import TensorRule
from services.config import get_logger
from tools.cap_product import CapProductTools

logger = get_logger("model_builder")


# ----------------------------------------------------------------------------
# Loop factor
# ----------------------------------------------------------------------------

def loop_signature(monoid: MonoidData) -> Signature:
    """x1..xl free, y1.. torsion in invariant-factor form, then the spherical generators."""
    specs: List[dict] = [
        {"name": f"x{i}", "kind": GeneratorKind.GROUP_FREE} for i in range(1, monoid.free_rank + 1)
    ]
    for k, order in enumerate(invariant_factors(monoid.torsion_factors), start=1):
        specs.append({"name": f"y{k}", "kind": GeneratorKind.GROUP_TORSION, "torsion_order": order})
    for gen in monoid.spherical:
        degree = gen.degree - 1
        kind = GeneratorKind.POLY_EVEN if degree % 2 == 0 else GeneratorKind.EXT_ODD
        specs.append({"name": gen.name, "kind": kind, "degree": degree})
    return Signature.build(specs)


# ----------------------------------------------------------------------------
# Lie groups
# ----------------------------------------------------------------------------

def lie_group_manifold(data: LieGroupData) -> ManifoldAlgebra:
    """ℍ*(G) = Λ(x₁^∨,…,x_r^∨) with x_j^∨ in degree −|x_j|."""
    generators = [(f"d{j}", -data.degree_of(j), None) for j in range(1, data.rank + 1)]
    dimension = sum(data.degree_of(j) for j in range(1, data.rank + 1))
    return ManifoldAlgebra.build(generators, name="G", dimension=dimension)


def lie_group_action(data: LieGroupData, manifold: ManifoldAlgebra) -> ActionTable:
    """x_j acts on Λ(x^∨) by contraction."""
    sig = manifold.signature
    classes: Dict[str, ActingClass] = {}
    for j in range(1, data.rank + 1):
        images: Dict[Monomial, Element] = {}
        for m in manifold.basis():
            indices = tuple(int(sig.generators[i].name[1:]) for i in sig.ext_indices(m))
            sign, rest = CapProductTools.contraction_action(j, indices)
            if sign == 0:
                continue
            exps = [0] * len(sig)
            for k in rest:
                exps[sig.generator(f"d{k}").id] = 1
            images[m] = Element.monomial(sig, Monomial(tuple(exps)), sign)
        classes[f"x{j}"] = ActingClass(name=f"x{j}", degree=data.degree_of(j), images=images)
    return ActionTable(manifold=manifold, classes=classes)


def lie_group_hurewicz(data: LieGroupData) -> HurewiczTable:
    """hur x_i = x_i for the free π₁ basis and hur f_j = x_j for the odd generators."""
    values: Dict[str, Dict[str, int]] = {}
    for j in range(1, data.free_rank + 1):
        values[f"x{j}"] = {f"x{j}": 1}
    for j in range(data.free_rank + 1, data.rank + 1):
        values[f"sx{j}"] = {f"x{j}": 1}
    return HurewiczTable(values=values)


def lie_group_samelson(data: LieGroupData) -> SamelsonTable:
    degrees = {f"sx{j}": data.degree_of(j) for j in range(data.free_rank + 1, data.rank + 1)}
    return SamelsonTable.zero(degrees)


def build_lie_group_model(data: LieGroupData, name: Optional[str] = None,
                          mutation: Optional[SignMutation] = None) -> BVModel:
    manifold = lie_group_manifold(data)
    layout = TensorLayout.build(loop_signature(MonoidData.from_lie_group(data)), manifold.signature)
    rule = LieGroupRule(layout.signature, data, mutation=mutation)
    label = name or f"G(l={data.free_rank}, torsion={data.torsion_factors}, odd={data.odd_degrees})"
    logger.info(f"Built Lie-group model {label}: {len(layout.signature)} generators")
    return BVModel(
        name=label,
        rule=rule,
        layout=layout,
        manifold=manifold,
        action=lie_group_action(data, manifold),
        hurewicz=lie_group_hurewicz(data),
        lie_data=data,
        monoid=MonoidData.from_lie_group(data),
        samelson=lie_group_samelson(data),
    )


def build_lie_group_hepworth_model(data: LieGroupData, degree_bound: int, group_range: int,
                                   name: Optional[str] = None) -> BVModel:
    """The same algebra with B computed by the coproduct rule from a generated σ* table."""
    manifold = lie_group_manifold(data)
    monoid = MonoidData.from_lie_group(data)
    hurewicz = lie_group_hurewicz(data)
    loop = loop_signature(monoid)
    sigma = sigma_table_from_generators(loop, hurewicz, degree_bound + manifold.depth, group_range)
    return build_hepworth_model(
        monoid, manifold, lie_group_action(data, manifold), sigma,
        name=name or "hepworth-lie", hurewicz=hurewicz, lie_data=data,
    )


def sigma_table_from_generators(loop: Signature, hurewicz: HurewiczTable, degree_bound: int,
                                group_range: int) -> SigmaTable:
    table = SigmaTable.from_generators(loop, hurewicz, degree_bound, group_range)
    logger.info(f"Materialized σ* on {len(table.values)} loop monomials (D={degree_bound}, g={group_range})")
    return table


# ----------------------------------------------------------------------------
# General monoids, spheres, Hepworth, tensor products
# ----------------------------------------------------------------------------

def build_rational_action_model(monoid: MonoidData, manifold: ManifoldAlgebra, action: ActionTable,
                                hurewicz: HurewiczTable, loop_operator: Optional[LoopOperatorTable] = None,
                                samelson: Optional[SamelsonTable] = None,
                                name: str = "rational") -> BVModel:
    layout = TensorLayout.build(loop_signature(monoid), manifold.signature)
    try:
        rule = RationalActionRule(layout, hurewicz, action, loop_operator)
    except ModelIncompleteError as e:
        logger.warning(f"Cannot build {name}: {e}")
        raise
    if samelson is None:
        degrees = {g.name: g.degree for g in monoid.spherical}
        samelson = SamelsonTable.zero(degrees)
    logger.info(f"Built rational model {name}: {len(layout.signature)} generators")
    return BVModel(name=name, rule=rule, layout=layout, manifold=manifold, action=action,
                   hurewicz=hurewicz, monoid=monoid, samelson=samelson)


def sphere_self_action(which: str, generator: str = "d") -> ActionTable:
    """S¹ or S³ acting on itself: [S^n]·x^∨ = [M]."""
    n = 1 if which == "S1" else 3
    manifold = ManifoldAlgebra.sphere(n, generator)
    sig = manifold.signature
    dual = Monomial((1,))
    images = {dual: Element.one(sig)}
    return ActionTable(manifold=manifold, classes={which: ActingClass(name=which, degree=n, images=images)})


def build_sphere_model(which: str, manifold: ManifoldAlgebra, action: ActionTable,
                       loop_generator: Optional[str] = None, name: Optional[str] = None) -> BVModel:
    if which == "S1":
        spec = GeneratorSpec(id=0, name=loop_generator or "x", kind=GeneratorKind.GROUP_FREE)
    elif which == "S3":
        spec = GeneratorSpec(id=0, name=loop_generator or "u2", kind=GeneratorKind.POLY_EVEN, degree=2)
    else:
        raise ModelIncompleteError(f"no sphere-action rule for {which!r}")
    layout = TensorLayout.build(Signature((spec,)), manifold.signature)
    rule = SphereRule(which, layout, action)
    return BVModel(name=name or f"L{which}", rule=rule, layout=layout, manifold=manifold, action=action)


def build_hepworth_model(monoid: MonoidData, manifold: ManifoldAlgebra, action: ActionTable, sigma: SigmaTable,
                         loop_operator: Optional[LoopOperatorTable] = None, name: str = "hepworth",
                         hurewicz: Optional[HurewiczTable] = None,
                         lie_data: Optional[LieGroupData] = None) -> BVModel:
    layout = TensorLayout.build(loop_signature(monoid), manifold.signature)
    if sigma.signature != layout.left:
        raise ModelIncompleteError("σ* table was built for a different loop signature")
    rule = HepworthRule(layout, sigma, action, loop_operator)
    logger.info(f"Built Hepworth model {name}: {len(sigma.values)} σ* entries")
    return BVModel(name=name, rule=rule, layout=layout, manifold=manifold, action=action,
                   hurewicz=hurewicz, sigma=sigma, monoid=monoid, lie_data=lie_data)


def build_group_ring_model(torsion_factors: List[int], name: Optional[str] = None) -> BVModel:
    """Q[T] for a finite abelian T with B = 0 (hur vanishes on torsion)."""
    monoid = MonoidData(free_rank=0, torsion_factors=torsion_factors)
    manifold = ManifoldAlgebra.point()
    return build_rational_action_model(
        monoid, manifold, ActionTable(manifold=manifold), HurewiczTable(),
        name=name or f"Q[torsion {torsion_factors}]",
    )


def tensor_model(a: BVModel, b: BVModel, name: Optional[str] = None) -> BVModel:
    layout = TensorLayout.build(a.signature, b.signature)
    rule = TensorRule(layout, a.rule, b.rule)
    return BVModel(name=name or f"{a.name}⊗{b.name}", rule=rule, layout=None, factors=(a, b))


def tensor_of(models: List[BVModel], name: Optional[str] = None) -> BVModel:
    result = models[0]
    for other in models[1:]:
        result = tensor_model(result, other)
    if name is not None:
        result = BVModel(name=name, rule=result.rule, factors=result.factors)
    return result
