"""Semidirect Lie bracket on s⁻¹π≥₂(G)⊗Q ⊕ ℍ*(M) and its comparison with the loop bracket."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Mapping, Optional, Tuple, Union

from core.algebra import Element, Monomial
from core.bv_kernel import BVModel, bracket
from core.errors import ModelIncompleteError
from core.presentation import ActionTable, HurewiczTable, SamelsonTable
from models.schemas import Counterexample, IdentityReport, VerificationWindow
from services.config import get_logger

logger = get_logger("semidirect")

Piece = Union[str, Monomial]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True, eq=False)
class SemidirectElement:
    lie_part: Mapping[str, Fraction] = field(default_factory=dict)
    module_part: Optional[Element] = None

    @classmethod
    def lie(cls, name: str, coefficient=1) -> "SemidirectElement":
        return cls(lie_part={name: Fraction(coefficient)})

    @classmethod
    def module(cls, x: Element) -> "SemidirectElement":
        return cls(module_part=x)

    def pieces(self) -> Iterator[Tuple[Piece, Fraction]]:
        for name, c in self.lie_part.items():
            if c:
                yield name, c
        if self.module_part is not None:
            yield from self.module_part.items()

    def __add__(self, other: "SemidirectElement") -> "SemidirectElement":
        lie = dict(self.lie_part)
        for name, c in other.lie_part.items():
            lie[name] = lie.get(name, 0) + c
        module = self.module_part
        if other.module_part is not None:
            module = other.module_part if module is None else module + other.module_part
        return SemidirectElement({k: v for k, v in lie.items() if v}, module)

    def scale(self, factor) -> "SemidirectElement":
        module = None if self.module_part is None else self.module_part.scale(factor)
        return SemidirectElement({k: v * factor for k, v in self.lie_part.items() if v * factor}, module)

    def is_zero(self) -> bool:
        return not any(self.lie_part.values()) and (self.module_part is None or self.module_part.is_zero())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return (self + other.scale(-1)).is_zero()

    __hash__ = None

    def __str__(self) -> str:
        parts = [f"{c}*{name}" for name, c in sorted(self.lie_part.items()) if c]
        if self.module_part is not None and not self.module_part.is_zero():
            parts.append(f"({self.module_part})")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SemidirectAlgebra:
    """The degree +1 bracket {s⁻¹f,s⁻¹g} = s⁻¹{f,g}, {s⁻¹f,x} = (−1)^{|f|−1} hur f·x, {x,y} = 0."""

    degrees: Mapping[str, int]
    hurewicz: HurewiczTable
    samelson: SamelsonTable
    action: ActionTable

    @classmethod
    def from_model(cls, model: BVModel) -> "SemidirectAlgebra":
        if model.monoid is None or model.action is None or model.hurewicz is None or model.samelson is None:
            raise ModelIncompleteError(f"model {model.name} carries no semidirect data")
        degrees = {g.name: g.degree - 1 for g in model.monoid.spherical}
        return cls(degrees, model.hurewicz, model.samelson, model.action)

    def zero(self) -> SemidirectElement:
        return SemidirectElement(module_part=Element.zero(self.action.manifold.signature))

    def degree(self, piece: Piece) -> int:
        if isinstance(piece, str):
            return self.degrees[piece]
        return self.action.manifold.signature.degree(piece)

    def _bracket_pieces(self, u: Piece, v: Piece) -> SemidirectElement:
        sig = self.action.manifold.signature
        if isinstance(u, str) and isinstance(v, str):
            return SemidirectElement(lie_part=self.samelson.bracket(u, v), module_part=Element.zero(sig))
        if isinstance(u, str):
            image = self.action.act_combination(self.hurewicz.of_generator(u), Element.monomial(sig, v))
            return SemidirectElement.module(image.scale(_sign(self.degrees[u])))
        if isinstance(v, str):
            sign = -_sign((self.degree(u) + 1) * (self.degree(v) + 1))
            return self._bracket_pieces(v, u).scale(sign)
        return self.zero()

    def bracket(self, a: SemidirectElement, b: SemidirectElement) -> SemidirectElement:
        result = self.zero()
        for u, cu in a.pieces():
            for v, cv in b.pieces():
                result = result + self._bracket_pieces(u, v).scale(cu * cv)
        return result

    def generators(self, window: Optional[VerificationWindow] = None) -> List[Piece]:
        basis = self.action.manifold.basis()
        if window is not None:
            sig = self.action.manifold.signature
            basis = [m for m in basis if abs(sig.degree(m)) <= window.degree]
        return list(self.degrees) + basis

    def element(self, piece: Piece) -> SemidirectElement:
        if isinstance(piece, str):
            return SemidirectElement.lie(piece)
        return SemidirectElement.module(Element.monomial(self.action.manifold.signature, piece))


def semidirect_bracket(a: SemidirectElement, b: SemidirectElement, samelson: SamelsonTable, act: ActionTable,
                       hurewicz: HurewiczTable, degrees: Mapping[str, int]) -> SemidirectElement:
    return SemidirectAlgebra(degrees, hurewicz, samelson, act).bracket(a, b)


def _label(algebra: SemidirectAlgebra, piece: Piece) -> str:
    if isinstance(piece, str):
        return piece
    return algebra.action.manifold.signature.format_monomial(piece)


def _record(report: IdentityReport, inputs: List[str], lhs, rhs):
    report.checked += 1
    if lhs == rhs:
        report.passed += 1
        return
    report.failed += 1
    if report.counterexample is None:
        report.counterexample = Counterexample(inputs=inputs, lhs=str(lhs), rhs=str(rhs))


def embed(model: BVModel, a: SemidirectElement) -> Element:
    """(s⁻¹f, x) ↦ s⁻¹f⊗[M] + 1⊗x."""
    loop = model.layout.left
    out = Element.zero(model.signature)
    for name, c in a.lie_part.items():
        exps = [0] * len(loop)
        exps[loop.generator(name).id] = 1
        out = out + model.loop_element(Element.monomial(loop, Monomial(tuple(exps)), c))
    if a.module_part is not None:
        out = out + model.manifold_element(a.module_part)
    return out


def check_morphism_into_model(model: BVModel, window: VerificationWindow,
                              samelson: Optional[SamelsonTable] = None,
                              act: Optional[ActionTable] = None) -> IdentityReport:
    algebra = SemidirectAlgebra.from_model(model)
    if samelson is not None or act is not None:
        algebra = SemidirectAlgebra(algebra.degrees, algebra.hurewicz, samelson or algebra.samelson,
                                    act or algebra.action)
    report = IdentityReport(name="semidirect_morphism")
    pieces = algebra.generators(window)
    for u in pieces:
        for v in pieces:
            a, b = algebra.element(u), algebra.element(v)
            lhs = embed(model, algebra.bracket(a, b))
            rhs = bracket(model, embed(model, a), embed(model, b))
            _record(report, [_label(algebra, u), _label(algebra, v)], lhs, rhs)
    logger.info(f"{'✅' if report.ok else '❌'} {model.name} semidirect morphism: {report.passed}/{report.checked}")
    return report


def check_semidirect_lie(algebra: SemidirectAlgebra, window: Optional[VerificationWindow] = None) -> List[IdentityReport]:
    """Antisymmetry and shifted Jacobi of the semidirect bracket on generator pairs/triples."""
    pieces = algebra.generators(window)
    antisymmetry = IdentityReport(name="semidirect_antisymmetry")
    jacobi = IdentityReport(name="semidirect_jacobi")
    for u in pieces:
        for v in pieces:
            a, b = algebra.element(u), algebra.element(v)
            sign = -_sign((algebra.degree(u) + 1) * (algebra.degree(v) + 1))
            _record(antisymmetry, [_label(algebra, u), _label(algebra, v)],
                    algebra.bracket(a, b), algebra.bracket(b, a).scale(sign))
            for w in pieces:
                c = algebra.element(w)
                lhs = algebra.bracket(a, algebra.bracket(b, c))
                rhs = algebra.bracket(algebra.bracket(a, b), c) + algebra.bracket(
                    b, algebra.bracket(a, c)
                ).scale(_sign((algebra.degree(u) + 1) * (algebra.degree(v) + 1)))
                _record(jacobi, [_label(algebra, p) for p in (u, v, w)], lhs, rhs)
    return [antisymmetry, jacobi]


def check_grouplike_brackets(model: BVModel) -> IdentityReport:
    """{f⊗[M], 1⊗x} = f⊗(hur f·x) for the generators f of π₁ (torsion ones give 0)."""
    report = IdentityReport(name="grouplike_bracket")
    loop = model.layout.left
    manifold = model.manifold
    for gid in loop.free_ids + loop.torsion_ids:
        exps = [0] * len(loop)
        exps[gid] = 1
        f = Element.monomial(loop, Monomial(tuple(exps)))
        hur = model.hurewicz.of_group_part(loop, Monomial(tuple(exps)))
        for m in manifold.basis():
            x = Element.monomial(manifold.signature, m)
            lhs = bracket(model, model.loop_element(f), model.manifold_element(x))
            rhs = model.layout.join_elements(f, model.action.act_combination(hur, x))
            _record(report, [loop.generators[gid].name, manifold.signature.format_monomial(m)], lhs, rhs)
    logger.info(f"{'✅' if report.ok else '❌'} {model.name} group-like brackets: {report.passed}/{report.checked}")
    return report
