"""Finite presentation data consumed by the B-rules.

ManifoldAlgebra, ActionTable, HurewiczTable, SigmaTable, LoopOperatorTable and
SamelsonTable are plain immutable tables; TensorLayout glues two signatures
into the signature of their tensor product.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from core.algebra import Element, Factor, GeneratorKind, GeneratorSpec, Monomial, Signature
from core.errors import DegreeError, ModelIncompleteError, SignatureError
from services.config import get_logger

logger = get_logger("presentation")

Combination = Mapping[str, Fraction]


def invariant_factors(orders: Sequence[int]) -> List[int]:
    """Invariant-factor form of Z/o₁ × … × Z/o_k (factors > 1, each dividing the next)."""
    if not orders:
        return []
    if any(o < 1 for o in orders):
        raise SignatureError(f"torsion orders must be positive, got {list(orders)}")
    snf = smith_normal_form(Matrix.diag(*orders), domain=ZZ)
    diagonal = sorted(abs(int(snf[i, i])) for i in range(len(orders)))
    return [d for d in diagonal if d > 1]


def concat_signatures(left: Signature, right: Signature) -> Tuple[Signature, Dict[str, str]]:
    """Concatenate two signatures, suffixing clashing names of the right one.

    Returns the new signature and the renaming applied to the right factor.
    """
    taken = {g.name for g in left.generators}
    renamed: Dict[str, str] = {}
    specs = list(left.generators)
    for g in right.generators:
        name = g.name
        k = 2
        while name in taken:
            name = f"{g.name}_{k}"
            k += 1
        taken.add(name)
        if name != g.name:
            renamed[g.name] = name
        specs.append(replace(g, id=len(specs), name=name))
    return Signature(tuple(specs)), renamed


def rename_signature(signature: Signature, mapping: Mapping[str, str]) -> Signature:
    return Signature(tuple(replace(g, name=mapping.get(g.name, g.name)) for g in signature.generators))


@dataclass(frozen=True)
class TensorLayout:
    """Signature of A⊗A' with the splitting x⊗y ↔ x·y (sign +1: all of A's ids come first)."""

    left: Signature
    right: Signature
    signature: Signature
    renamed: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def build(cls, left: Signature, right: Signature) -> "TensorLayout":
        signature, renamed = concat_signatures(left, right)
        if renamed:
            logger.info(f"Renamed clashing generators of the right factor: {renamed}")
        return cls(left, right, signature, renamed)

    @property
    def cut(self) -> int:
        return len(self.left)

    def split(self, m: Monomial) -> Tuple[Monomial, Monomial]:
        return Monomial(m.exponents[: self.cut]), Monomial(m.exponents[self.cut:])

    def join(self, a: Monomial, b: Monomial) -> Monomial:
        return Monomial(a.exponents + b.exponents)

    def join_elements(self, a: Element, b: Element) -> Element:
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                out[self.join(ma, mb)] = ca * cb
        return Element.from_terms(self.signature, out)

    def lift_left(self, a: Element) -> Element:
        return self.join_elements(a, Element.one(self.right))

    def lift_right(self, b: Element) -> Element:
        return self.join_elements(Element.one(self.left), b)


@dataclass(frozen=True)
class ManifoldAlgebra:
    """ℍ*(M) presented as Λ(odd) ⊗ Q[even]/(truncations), all in non-positive degree."""

    signature: Signature
    name: str = "M"
    dimension: Optional[int] = None

    def __post_init__(self):
        for g in self.signature.generators:
            if g.factor is not Factor.MANIFOLD:
                raise SignatureError(f"manifold algebra generator {g.name} must be tagged manifold")

    @classmethod
    def build(cls, generators: Iterable[Tuple[str, int, Optional[int]]], name: str = "M",
              dimension: Optional[int] = None) -> "ManifoldAlgebra":
        """Generators as (name, degree, truncation); odd degrees are exterior."""
        specs = []
        for i, (gen_name, degree, truncation) in enumerate(generators):
            kind = GeneratorKind.EXT_ODD if degree % 2 else GeneratorKind.POLY_EVEN
            specs.append(GeneratorSpec(id=i, name=gen_name, kind=kind, degree=degree,
                                       truncation=truncation if kind is GeneratorKind.POLY_EVEN else None,
                                       factor=Factor.MANIFOLD))
        return cls(Signature(tuple(specs)), name=name, dimension=dimension)

    @classmethod
    def point(cls) -> "ManifoldAlgebra":
        return cls(Signature(()), name="pt", dimension=0)

    @classmethod
    def sphere(cls, n: int, generator: str = "d") -> "ManifoldAlgebra":
        truncation = None if n % 2 else 2
        return cls.build([(generator, -n, truncation)], name=f"S{n}", dimension=n)

    @property
    def depth(self) -> int:
        """Largest |degree| of a basis element."""
        total = 0
        for g in self.signature.generators:
            top = 1 if g.kind is GeneratorKind.EXT_ODD else g.truncation - 1
            total += -g.degree * top
        return total

    def basis(self) -> List[Monomial]:
        return self.signature.basis(self.depth)

    def unit(self) -> Element:
        return Element.one(self.signature)

    def multiplication_table(self) -> Dict[Tuple[Monomial, Monomial], Element]:
        basis = self.basis()
        table = {}
        for a in basis:
            for b in basis:
                sign, m = self.signature.multiply_monomials(a, b)
                table[(a, b)] = Element.zero(self.signature) if sign == 0 else Element.monomial(self.signature, m, sign)
        return table


@dataclass(frozen=True)
class ActingClass:
    name: str
    degree: int
    images: Mapping[Monomial, Element] = field(default_factory=dict)


@dataclass(frozen=True)
class ActionTable:
    """Action of named classes of H*(G) on ℍ*(M), one explicit linear map per class."""

    manifold: ManifoldAlgebra
    classes: Mapping[str, ActingClass] = field(default_factory=dict)

    def __post_init__(self):
        sig = self.manifold.signature
        for cls_ in self.classes.values():
            for source, image in cls_.images.items():
                for target in image.terms:
                    if sig.degree(target) != sig.degree(source) + cls_.degree:
                        raise DegreeError(
                            f"class {cls_.name} maps {sig.format_monomial(source)} to "
                            f"{sig.format_monomial(target)}, expected a shift by {cls_.degree}"
                        )

    def degree_of(self, name: str) -> int:
        return self._class(name).degree

    def _class(self, name: str) -> ActingClass:
        if name not in self.classes:
            message = f"action table has no entry for class {name!r}"
            logger.warning(f"⚠️ {message}")
            raise ModelIncompleteError(message)
        return self.classes[name]

    def act(self, name: str, x: Element) -> Element:
        cls_ = self._class(name)
        result = Element.zero(self.manifold.signature)
        for m, c in x.items():
            image = cls_.images.get(m)
            if image is not None:
                result = result + image.scale(c)
        return result

    def act_combination(self, combination: Combination, x: Element) -> Element:
        result = Element.zero(self.manifold.signature)
        for name, coefficient in combination.items():
            if coefficient:
                result = result + self.act(name, x).scale(coefficient)
        return result

    def derivation_failures(self, name: str) -> List[Tuple[Monomial, Monomial]]:
        """Basis pairs where h·(xy) ≠ (h·x)y + (−1)^{|h||x|} x(h·y)."""
        sig = self.manifold.signature
        h = self.degree_of(name)
        basis = self.manifold.basis()
        failures = []
        for a in basis:
            ea = Element.monomial(sig, a)
            for b in basis:
                eb = Element.monomial(sig, b)
                lhs = self.act(name, ea * eb)
                sign = -1 if (h * sig.degree(a)) % 2 else 1
                rhs = self.act(name, ea) * eb + (ea * self.act(name, eb)).scale(sign)
                if lhs != rhs:
                    failures.append((a, b))
        return failures


@dataclass(frozen=True)
class HurewiczTable:
    """hur values of the π₁ basis and of the spherical generators, as class combinations."""

    values: Mapping[str, Combination] = field(default_factory=dict)

    def of_generator(self, name: str) -> Combination:
        if name not in self.values:
            message = f"missing hur entry for generator {name!r}"
            logger.warning(f"⚠️ {message}")
            raise ModelIncompleteError(message)
        return self.values[name]

    def of_group_part(self, signature: Signature, m: Monomial) -> Dict[str, Fraction]:
        """hur(x₁^{n₁}…x_l^{n_l}y) = n₁hur x₁ + … + n_l hur x_l; torsion maps to 0."""
        out: Dict[str, Fraction] = {}
        for i in signature.free_ids:
            n = m.exponents[i]
            if n == 0:
                continue
            for cls_, c in self.of_generator(signature.generators[i].name).items():
                out[cls_] = out.get(cls_, 0) + n * c
        return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True)
class SigmaTable:
    """Explicit values of the homology suspension σ* on loop monomials."""

    signature: Signature
    values: Mapping[Monomial, Combination] = field(default_factory=dict)

    def __post_init__(self):
        one = self.signature.identity()
        if any(self.values.get(one, {}).values()):
            raise SignatureError("σ*(1) must be 0")

    def value(self, m: Monomial) -> Combination:
        if m.is_identity():
            return {}
        if m not in self.values:
            message = f"missing σ* entry for {self.signature.format_monomial(m)}"
            logger.warning(f"⚠️ {message}")
            raise ModelIncompleteError(message)
        return self.values[m]

    @classmethod
    def from_generators(cls, signature: Signature, hurewicz: HurewiczTable, degree_bound: int,
                        group_range: int) -> "SigmaTable":
        """Materialize σ* on a window from σ*(ab) = ε(a)σ*(b) + ε(b)σ*(a).

        Group-likes f go to hur f, f·s with s spherical goes to hur s, and
        everything with two or more spherical factors goes to 0.
        """
        spherical = signature.poly_ids + signature.ext_ids
        values: Dict[Monomial, Combination] = {}
        for m in signature.basis(degree_bound, group_range):
            weight = sum(m.exponents[i] for i in spherical)
            if weight == 0:
                values[m] = hurewicz.of_group_part(signature, m)
            elif weight == 1:
                gen = next(i for i in spherical if m.exponents[i])
                values[m] = dict(hurewicz.of_generator(signature.generators[gen].name))
            else:
                values[m] = {}
        return cls(signature, values)


@dataclass(frozen=True)
class LoopOperatorTable:
    """B_ΩG on loop monomials; unlisted monomials are an error unless default_zero."""

    signature: Signature
    values: Mapping[Monomial, Element] = field(default_factory=dict)
    default_zero: bool = False

    def value(self, m: Monomial) -> Element:
        if m in self.values:
            return self.values[m]
        if self.default_zero or m.is_identity():
            return Element.zero(self.signature)
        message = f"missing B_ΩG entry for {self.signature.format_monomial(m)}"
        logger.warning(f"⚠️ {message}")
        raise ModelIncompleteError(message)


@dataclass(frozen=True)
class SamelsonTable:
    """Samelson bracket on π≥₂(G)⊗Q by generator name."""

    degrees: Mapping[str, int] = field(default_factory=dict)
    values: Mapping[Tuple[str, str], Combination] = field(default_factory=dict)
    identically_zero: bool = False

    @classmethod
    def zero(cls, degrees: Mapping[str, int]) -> "SamelsonTable":
        return cls(degrees=dict(degrees), identically_zero=True)

    def bracket(self, f: str, g: str) -> Dict[str, Fraction]:
        if self.identically_zero:
            return {}
        if (f, g) in self.values:
            return dict(self.values[(f, g)])
        if (g, f) in self.values:
            sign = -1 if (self.degrees[f] * self.degrees[g]) % 2 == 0 else 1
            return {h: sign * c for h, c in self.values[(g, f)].items()}
        message = f"missing Samelson entry for ({f}, {g})"
        logger.warning(f"⚠️ {message}")
        raise ModelIncompleteError(message)
