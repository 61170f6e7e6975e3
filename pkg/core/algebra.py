"""Exact graded-commutative arithmetic on Q[π₁] ⊗ Λ_poly(even) ⊗ Λ_ext(odd).

A monomial is stored as a dense exponent vector indexed by generator id.
Generator ids are also the canonical order: group part, poly part and ext
part are all read off in increasing id, so the only sign ever produced while
normalizing is the Koszul sign of sorting the odd (ext) factors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from core.errors import DegreeError, SignatureError

Rational = Union[int, Fraction]


class GeneratorKind(str, Enum):
    GROUP_FREE = "group-free"
    GROUP_TORSION = "group-torsion"
    POLY_EVEN = "poly-even"
    EXT_ODD = "ext-odd"


class Factor(str, Enum):
    LOOP = "loop"
    MANIFOLD = "manifold"


@dataclass(frozen=True)
class GeneratorSpec:
    id: int
    name: str
    kind: GeneratorKind
    degree: int = 0
    torsion_order: Optional[int] = None
    truncation: Optional[int] = None
    factor: Factor = Factor.LOOP

    def __post_init__(self):
        kind = self.kind
        if kind in (GeneratorKind.GROUP_FREE, GeneratorKind.GROUP_TORSION):
            if self.degree != 0:
                raise SignatureError(f"group generator {self.name} must have degree 0, got {self.degree}")
            if self.factor is not Factor.LOOP:
                raise SignatureError(f"group generator {self.name} must live in the loop factor")
        if kind is GeneratorKind.GROUP_TORSION:
            if self.torsion_order is None or self.torsion_order < 2:
                raise SignatureError(f"torsion generator {self.name} needs torsion_order >= 2")
        elif self.torsion_order is not None:
            raise SignatureError(f"torsion_order given for non-torsion generator {self.name}")
        if kind is GeneratorKind.POLY_EVEN:
            if self.degree % 2 != 0 or self.degree == 0:
                raise SignatureError(f"poly-even generator {self.name} needs a nonzero even degree")
            if self.factor is Factor.LOOP and self.degree < 0:
                raise SignatureError(f"loop poly generator {self.name} must have positive degree")
            if self.factor is Factor.MANIFOLD:
                if self.degree > 0:
                    raise SignatureError(f"manifold generator {self.name} must have non-positive degree")
                if self.truncation is None:
                    raise SignatureError(f"manifold poly generator {self.name} needs a truncation height")
        if self.truncation is not None:
            if kind is not GeneratorKind.POLY_EVEN or self.truncation < 2:
                raise SignatureError(f"truncation on {self.name} must be >= 2 and only on poly-even generators")
        if kind is GeneratorKind.EXT_ODD:
            if self.degree % 2 == 0:
                raise SignatureError(f"ext-odd generator {self.name} needs an odd degree, got {self.degree}")
            if self.factor is Factor.MANIFOLD and self.degree > 0:
                raise SignatureError(f"manifold generator {self.name} must have non-positive degree")

    @property
    def is_group(self) -> bool:
        return self.kind in (GeneratorKind.GROUP_FREE, GeneratorKind.GROUP_TORSION)


@dataclass(frozen=True, slots=True)
class Monomial:
    exponents: Tuple[int, ...]

    @classmethod
    def identity(cls, size: int) -> "Monomial":
        return cls((0,) * size)

    def is_identity(self) -> bool:
        return not any(self.exponents)


@dataclass(frozen=True)
class Signature:
    """Ordered generator list of one graded algebra."""

    generators: Tuple[GeneratorSpec, ...]

    def __post_init__(self):
        names = set()
        for position, gen in enumerate(self.generators):
            if gen.id != position:
                raise SignatureError(f"generator ids must be 0..n-1 in order, {gen.name} has id {gen.id}")
            if gen.name in names:
                raise SignatureError(f"duplicate generator name {gen.name}")
            names.add(gen.name)

    @classmethod
    def build(cls, specs: Iterable[dict]) -> "Signature":
        """Number the given generator descriptions consecutively."""
        return cls(tuple(GeneratorSpec(id=i, **spec) for i, spec in enumerate(specs)))

    def __len__(self) -> int:
        return len(self.generators)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @cached_property
    def _by_name(self) -> Dict[str, GeneratorSpec]:
        return {g.name: g for g in self.generators}

    def _ids(self, kind: GeneratorKind) -> Tuple[int, ...]:
        return tuple(g.id for g in self.generators if g.kind is kind)

    @cached_property
    def free_ids(self) -> Tuple[int, ...]:
        return self._ids(GeneratorKind.GROUP_FREE)

    @cached_property
    def torsion_ids(self) -> Tuple[int, ...]:
        return self._ids(GeneratorKind.GROUP_TORSION)

    @cached_property
    def poly_ids(self) -> Tuple[int, ...]:
        return self._ids(GeneratorKind.POLY_EVEN)

    @cached_property
    def ext_ids(self) -> Tuple[int, ...]:
        return self._ids(GeneratorKind.EXT_ODD)

    @cached_property
    def loop_ids(self) -> Tuple[int, ...]:
        return tuple(g.id for g in self.generators if g.factor is Factor.LOOP)

    @cached_property
    def manifold_ids(self) -> Tuple[int, ...]:
        return tuple(g.id for g in self.generators if g.factor is Factor.MANIFOLD)

    def generator(self, key: Union[int, str]) -> GeneratorSpec:
        if isinstance(key, str):
            if key not in self._by_name:
                raise SignatureError(f"unknown generator {key!r}")
            return self._by_name[key]
        if not 0 <= key < len(self.generators):
            raise SignatureError(f"unknown generator id {key}")
        return self.generators[key]

    def identity(self) -> Monomial:
        return Monomial.identity(len(self.generators))

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m.exponents, self.degrees) if e)

    # Views of a monomial in the (free, torsion, poly, ext) layout.
    def free_exponents(self, m: Monomial) -> Tuple[int, ...]:
        return tuple(m.exponents[i] for i in self.free_ids)

    def torsion_element(self, m: Monomial) -> Tuple[int, ...]:
        return tuple(m.exponents[i] for i in self.torsion_ids)

    def poly_exponents(self, m: Monomial) -> Tuple[int, ...]:
        return tuple(m.exponents[i] for i in self.poly_ids)

    def ext_indices(self, m: Monomial) -> Tuple[int, ...]:
        return tuple(i for i in self.ext_ids if m.exponents[i])

    def is_group_only(self, m: Monomial) -> bool:
        return all(m.exponents[i] == 0 for i in self.poly_ids + self.ext_ids)

    def is_loop_only(self, m: Monomial) -> bool:
        return all(m.exponents[i] == 0 for i in self.manifold_ids)

    def is_manifold_only(self, m: Monomial) -> bool:
        return all(m.exponents[i] == 0 for i in self.loop_ids)

    def multiply_monomials(self, a: Monomial, b: Monomial) -> Tuple[int, Optional[Monomial]]:
        """Return (sign, a·b); sign 0 means the product vanishes."""
        x, y = a.exponents, b.exponents
        out = [i + j for i, j in zip(x, y)]
        for i in self.torsion_ids:
            out[i] %= self.generators[i].torsion_order
        for i in self.poly_ids:
            trunc = self.generators[i].truncation
            if trunc is not None and out[i] >= trunc:
                return 0, None
        left_total = sum(x[i] for i in self.ext_ids)
        left_seen = 0
        inversions = 0
        for i in self.ext_ids:
            if x[i]:
                if y[i]:
                    return 0, None
                left_seen += 1
            elif y[i]:
                inversions += left_total - left_seen
        return (-1 if inversions % 2 else 1), Monomial(tuple(out))

    def word(self, m: Monomial) -> List[Tuple[int, int]]:
        """The (generator id, exponent) word whose normal form is m."""
        return [(i, e) for i, e in enumerate(m.exponents) if e]

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m.exponents):
            if e == 0:
                continue
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def _exponent_options(self, gen: GeneratorSpec, group_range: int) -> Optional[range]:
        if gen.kind is GeneratorKind.GROUP_FREE:
            return range(-group_range, group_range + 1)
        if gen.kind is GeneratorKind.GROUP_TORSION:
            return range(gen.torsion_order)
        if gen.kind is GeneratorKind.EXT_ODD:
            return range(2)
        if gen.truncation is not None:
            return range(gen.truncation)
        return None

    def basis(self, degree_bound: int, group_range: int = 0) -> List[Monomial]:
        """All basis monomials with |degree| <= degree_bound and |free exponent| <= group_range."""
        gens = self.generators
        n = len(gens)
        suffix_min = [0] * (n + 1)
        suffix_max: List[Optional[int]] = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            gen = gens[i]
            options = self._exponent_options(gen, group_range)
            if options is None:
                low, high = 0, None
            else:
                contributions = [options[0] * gen.degree, options[-1] * gen.degree]
                low, high = min(contributions), max(contributions)
            suffix_min[i] = suffix_min[i + 1] + low
            nxt = suffix_max[i + 1]
            suffix_max[i] = None if high is None or nxt is None else nxt + high

        found: List[Monomial] = []

        def walk(i: int, partial: int, exps: List[int]):
            if partial + suffix_min[i] > degree_bound:
                return
            if suffix_max[i] is not None and partial + suffix_max[i] < -degree_bound:
                return
            if i == n:
                found.append(Monomial(tuple(exps)))
                return
            gen = gens[i]
            options = self._exponent_options(gen, group_range)
            if options is None:
                e = 0
                while partial + e * gen.degree + suffix_min[i + 1] <= degree_bound:
                    exps.append(e)
                    walk(i + 1, partial + e * gen.degree, exps)
                    exps.pop()
                    e += 1
                return
            for e in options:
                exps.append(e)
                walk(i + 1, partial + e * gen.degree, exps)
                exps.pop()

        walk(0, 0, [])
        found.sort(key=lambda m: (self.degree(m), m.exponents))
        return found


def degree(signature: Signature, m: Monomial) -> int:
    return signature.degree(m)


@dataclass(frozen=True, eq=False)
class Element:
    """Finite rational combination of monomials of one signature."""

    signature: Signature
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, signature: Signature, terms: Mapping[Monomial, Rational]) -> "Element":
        clean = {m: Fraction(c) for m, c in terms.items() if c != 0}
        return cls(signature, clean)

    @classmethod
    def zero(cls, signature: Signature) -> "Element":
        return cls(signature, {})

    @classmethod
    def one(cls, signature: Signature) -> "Element":
        return cls(signature, {signature.identity(): Fraction(1)})

    @classmethod
    def monomial(cls, signature: Signature, m: Monomial, coefficient: Rational = 1) -> "Element":
        return cls.from_terms(signature, {m: coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self.terms.items())

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def _check(self, other: "Element"):
        if other.signature is not self.signature and other.signature != self.signature:
            raise SignatureError("elements belong to different signatures")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element.from_terms(self.signature, out)

    def __neg__(self) -> "Element":
        return Element(self.signature, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, factor: Rational) -> "Element":
        if factor == 0:
            return Element.zero(self.signature)
        return Element(self.signature, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element):
            return NotImplemented
        return self.signature == other.signature and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all terms, None for zero; mixed elements raise DegreeError."""
        degrees = {self.signature.degree(m) for m in self.terms}
        if len(degrees) > 1:
            raise DegreeError(f"element {self} mixes degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def homogeneous_components(self) -> Dict[int, "Element"]:
        parts: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.signature.degree(m), {})[m] = c
        return {d: Element(self.signature, t) for d, t in sorted(parts.items())}

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (self.signature.degree(t[0]), t[0].exponents))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            body = self.signature.format_monomial(m)
            magnitude = abs(c)
            if body == "1":
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            pieces.append(("-" if c < 0 else "+", text))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    __repr__ = __str__


def normalize(signature: Signature, word: Sequence[Tuple[Union[int, str], int]], coefficient: Rational = 1) -> Element:
    """Canonical element of coefficient·Π gen^exp, factors taken in the given order."""
    current = signature.identity()
    sign = 1
    for key, exponent in word:
        gen = signature.generator(key)
        exps = [0] * len(signature)
        if gen.kind is GeneratorKind.EXT_ODD:
            if exponent < 0:
                raise SignatureError(f"negative exponent on odd generator {gen.name}")
            if exponent > 1:
                return Element.zero(signature)
        elif gen.kind is GeneratorKind.POLY_EVEN and exponent < 0:
            raise SignatureError(f"negative exponent on polynomial generator {gen.name}")
        if exponent == 0:
            continue
        exps[gen.id] = exponent
        if gen.kind is GeneratorKind.GROUP_TORSION:
            exps[gen.id] %= gen.torsion_order
        if gen.kind is GeneratorKind.POLY_EVEN and gen.truncation is not None and exponent >= gen.truncation:
            return Element.zero(signature)
        s, current = signature.multiply_monomials(current, Monomial(tuple(exps)))
        if s == 0:
            return Element.zero(signature)
        sign *= s
    return Element.monomial(signature, current, sign * Fraction(coefficient))


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    signature = a.signature
    out: Dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = signature.multiply_monomials(ma, mb)
            if sign == 0:
                continue
            out[m] = out.get(m, 0) + sign * ca * cb
    return Element.from_terms(signature, out)


def product_of(elements: Iterable[Element], signature: Signature) -> Element:
    result = Element.one(signature)
    for e in elements:
        result = multiply(result, e)
    return result
