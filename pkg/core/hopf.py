"""Diagonal and counit of the loop factor H*(ΩG).

Group-ring monomials (free and torsion) are group-like, every loop
generator of positive degree is primitive, and Δ is extended as an algebra
map into the Koszul-signed tensor square.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, Mapping, Tuple

from core.algebra import Element, Monomial, Rational, Signature
from core.errors import DomainError, SignatureError

Pair = Tuple[Monomial, Monomial]
Triple = Tuple[Monomial, Monomial, Monomial]


@dataclass(frozen=True, eq=False)
class TensorSquareElement:
    signature: Signature
    terms: Mapping[Pair, Fraction] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, signature: Signature, terms: Mapping[Pair, Rational]) -> "TensorSquareElement":
        return cls(signature, {k: Fraction(c) for k, c in terms.items() if c != 0})

    @classmethod
    def unit(cls, signature: Signature) -> "TensorSquareElement":
        one = signature.identity()
        return cls(signature, {(one, one): Fraction(1)})

    @classmethod
    def tensor(cls, a: Element, b: Element) -> "TensorSquareElement":
        """a⊗b for two elements of the same signature."""
        out = {(ma, mb): ca * cb for ma, ca in a.items() for mb, cb in b.items()}
        return cls.from_terms(a.signature, out)

    def items(self) -> Iterator[Tuple[Pair, Fraction]]:
        return iter(self.terms.items())

    def __add__(self, other: "TensorSquareElement") -> "TensorSquareElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorSquareElement.from_terms(self.signature, out)

    def __mul__(self, other: "TensorSquareElement") -> "TensorSquareElement":
        """(a₁⊗a₂)(b₁⊗b₂) = (−1)^{|a₂||b₁|} a₁b₁⊗a₂b₂."""
        sig = self.signature
        out: Dict[Pair, Fraction] = {}
        for (a1, a2), ca in self.terms.items():
            deg_a2 = sig.degree(a2)
            for (b1, b2), cb in other.terms.items():
                s1, left = sig.multiply_monomials(a1, b1)
                if s1 == 0:
                    continue
                s2, right = sig.multiply_monomials(a2, b2)
                if s2 == 0:
                    continue
                koszul = -1 if (deg_a2 * sig.degree(b1)) % 2 else 1
                key = (left, right)
                out[key] = out.get(key, 0) + s1 * s2 * koszul * ca * cb
        return TensorSquareElement.from_terms(sig, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorSquareElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        sig = self.signature
        ordered = sorted(self.terms.items(), key=lambda t: (t[0][0].exponents, t[0][1].exponents))
        return " + ".join(
            f"{c}*({sig.format_monomial(a)} ⊗ {sig.format_monomial(b)})" for (a, b), c in ordered
        )

    __repr__ = __str__


@dataclass(frozen=True)
class HopfStructure:
    """Hopf structure of the loop factor of a signature."""

    signature: Signature

    def _check_loop(self, m: Monomial):
        for i in self.signature.manifold_ids:
            if m.exponents[i]:
                name = self.signature.generators[i].name
                raise DomainError(f"coproduct is only defined on the loop factor, found {name}")

    def coproduct_monomial(self, m: Monomial) -> TensorSquareElement:
        sig = self.signature
        self._check_loop(m)
        group = [0] * len(sig)
        for i in sig.free_ids + sig.torsion_ids:
            group[i] = m.exponents[i]
        g = Monomial(tuple(group))
        result = TensorSquareElement(sig, {(g, g): Fraction(1)})
        for i in sig.poly_ids:
            n = m.exponents[i]
            if n == 0:
                continue
            power: Dict[Pair, Fraction] = {}
            for k in range(n + 1):
                left = [0] * len(sig)
                right = [0] * len(sig)
                left[i], right[i] = k, n - k
                power[(Monomial(tuple(left)), Monomial(tuple(right)))] = Fraction(comb(n, k))
            result = result * TensorSquareElement(sig, power)
        one = sig.identity()
        for i in sig.ext_ids:
            if m.exponents[i] == 0:
                continue
            exps = [0] * len(sig)
            exps[i] = 1
            gen = Monomial(tuple(exps))
            result = result * TensorSquareElement(sig, {(gen, one): Fraction(1), (one, gen): Fraction(1)})
        return result

    def coproduct(self, a: Element) -> TensorSquareElement:
        if a.signature != self.signature:
            raise SignatureError("element does not belong to this Hopf structure")
        out: Dict[Pair, Fraction] = {}
        for m, c in a.items():
            for key, v in self.coproduct_monomial(m).items():
                out[key] = out.get(key, 0) + c * v
        return TensorSquareElement.from_terms(self.signature, out)

    def counit(self, a: Element) -> Fraction:
        total = Fraction(0)
        for m, c in a.items():
            self._check_loop(m)
            if self.signature.is_group_only(m):
                total += c
        return total

    def is_primitive(self, a: Element) -> bool:
        a.homogeneous_degree()
        one = Element.one(self.signature)
        expected = TensorSquareElement.tensor(a, one) + TensorSquareElement.tensor(one, a)
        return self.coproduct(a) == expected

    def is_group_like(self, a: Element) -> bool:
        return self.coproduct(a) == TensorSquareElement.tensor(a, a) and self.counit(a) == 1

    def left_iterate(self, a: Element) -> Dict[Triple, Fraction]:
        """(Δ⊗id)Δ a."""
        out: Dict[Triple, Fraction] = {}
        for (a1, a2), c in self.coproduct(a).items():
            for (b1, b2), d in self.coproduct_monomial(a1).items():
                key = (b1, b2, a2)
                out[key] = out.get(key, 0) + c * d
        return {k: v for k, v in out.items() if v != 0}

    def right_iterate(self, a: Element) -> Dict[Triple, Fraction]:
        """(id⊗Δ)Δ a."""
        out: Dict[Triple, Fraction] = {}
        for (a1, a2), c in self.coproduct(a).items():
            for (b1, b2), d in self.coproduct_monomial(a2).items():
                key = (a1, b1, b2)
                out[key] = out.get(key, 0) + c * d
        return {k: v for k, v in out.items() if v != 0}

    def counit_left(self, a: Element) -> Element:
        """(ε⊗id)Δ a."""
        out: Dict[Monomial, Fraction] = {}
        for (a1, a2), c in self.coproduct(a).items():
            if self.signature.is_group_only(a1):
                out[a2] = out.get(a2, 0) + c
        return Element.from_terms(self.signature, out)

    def counit_right(self, a: Element) -> Element:
        """(id⊗ε)Δ a."""
        out: Dict[Monomial, Fraction] = {}
        for (a1, a2), c in self.coproduct(a).items():
            if self.signature.is_group_only(a2):
                out[a1] = out.get(a1, 0) + c
        return Element.from_terms(self.signature, out)


def coproduct(hopf: HopfStructure, a: Element) -> TensorSquareElement:
    return hopf.coproduct(a)


def counit(hopf: HopfStructure, a: Element) -> Fraction:
    return hopf.counit(a)


def is_primitive(hopf: HopfStructure, a: Element) -> bool:
    return hopf.is_primitive(a)
