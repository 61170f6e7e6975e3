"""Applying B, the derived bracket, and exhaustive/sampled identity sweeps.

B is the only stored datum of a model; the bracket is always recomputed as
{a,b} = (−1)^{|a|}(B(ab) − (Ba)b − (−1)^{|a|}a(Bb)).
"""
from __future__ import annotations

import itertools
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.algebra import Element, Monomial, Signature
from core.errors import SignatureError
from core.presentation import ActionTable, HurewiczTable, ManifoldAlgebra, SamelsonTable, SigmaTable, TensorLayout
from models.schemas import Counterexample, IdentityReport, LieGroupData, MonoidData, VerificationWindow
from rules.base_rule import BaseRule
from services.config import get_logger

logger = get_logger("bv_kernel")

Sides = Tuple[Element, Element]


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True, eq=False)
class BVModel:
    name: str
    rule: BaseRule
    layout: Optional[TensorLayout] = None
    manifold: Optional[ManifoldAlgebra] = None
    action: Optional[ActionTable] = None
    hurewicz: Optional[HurewiczTable] = None
    sigma: Optional[SigmaTable] = None
    lie_data: Optional[LieGroupData] = None
    monoid: Optional[MonoidData] = None
    samelson: Optional[SamelsonTable] = None
    factors: Tuple["BVModel", ...] = ()
    _brackets: Dict[Tuple[Monomial, Monomial], Element] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def signature(self) -> Signature:
        return self.rule.signature

    @property
    def tag(self) -> str:
        return self.rule.tag

    def fundamental_class(self) -> Element:
        return Element.one(self.signature)

    def loop_element(self, a: Element) -> Element:
        """a⊗[M]."""
        if self.layout is None:
            raise SignatureError(f"model {self.name} has no loop/manifold splitting")
        return self.layout.lift_left(a)

    def manifold_element(self, x: Element) -> Element:
        """1⊗x."""
        if self.layout is None:
            raise SignatureError(f"model {self.name} has no loop/manifold splitting")
        return self.layout.lift_right(x)

    def window_basis(self, window: VerificationWindow) -> List[Monomial]:
        return self.signature.basis(window.degree, window.group_range)


def apply_B(model: BVModel, a: Element) -> Element:
    return model.rule.apply(a)


def _bracket_monomials(model: BVModel, x: Monomial, y: Monomial) -> Element:
    key = (x, y)
    cached = model._brackets.get(key)
    if cached is not None:
        return cached
    sig = model.signature
    B = model.rule.apply_monomial
    ex, ey = Element.monomial(sig, x), Element.monomial(sig, y)
    s = _sign(sig.degree(x))
    deviation = model.rule.apply(ex * ey) - B(x) * ey - (ex * B(y)).scale(s)
    result = deviation.scale(s)
    with model._lock:
        return model._brackets.setdefault(key, result)


def bracket(model: BVModel, a: Element, b: Element) -> Element:
    if a.signature != model.signature or b.signature != model.signature:
        raise SignatureError(f"bracket arguments do not belong to model {model.name}")
    out: Dict[Monomial, Fraction] = {}
    for x, cx in a.items():
        for y, cy in b.items():
            for m, v in _bracket_monomials(model, x, y).items():
                out[m] = out.get(m, 0) + cx * cy * v
    return Element.from_terms(model.signature, out)


# ----------------------------------------------------------------------------
# Identities, each returning (lhs, rhs)
# ----------------------------------------------------------------------------

def _deg(model: BVModel, a: Element) -> int:
    d = a.homogeneous_degree()
    return 0 if d is None else d


def b_degree_sides(model: BVModel, a: Element) -> Sides:
    """Terms of B(a) off degree |a|+1, against zero."""
    target = _deg(model, a) + 1
    image = apply_B(model, a)
    stray = {m: c for m, c in image.items() if model.signature.degree(m) != target}
    return Element.from_terms(model.signature, stray), Element.zero(model.signature)


def b_squared_sides(model: BVModel, a: Element) -> Sides:
    return apply_B(model, apply_B(model, a)), Element.zero(model.signature)


def b_unit_sides(model: BVModel) -> Sides:
    return apply_B(model, model.fundamental_class()), Element.zero(model.signature)


def seven_term_sides(model: BVModel, a: Element, b: Element, c: Element) -> Sides:
    da, db = _deg(model, a), _deg(model, b)
    B = lambda e: apply_B(model, e)  # noqa: E731
    lhs = B(a * b * c)
    rhs = (
        B(a * b) * c
        + (a * B(b * c)).scale(_sign(da))
        + (b * B(a * c)).scale(_sign((da - 1) * db))
        - B(a) * b * c
        - (a * B(b) * c).scale(_sign(da))
        - (a * b * B(c)).scale(_sign(da + db))
    )
    return lhs, rhs


def poisson_sides(model: BVModel, a: Element, b: Element, c: Element) -> Sides:
    da, db = _deg(model, a), _deg(model, b)
    lhs = bracket(model, a, b * c)
    rhs = bracket(model, a, b) * c + (b * bracket(model, a, c)).scale(_sign((da - 1) * db))
    return lhs, rhs


def poisson_rewritten_sides(model: BVModel, a: Element, b: Element, c: Element) -> Sides:
    """{bc,a} = b{c,a} + (−1)^{|b||c|}c{b,a}."""
    db, dc = _deg(model, b), _deg(model, c)
    lhs = bracket(model, b * c, a)
    rhs = b * bracket(model, c, a) + (c * bracket(model, b, a)).scale(_sign(db * dc))
    return lhs, rhs


def antisymmetry_sides(model: BVModel, a: Element, b: Element) -> Sides:
    da, db = _deg(model, a), _deg(model, b)
    return bracket(model, a, b), bracket(model, b, a).scale(-_sign((da + 1) * (db + 1)))


def jacobi_sides(model: BVModel, a: Element, b: Element, c: Element) -> Sides:
    da, db = _deg(model, a), _deg(model, b)
    lhs = bracket(model, a, bracket(model, b, c))
    rhs = bracket(model, bracket(model, a, b), c) + bracket(model, b, bracket(model, a, c)).scale(
        _sign((da + 1) * (db + 1))
    )
    return lhs, rhs


def commutativity_sides(model: BVModel, a: Element, b: Element) -> Sides:
    return a * b, (b * a).scale(_sign(_deg(model, a) * _deg(model, b)))


def associativity_sides(model: BVModel, a: Element, b: Element, c: Element) -> Sides:
    return (a * b) * c, a * (b * c)


def check_bv7(model: BVModel, a: Element, b: Element, c: Element) -> bool:
    lhs, rhs = seven_term_sides(model, a, b, c)
    return lhs == rhs


def check_poisson(model: BVModel, a: Element, b: Element, c: Element) -> bool:
    lhs, rhs = poisson_sides(model, a, b, c)
    if lhs != rhs:
        return False
    lhs, rhs = poisson_rewritten_sides(model, a, b, c)
    return lhs == rhs


def check_jacobi_antisym(model: BVModel, a: Element, b: Element, c: Element) -> bool:
    for pair in ((a, b), (b, c), (a, c)):
        lhs, rhs = antisymmetry_sides(model, *pair)
        if lhs != rhs:
            return False
    lhs, rhs = jacobi_sides(model, a, b, c)
    return lhs == rhs


# ----------------------------------------------------------------------------
# Sweeps
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    arity: int
    sides: Callable[..., Sides]


AXIOM_CHECKS: Tuple[IdentityCheck, ...] = (
    IdentityCheck("b_degree", 1, b_degree_sides),
    IdentityCheck("b_squared", 1, b_squared_sides),
    IdentityCheck("graded_commutativity", 2, commutativity_sides),
    IdentityCheck("associativity", 3, associativity_sides),
    IdentityCheck("seven_term", 3, seven_term_sides),
    IdentityCheck("poisson", 3, poisson_sides),
    IdentityCheck("poisson_rewritten", 3, poisson_rewritten_sides),
    IdentityCheck("antisymmetry", 2, antisymmetry_sides),
    IdentityCheck("jacobi", 3, jacobi_sides),
)


def window_tuples(signature: Signature, basis: Sequence[Monomial], arity: int, window: VerificationWindow,
                  stream: str) -> Tuple[List[Tuple[Monomial, ...]], bool]:
    """Tuples of basis monomials with |total degree| <= D; sampled when the grid is too large."""
    degrees = [signature.degree(m) for m in basis]

    def admissible(idx: Tuple[int, ...]) -> bool:
        return abs(sum(degrees[i] for i in idx)) <= window.degree

    if len(basis) ** arity <= window.max_cases:
        grid = itertools.product(range(len(basis)), repeat=arity)
        return [tuple(basis[i] for i in idx) for idx in grid if admissible(idx)], False
    rng = random.Random(f"{window.seed}:{stream}")
    picked: List[Tuple[Monomial, ...]] = []
    for _ in range(window.max_cases * 20):
        if len(picked) >= window.max_cases:
            break
        idx = tuple(rng.randrange(len(basis)) for _ in range(arity))
        if admissible(idx):
            picked.append(tuple(basis[i] for i in idx))
    return picked, True


def run_sides_sweep(model: BVModel, name: str, sides: Callable[..., Sides],
                    cases: Sequence[Tuple[Monomial, ...]], sampled: bool = False) -> IdentityReport:
    sig = model.signature
    report = IdentityReport(name=name, sampled=sampled)
    for case in cases:
        args = [Element.monomial(sig, m) for m in case]
        lhs, rhs = sides(model, *args)
        report.checked += 1
        if lhs == rhs:
            report.passed += 1
            continue
        report.failed += 1
        if report.counterexample is None:
            report.counterexample = Counterexample(
                inputs=[sig.format_monomial(m) for m in case], lhs=str(lhs), rhs=str(rhs)
            )
    marker = "✅" if report.ok else "❌"
    logger.info(f"{marker} {model.name} {name}: {report.passed}/{report.checked}")
    return report


def run_check(model: BVModel, check: IdentityCheck, window: VerificationWindow,
              basis: Optional[Sequence[Monomial]] = None) -> IdentityReport:
    basis = model.window_basis(window) if basis is None else basis
    cases, sampled = window_tuples(model.signature, basis, check.arity, window, f"{model.name}:{check.name}")
    return run_sides_sweep(model, check.name, check.sides, cases, sampled)


def run_axiom_suite(model: BVModel, window: VerificationWindow,
                    checks: Sequence[IdentityCheck] = AXIOM_CHECKS) -> List[IdentityReport]:
    basis = model.window_basis(window)
    logger.info(f"Sweeping {model.name} ({model.tag}) on {len(basis)} basis monomials, D={window.degree}")
    reports = [run_sides_sweep(model, "b_unit", lambda m: b_unit_sides(m), [()])]
    reports.extend(run_check(model, check, window, basis) for check in checks)
    return reports
