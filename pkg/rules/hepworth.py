from typing import Optional

from core.algebra import Element, Monomial
from core.hopf import HopfStructure
from core.presentation import ActionTable, LoopOperatorTable, SigmaTable, TensorLayout
from rules.base_rule import BaseRule


def hepworth_B(hopf: HopfStructure, sigma: SigmaTable, action: ActionTable,
               loop_operator: Optional[LoopOperatorTable], layout: TensorLayout, m: Monomial) -> Element:
    """B(a⊗x) = (B_ΩG a)⊗x + Σ (−1)^{|a₍₁₎|} a₍₁₎⊗(σ*(a₍₂₎)·x), σ* looked up, never extrapolated."""
    loop_sig = layout.left
    loop, point = layout.split(m)
    x = Element.monomial(layout.right, point)
    result = Element.zero(layout.signature)
    if loop_operator is not None:
        result = layout.join_elements(loop_operator.value(loop), x)
    for (a1, a2), c in hopf.coproduct_monomial(loop).items():
        value = sigma.value(a2)
        if not value:
            continue
        sign = -1 if loop_sig.degree(a1) % 2 else 1
        image = action.act_combination(value, x)
        result = result + layout.join_elements(Element.monomial(loop_sig, a1, sign * c), image)
    return result


class HepworthRule(BaseRule):
    def __init__(self, layout: TensorLayout, sigma: SigmaTable, action: ActionTable,
                 loop_operator: Optional[LoopOperatorTable] = None):
        super().__init__("hepworth-generic", layout.signature)
        self.layout = layout
        self.hopf = HopfStructure(layout.left)
        self.sigma = sigma
        self.action = action
        self.loop_table = loop_operator

    def loop_operator(self, m: Monomial) -> Element:
        if self.loop_table is None:
            return Element.zero(self.signature)
        loop, _ = self.layout.split(m)
        return self.layout.lift_left(self.loop_table.value(loop))

    def compute(self, m: Monomial) -> Element:
        return hepworth_B(self.hopf, self.sigma, self.action, self.loop_table, self.layout, m)
