from typing import List, Optional

from core.algebra import Element, Monomial
from core.presentation import ActionTable, HurewiczTable, LoopOperatorTable, TensorLayout
from rules.base_rule import BaseRule


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class RationalActionRule(BaseRule):
    """B on H*(ΩG;Q) ⊗ ℍ*(M) for a group ring tensored with Λ(s⁻¹π≥₂).

    B(f s⁻¹f₁…s⁻¹f_r ⊗ x) = B_ΩG(…)⊗x + (−1)^{|f₁|+…+|f_r|+r} (f s⁻¹f₁…s⁻¹f_r ⊗ hur f·x
        + Σ_i (−1)^{(|f_i|+1)(|f_{i+1}|+…+|f_r|+r−i+1)} f s⁻¹f₁…ŝ⁻¹f_i…s⁻¹f_r ⊗ hur f_i·x)
    """

    def __init__(self, layout: TensorLayout, hurewicz: HurewiczTable, action: ActionTable,
                 loop_operator: Optional[LoopOperatorTable] = None):
        super().__init__("rational-general", layout.signature)
        self.layout = layout
        self.hurewicz = hurewicz
        self.action = action
        self.loop_table = loop_operator
        loop = layout.left
        self._spherical = sorted(loop.poly_ids + loop.ext_ids)
        for i in self._spherical:
            self.hurewicz.of_generator(loop.generators[i].name)
        for i in loop.free_ids:
            self.hurewicz.of_generator(loop.generators[i].name)

    def _factors(self, loop: Monomial) -> List[int]:
        word: List[int] = []
        for i in self._spherical:
            word.extend([i] * loop.exponents[i])
        return word

    def loop_operator(self, m: Monomial) -> Element:
        if self.loop_table is None:
            return Element.zero(self.signature)
        loop, _ = self.layout.split(m)
        return self.layout.lift_left(self.loop_table.value(loop))

    def compute(self, m: Monomial) -> Element:
        loop_sig = self.layout.left
        loop, point = self.layout.split(m)
        x = Element.monomial(self.layout.right, point)
        result = Element.zero(self.signature)
        if self.loop_table is not None:
            result = self.layout.join_elements(self.loop_table.value(loop), x)

        factors = self._factors(loop)
        r = len(factors)
        f_degrees = [loop_sig.generators[g].degree + 1 for g in factors]

        group_class = self.hurewicz.of_group_part(loop_sig, loop)
        correction = self.layout.join_elements(
            Element.monomial(loop_sig, loop), self.action.act_combination(group_class, x)
        )
        for i in range(1, r + 1):
            g = factors[i - 1]
            tail = sum(f_degrees[i:])
            sign = _sign((f_degrees[i - 1] + 1) * (tail + r - i + 1))
            exps = list(loop.exponents)
            exps[g] -= 1
            reduced = Element.monomial(loop_sig, Monomial(tuple(exps)), sign)
            image = self.action.act_combination(self.hurewicz.of_generator(loop_sig.generators[g].name), x)
            correction = correction + self.layout.join_elements(reduced, image)
        return result + correction.scale(_sign(sum(f_degrees) + r))
