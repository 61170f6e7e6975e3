from core.algebra import Element, Monomial
from core.presentation import TensorLayout
from rules.base_rule import BaseRule


class TensorRule(BaseRule):
    """B(x⊗y) = B_A x⊗y + (−1)^{|x|} x⊗B_{A'} y."""

    def __init__(self, layout: TensorLayout, left: BaseRule, right: BaseRule):
        super().__init__("tensor-of-models", layout.signature)
        self.layout = layout
        self.left = left
        self.right = right

    def _combine(self, m: Monomial, left_image: Element, right_image: Element) -> Element:
        x, y = self.layout.split(m)
        ex = Element.monomial(self.layout.left, x)
        ey = Element.monomial(self.layout.right, y)
        sign = -1 if self.layout.left.degree(x) % 2 else 1
        return self.layout.join_elements(left_image, ey) + self.layout.join_elements(ex, right_image).scale(sign)

    def compute(self, m: Monomial) -> Element:
        x, y = self.layout.split(m)
        return self._combine(m, self.left.apply_monomial(x), self.right.apply_monomial(y))

    def loop_operator(self, m: Monomial) -> Element:
        x, y = self.layout.split(m)
        return self._combine(m, self.left.loop_operator(x), self.right.loop_operator(y))
