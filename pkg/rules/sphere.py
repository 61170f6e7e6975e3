from core.algebra import Element, Monomial
from core.errors import ModelIncompleteError
from core.presentation import ActionTable, TensorLayout
from rules.base_rule import BaseRule

SPHERE_CLASSES = {"S1": ("S1", 1), "S3": ("S3", 3)}


class SphereRule(BaseRule):
    """B(x^i⊗m) = i·x^i⊗([S¹]·m) and B(u₂^i⊗m) = i·u₂^{i−1}⊗([S³]·m)."""

    def __init__(self, which: str, layout: TensorLayout, action: ActionTable):
        super().__init__(f"sphere-{which}", layout.signature)
        if which not in SPHERE_CLASSES:
            raise ModelIncompleteError(f"unknown sphere {which!r}, expected one of {sorted(SPHERE_CLASSES)}")
        self.which = which
        self.layout = layout
        self.action = action
        self.class_name, degree = SPHERE_CLASSES[which]
        if action.degree_of(self.class_name) != degree:
            raise ModelIncompleteError(f"[{self.class_name}] must act with degree {degree}")

    def compute(self, m: Monomial) -> Element:
        loop, point = self.layout.split(m)
        i = loop.exponents[0]
        if i == 0:
            return Element.zero(self.signature)
        x = Element.monomial(self.layout.right, point)
        image = self.action.act(self.class_name, x)
        if self.which == "S3":
            loop = Monomial((i - 1,) + loop.exponents[1:])
        return self.layout.join_elements(Element.monomial(self.layout.left, loop, i), image)
