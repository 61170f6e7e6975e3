from typing import Dict, List, NamedTuple, Optional, Tuple

from core.algebra import Element, Monomial, Signature
from models.schemas import LieGroupData
from rules.base_rule import BaseRule


class SignMutation(NamedTuple):
    """Flip the printed (−1)^{i−1} at one position of one of the two sums."""

    sum: str
    position: int


class LieGroupRule(BaseRule):
    """Closed-form B on Q[π₁G] ⊗ Λ(s⁻¹x_j)_{l<j≤r} ⊗ Λ(x_i^∨)_{1≤i≤r}.

    For ext positions i with index j_i the term is (−1)^{i−1} n_{j_i} times the
    monomial with x_{j_i}^∨ omitted, and for j_i > l the exponent of s⁻¹x_{j_i}
    is also lowered by one.
    """

    def __init__(self, signature: Signature, data: LieGroupData, mutation: Optional[SignMutation] = None):
        super().__init__("lie-group", signature)
        self.data = data
        self.mutation = mutation
        l, r = data.free_rank, data.rank
        self._free: Dict[int, int] = {j: signature.generator(f"x{j}").id for j in range(1, l + 1)}
        self._poly: Dict[int, int] = {j: signature.generator(f"sx{j}").id for j in range(l + 1, r + 1)}
        self._duals: List[Tuple[int, int]] = [(j, signature.generator(f"d{j}").id) for j in range(1, r + 1)]

    def _flipped(self, which: str, position: int) -> bool:
        return self.mutation is not None and self.mutation.sum == which and self.mutation.position == position

    def compute(self, m: Monomial) -> Element:
        present = [(j, gid) for j, gid in self._duals if m.exponents[gid]]
        out: Dict[Monomial, int] = {}
        for i, (j, gid) in enumerate(present, start=1):
            sign = -1 if (i - 1) % 2 else 1
            exps = list(m.exponents)
            exps[gid] = 0
            if j <= self.data.free_rank:
                n = m.exponents[self._free[j]]
                if self._flipped("group", i):
                    sign = -sign
            else:
                poly = self._poly[j]
                n = m.exponents[poly]
                exps[poly] -= 1
                if self._flipped("poly", i):
                    sign = -sign
            if n:
                target = Monomial(tuple(exps))
                out[target] = out.get(target, 0) + sign * n
        return Element.from_terms(self.signature, out)
