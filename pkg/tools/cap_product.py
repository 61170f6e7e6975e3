from itertools import combinations
from typing import Dict, Iterator, Sequence, Tuple

from sympy.combinatorics import Permutation

Indices = Tuple[int, ...]


class CapProductTools:
    """Sign bookkeeping for Poincaré duality on H*(G;Q) = Λ(x₁,…,x_r), all x_j odd."""

    @staticmethod
    def subsets(rank: int) -> Iterator[Indices]:
        for p in range(rank + 1):
            yield from combinations(range(1, rank + 1), p)

    @staticmethod
    def cap_sign(indices: Sequence[int]) -> int:
        """x_{j₁}^∨…x_{j_p}^∨ ∩ [G] = (−1)^{(j₁−1)+…+(j_p−1)} x₁…x̂_{j₁}…x̂_{j_p}…x_r."""
        return -1 if sum(j - 1 for j in indices) % 2 else 1

    @staticmethod
    def contract(j: int, word: Sequence[int]) -> Tuple[int, Indices]:
        """Remove x_j from an ordered word of odd classes: (−1)^{position−1}, or (0, ()) if absent."""
        if j not in word:
            return 0, ()
        position = list(word).index(j)
        rest = tuple(k for k in word if k != j)
        return (-1 if position % 2 else 1), rest

    @staticmethod
    def cap_sign_by_contraction(indices: Sequence[int], rank: int) -> int:
        """Brute force: (αβ)∩c = α∩(β∩c), so the last dual is capped first."""
        word: Indices = tuple(range(1, rank + 1))
        sign = 1
        for j in reversed(tuple(indices)):
            s, word = CapProductTools.contract(j, word)
            if s == 0:
                return 0
            sign *= s
        return sign

    @staticmethod
    def cap_sign_by_permutation(indices: Sequence[int], rank: int) -> int:
        """Koszul sign of bringing x_{j_p}…x_{j₁} to the front of x₁…x_r."""
        chosen = list(indices)
        rest = [k for k in range(1, rank + 1) if k not in chosen]
        front = Permutation([k - 1 for k in chosen + rest]).signature()
        p = len(chosen)
        reversal = -1 if (p * (p - 1) // 2) % 2 else 1
        return front * reversal

    @staticmethod
    def contraction_action(j: int, indices: Sequence[int]) -> Tuple[int, Indices]:
        """x_j·(x_{j₁}^∨…x_{j_p}^∨) = (−1)^{i−1} x_{j₁}^∨…x̂_{j_i}^∨…x_{j_p}^∨, 0 for an absent index."""
        return CapProductTools.contract(j, tuple(indices))

    @staticmethod
    def action_by_duality(j: int, indices: Sequence[int], rank: int) -> Tuple[int, Indices]:
        """Same action computed as PD⁻¹(x_j · PD(α)) with the Pontryagin product on Λ(x₁,…,x_r)."""
        chosen = tuple(indices)
        if j not in chosen:
            return 0, ()
        complement = [k for k in range(1, rank + 1) if k not in chosen]
        pontryagin = -1 if sum(1 for k in complement if k < j) % 2 else 1
        rest = tuple(k for k in chosen if k != j)
        sign = CapProductTools.cap_sign(chosen) * pontryagin * CapProductTools.cap_sign(rest)
        return sign, rest

    @staticmethod
    def cap_law_table(rank: int) -> Dict[Indices, Tuple[int, int, int]]:
        """Closed form, contraction oracle and permutation oracle for every subset."""
        return {
            subset: (
                CapProductTools.cap_sign(subset),
                CapProductTools.cap_sign_by_contraction(subset, rank),
                CapProductTools.cap_sign_by_permutation(subset, rank),
            )
            for subset in CapProductTools.subsets(rank)
        }
