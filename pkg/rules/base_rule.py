import threading
from abc import ABC, abstractmethod
from typing import Dict

from core.algebra import Element, Monomial, Signature
from core.errors import SignatureError


class BaseRule(ABC):
    """A BV operator given monomial by monomial and extended linearly."""

    def __init__(self, tag: str, signature: Signature):
        self.tag = tag
        self.signature = signature
        self._cache: Dict[Monomial, Element] = {}
        self._lock = threading.Lock()

    def apply_monomial(self, m: Monomial) -> Element:
        cached = self._cache.get(m)
        if cached is None:
            cached = self.compute(m)
            with self._lock:
                cached = self._cache.setdefault(m, cached)
        return cached

    def apply(self, a: Element) -> Element:
        if a.signature != self.signature:
            raise SignatureError(f"element does not belong to the {self.tag} model")
        out: Dict[Monomial, object] = {}
        for m, c in a.items():
            for target, v in self.apply_monomial(m).items():
                out[target] = out.get(target, 0) + c * v
        return Element.from_terms(self.signature, out)

    def loop_operator(self, m: Monomial) -> Element:
        """B_ΩG on a loop-only monomial; zero unless the rule carries a table."""
        return Element.zero(self.signature)

    @abstractmethod
    def compute(self, m: Monomial) -> Element:
        pass
