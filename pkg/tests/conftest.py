from typing import Callable, Dict

import pytest

from core.algebra import Element
from core.bv_kernel import BVModel
from models.schemas import VerificationWindow
from services.model_loader import load_model
from tools.expression import ExpressionTools


@pytest.fixture(scope="session")
def catalog_model() -> Callable[[str], BVModel]:
    """Catalog models are built once per session; their B caches are shared."""
    cache: Dict[str, BVModel] = {}

    def get(name: str) -> BVModel:
        if name not in cache:
            cache[name] = load_model(name)
        return cache[name]

    return get


@pytest.fixture
def small_window() -> VerificationWindow:
    return VerificationWindow(degree=4, group_range=1, max_cases=300, seed=0)


@pytest.fixture
def wide_window() -> VerificationWindow:
    return VerificationWindow(degree=10, group_range=2, max_cases=4000, seed=0)


def el(model: BVModel, text: str) -> Element:
    return ExpressionTools.parse(model.signature, text)
