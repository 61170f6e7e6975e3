from concurrent.futures import ThreadPoolExecutor

import pytest

from core.algebra import Element
from core.bv_kernel import (
    AXIOM_CHECKS,
    apply_B,
    bracket,
    check_bv7,
    check_jacobi_antisym,
    check_poisson,
    run_axiom_suite,
    run_check,
    window_tuples,
)
from core.errors import SignatureError
from models.schemas import VerificationWindow
from services.model_builder import tensor_model
from services.model_loader import load_model
from services.verification import check_embeddings
from tests.conftest import el

CATALOG_GROUPS = ["S1", "SU(2)", "SO(3)", "U(2)", "SU(3)", "T2"]


def test_unit_is_killed(catalog_model):
    for name in CATALOG_GROUPS + ["LS1", "LS3"]:
        model = catalog_model(name)
        assert apply_B(model, model.fundamental_class()).is_zero()


def test_bracket_with_unit_vanishes(catalog_model):
    model = catalog_model("U(2)")
    for text in ["x1*sx2*d1", "d2", "x1^-1*d1*d2"]:
        assert bracket(model, model.fundamental_class(), el(model, text)).is_zero()


def test_b_acts_term_by_term_on_mixed_elements(catalog_model):
    ls1 = catalog_model("LS1")
    assert apply_B(ls1, el(ls1, "x*d + x^2 - 1/2*x^-2*d")) == el(ls1, "x + x^-2")


def test_group_like_bracket_on_the_circle(catalog_model):
    ls1 = catalog_model("LS1")
    # {x⊗[S¹], 1⊗x^∨} = x⊗([S¹]·x^∨)
    assert bracket(ls1, el(ls1, "x"), el(ls1, "d")) == el(ls1, "x")


def test_primitive_bracket_formula(catalog_model):
    su2 = catalog_model("SU(2)")
    # {a⊗[M], 1⊗x} = (−1)^{|a|} 1⊗(σ*(a)·x) for primitive a
    assert bracket(su2, el(su2, "sx1"), el(su2, "d1")) == el(su2, "1")
    su3 = catalog_model("SU(3)")
    assert bracket(su3, el(su3, "sx2"), el(su3, "d1*d2")) == el(su3, "-d1")


def test_foreign_elements_are_rejected(catalog_model):
    with pytest.raises(SignatureError):
        bracket(catalog_model("LS1"), el(catalog_model("LS3"), "d"), el(catalog_model("LS3"), "d"))


def test_identity_predicates(catalog_model):
    one = catalog_model("SU(2)").fundamental_class()
    assert check_bv7(catalog_model("SU(2)"), one, one, one)
    su3 = catalog_model("SU(3)")
    for a, b, c in [("sx1", "sx2", "d1"), ("sx2", "d1", "d2"), ("sx1^2*d2", "sx2*d1", "d1")]:
        args = [el(su3, t) for t in (a, b, c)]
        assert check_bv7(su3, *args)
        assert check_poisson(su3, *args)
        assert check_jacobi_antisym(su3, *args)


def test_self_bracket_of_odd_elements_vanishes(catalog_model, small_window):
    model = catalog_model("U(2)")
    odd = [m for m in model.window_basis(small_window) if model.signature.degree(m) % 2]
    assert odd
    for m in odd:
        a = Element.monomial(model.signature, m)
        assert bracket(model, a, a).is_zero()


@pytest.mark.parametrize("name", CATALOG_GROUPS)
def test_axiom_sweep_on_catalog_groups(catalog_model, name):
    window = VerificationWindow(degree=8, group_range=1, max_cases=400, seed=7)
    reports = run_axiom_suite(catalog_model(name), window)
    failures = [r for r in reports if not r.ok]
    assert not failures, failures
    assert all(r.checked > 0 for r in reports)


@pytest.mark.parametrize("name", CATALOG_GROUPS + ["LS1", "LS3"])
def test_sub_bv_embeddings(catalog_model, wide_window, name):
    loop, manifold = check_embeddings(catalog_model(name), wide_window)
    assert loop.ok and manifold.ok
    assert loop.checked > 0 and manifold.checked > 0


def test_tensor_of_circle_and_three_sphere(catalog_model):
    model = tensor_model(catalog_model("LS1"), catalog_model("LS3"))
    window = VerificationWindow(degree=4, group_range=1, max_cases=1500, seed=3)
    reports = run_axiom_suite(model, window)
    assert all(r.ok for r in reports), [r for r in reports if not r.ok]


def test_window_tuples_are_deterministic(catalog_model):
    model = catalog_model("U(2)")
    window = VerificationWindow(degree=6, group_range=2, max_cases=50, seed=11)
    basis = model.window_basis(window)
    first, sampled = window_tuples(model.signature, basis, 3, window, "stream")
    second, _ = window_tuples(model.signature, basis, 3, window, "stream")
    assert sampled and first == second
    assert len(first) == 50
    assert all(abs(sum(model.signature.degree(m) for m in case)) <= 6 for case in first)
    other, _ = window_tuples(model.signature, basis, 3, window.model_copy(update={"seed": 12}), "stream")
    assert other != first


def test_small_grids_are_exhaustive(catalog_model):
    model = catalog_model("LS1")
    window = VerificationWindow(degree=1, group_range=1, max_cases=1000)
    basis = model.window_basis(window)
    cases, sampled = window_tuples(model.signature, basis, 2, window, "pairs")
    assert not sampled
    assert len(cases) == len(basis) ** 2 - sum(
        1 for a in basis for b in basis if abs(model.signature.degree(a) + model.signature.degree(b)) > 1
    )


@pytest.mark.parametrize("name", ["S1", "SU(2)", "SO(3)"])
def test_exhaustive_axiom_sweep(catalog_model, name):
    window = VerificationWindow(degree=8, group_range=1, max_cases=20000)
    reports = run_axiom_suite(catalog_model(name), window)
    assert not any(r.sampled for r in reports)
    assert all(r.ok for r in reports), [r for r in reports if not r.ok]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["U(2)", "SU(3)", "T2"])
def test_exhaustive_axiom_sweep_on_larger_groups(catalog_model, name):
    # every triple grid at D=8, g=1 fits under max_cases
    window = VerificationWindow(degree=8, group_range=1, max_cases=400000)
    reports = run_axiom_suite(catalog_model(name), window)
    assert not any(r.sampled for r in reports)
    assert all(r.ok for r in reports), [r for r in reports if not r.ok]


def test_concurrent_sweeps_share_caches_safely(small_window):
    """Threads filling one model's B and bracket caches agree with a serial run on a fresh model."""
    serial_model, shared_model = load_model("U(2)"), load_model("U(2)")
    basis = serial_model.window_basis(small_window)
    serial = [run_check(serial_model, check, small_window, basis) for check in AXIOM_CHECKS]
    with ThreadPoolExecutor(max_workers=4) as pool:
        futures = [pool.submit(run_check, shared_model, check, small_window, basis)
                   for check in AXIOM_CHECKS * 2]
        threaded = [f.result() for f in futures]
    expected = [r.model_dump() for r in serial] * 2
    assert [r.model_dump() for r in threaded] == expected
    assert shared_model.rule._cache.keys() == serial_model.rule._cache.keys()
    assert all(shared_model.rule._cache[m] == v for m, v in serial_model.rule._cache.items())
