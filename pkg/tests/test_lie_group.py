import pytest
from pydantic import ValidationError

from core.algebra import Element, normalize
from core.bv_kernel import apply_B
from models.schemas import LieGroupData, VerificationWindow
from rules.lie_group import SignMutation
from services.decomposition import build_decomposition, decomposition_check
from services.model_builder import build_lie_group_model
from services.model_loader import load_model
from services.verification import check_hepworth_agreement, verify_model
from tests.conftest import el


def test_u2_closed_form(catalog_model):
    u2 = catalog_model("U(2)")
    assert apply_B(u2, el(u2, "x1^2*sx2^3*d1*d2")) == el(u2, "2*x1^2*sx2^3*d2 - 3*x1^2*sx2^2*d1")
    assert apply_B(u2, el(u2, "x1^-1*d1")) == el(u2, "-x1^-1")
    assert apply_B(u2, el(u2, "sx2*d2")) == el(u2, "1")


@pytest.mark.parametrize("n", [-3, -1, 0, 2, 5])
def test_circle_group(catalog_model, n):
    s1 = catalog_model("S1")
    sig = s1.signature
    assert apply_B(s1, normalize(sig, [("x1", n), ("d1", 1)])) == normalize(sig, [("x1", n)], n)


@pytest.mark.parametrize("n", range(0, 6))
def test_su2(catalog_model, n):
    su2 = catalog_model("SU(2)")
    sig = su2.signature
    expected = normalize(sig, [("sx1", n - 1)], n) if n else Element.zero(sig)
    assert apply_B(su2, normalize(sig, [("sx1", n), ("d1", 1)])) == expected


def test_su3_lowers_the_polynomial_exponent(catalog_model):
    su3 = catalog_model("SU(3)")
    assert apply_B(su3, el(su3, "sx1^2*d1")) == el(su3, "2*sx1")
    assert apply_B(su3, el(su3, "sx1*sx2^2*d1*d2")) == el(su3, "sx2^2*d2 - 2*sx1*sx2*d1")


def test_torsion_is_inert(catalog_model):
    so3 = catalog_model("SO(3)")
    assert apply_B(so3, el(so3, "y1*sx1^2*d1")) == el(so3, "2*y1*sx1")
    assert apply_B(so3, el(so3, "y1*d1")).is_zero()


def test_even_rational_homotopy_is_rejected():
    with pytest.raises(ValidationError):
        LieGroupData(free_rank=0, odd_degrees=[4])
    with pytest.raises(ValidationError):
        LieGroupData(free_rank=-1)


@pytest.mark.parametrize("name", ["SU(3)", "U(2)", "SO(3)"])
def test_coproduct_rule_agrees_with_closed_form(catalog_model, wide_window, name):
    (report,) = check_hepworth_agreement(catalog_model(name), wide_window)
    assert report.ok, report.counterexample
    assert report.checked > 0


@pytest.mark.parametrize("name", ["SU(2)", "SO(3)", "U(2)", "SU(3)", "T2", "T3"])
def test_decomposition_into_spheres(catalog_model, wide_window, name):
    report = decomposition_check(catalog_model(name).lie_data, wide_window, direct=catalog_model(name), name=name)
    assert report.ok, report.mismatch
    assert report.checked > 0


def test_decomposition_factors():
    data = LieGroupData(free_rank=1, torsion_factors=[6, 4], odd_degrees=[3, 5])
    _, factors = build_decomposition(data)
    assert [f.name for f in factors] == ["Q[π₁tor]", "LS1[1]", "LS3[2]", "LS5[3]"]
    report = decomposition_check(data, VerificationWindow(degree=6, group_range=1))
    assert report.ok, report.mismatch


def test_unnamed_model_label():
    model = build_lie_group_model(LieGroupData(free_rank=1, odd_degrees=[3]))
    assert model.name == "G(l=1, torsion=[], odd=[3])"


def test_unmutated_model_passes(small_window):
    assert verify_model(load_model("U(2)"), small_window).ok


@pytest.mark.parametrize("mutation", [SignMutation("group", 1), SignMutation("poly", 1), SignMutation("poly", 2)])
def test_sign_mutations_are_detected(small_window, mutation):
    report = verify_model(load_model("U(2)", mutation=mutation), small_window)
    assert not report.ok
    failing = {section.name for section in report.sections if not section.ok}
    assert "hepworth_agreement" in failing
    if mutation.sum == "poly":
        # B'²(x1·sx2·d1·d2) = ∓2·x1 for either poly flip
        assert {"b_squared", "seven_term"} & failing


def test_group_sign_flip_is_an_automorphism(small_window):
    """Negating every group term conjugates B by an automorphism, so only the oracles notice."""
    report = verify_model(load_model("U(2)", mutation=SignMutation("group", 1)), small_window)
    failing = {section.name for section in report.sections if not section.ok}
    assert "seven_term" not in failing
    assert "b_squared" not in failing
    assert failing & {"hepworth_agreement", "decomposition"}
