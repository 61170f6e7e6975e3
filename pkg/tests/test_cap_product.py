import pytest

from services.verification import cap_law_reports, check_action_table_against_duality
from tools.cap_product import CapProductTools


@pytest.mark.parametrize("rank", range(0, 7))
def test_three_cap_laws_agree(rank):
    for subset, (closed, by_contraction, by_permutation) in CapProductTools.cap_law_table(rank).items():
        assert closed == by_contraction == by_permutation, subset


def test_cap_law_examples():
    assert CapProductTools.cap_sign(()) == 1
    assert CapProductTools.cap_sign((2,)) == -1
    assert CapProductTools.cap_sign((1, 3)) == 1
    assert CapProductTools.cap_sign((2, 3)) == -1
    assert CapProductTools.cap_sign_by_contraction((1, 2), 2) == -1


def test_contraction():
    assert CapProductTools.contraction_action(2, (1, 2, 3)) == (-1, (1, 3))
    assert CapProductTools.contraction_action(1, (1, 2, 3)) == (1, (2, 3))
    assert CapProductTools.contraction_action(4, (1, 2)) == (0, ())


def test_action_matches_duality():
    rank = 6
    for subset in CapProductTools.subsets(rank):
        for j in range(1, rank + 1):
            assert CapProductTools.action_by_duality(j, subset, rank) == CapProductTools.contraction_action(j, subset)


def test_subsets_are_counted():
    assert len(list(CapProductTools.subsets(5))) == 32


def test_cap_law_reports():
    reports = cap_law_reports(5)
    assert [r.name for r in reports] == ["cap_product_law", "module_action_law"]
    assert all(r.ok and r.checked > 0 for r in reports)


@pytest.mark.parametrize("name", ["SU(3)", "U(2)", "T3"])
def test_built_action_table_is_poincare_dual(catalog_model, name):
    (report,) = check_action_table_against_duality(catalog_model(name))
    assert report.ok, report.counterexample
