from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.algebra import Element, Factor, GeneratorKind, GeneratorSpec, Monomial, Signature, degree, multiply, normalize
from core.errors import DegreeError, SignatureError

SIG = Signature.build([
    {"name": "x1", "kind": GeneratorKind.GROUP_FREE},
    {"name": "y1", "kind": GeneratorKind.GROUP_TORSION, "torsion_order": 2},
    {"name": "sx2", "kind": GeneratorKind.POLY_EVEN, "degree": 2},
    {"name": "e", "kind": GeneratorKind.EXT_ODD, "degree": 1},
    {"name": "d1", "kind": GeneratorKind.EXT_ODD, "degree": -1, "factor": Factor.MANIFOLD},
    {"name": "d2", "kind": GeneratorKind.EXT_ODD, "degree": -3, "factor": Factor.MANIFOLD},
    {"name": "d3", "kind": GeneratorKind.EXT_ODD, "degree": -3, "factor": Factor.MANIFOLD},
])

BASIS = SIG.basis(5, group_range=1)
monomials = st.sampled_from(BASIS)


def word(*items):
    return normalize(SIG, list(items))


def test_koszul_swap_of_two_odd_generators():
    assert word(("d2", 1), ("d1", 1)) == -word(("d1", 1), ("d2", 1))
    (m, c), = word(("d1", 1), ("d2", 1)).items()
    assert c == 1
    assert SIG.ext_indices(m) == (SIG.generator("d1").id, SIG.generator("d2").id)


def test_exterior_square_vanishes():
    assert word(("d1", 1), ("d1", 1)).is_zero()
    assert word(("e", 2)).is_zero()


def test_torsion_reduces_mod_order():
    assert word(("y1", 1), ("y1", 1)) == Element.one(SIG)
    assert word(("y1", 3)) == word(("y1", 1))


def test_group_ring_inverse():
    assert multiply(word(("x1", 2)), word(("x1", -2))) == Element.one(SIG)


def test_even_generator_is_polynomial():
    sx2 = word(("sx2", 1))
    assert sx2 * sx2 == word(("sx2", 2))


def test_even_product_of_duals_commutes_with_odd_one():
    pair = word(("d1", 1), ("d2", 1))
    d3 = word(("d3", 1))
    assert pair * d3 == d3 * pair


def test_unknown_generator():
    with pytest.raises(SignatureError):
        word(("z9", 1))
    with pytest.raises(SignatureError):
        SIG.generator(42)


def test_elements_of_different_signatures_do_not_mix():
    other = Signature.build([{"name": "x1", "kind": GeneratorKind.GROUP_FREE}])
    with pytest.raises(SignatureError):
        Element.one(SIG) + Element.one(other)


def test_invalid_generator_specs():
    with pytest.raises(SignatureError):
        GeneratorSpec(id=0, name="p", kind=GeneratorKind.POLY_EVEN, degree=3)
    with pytest.raises(SignatureError):
        GeneratorSpec(id=0, name="q", kind=GeneratorKind.EXT_ODD, degree=2)
    with pytest.raises(SignatureError):
        GeneratorSpec(id=0, name="y", kind=GeneratorKind.GROUP_TORSION, torsion_order=1)
    with pytest.raises(SignatureError):
        GeneratorSpec(id=0, name="u", kind=GeneratorKind.POLY_EVEN, degree=-2, factor=Factor.MANIFOLD)


def test_degrees():
    assert degree(SIG, SIG.identity()) == 0
    (sx2, _), = word(("sx2", 1)).items()
    assert degree(SIG, sx2) == 2
    (m, _), = word(("x1", 5), ("d1", 1)).items()
    assert degree(SIG, m) == -1


def test_mixed_degree_is_reported():
    mixed = word(("sx2", 1)) + word(("d1", 1))
    with pytest.raises(DegreeError):
        mixed.homogeneous_degree()
    assert sorted(mixed.homogeneous_components()) == [-1, 2]
    assert Element.zero(SIG).homogeneous_degree() is None


def test_rational_coefficients_are_exact():
    a = word(("d1", 1)).scale(Fraction(-3, 7))
    assert (a + a.scale(Fraction(3, 7))).coefficient(next(iter(a.terms))) == Fraction(-3, 7) * Fraction(10, 7)
    assert str(word(("x1", -2), ("d1", 1)).scale(Fraction(1, 2))) == "1/2*x1^-2*d1"


def test_basis_respects_window():
    for m in BASIS:
        assert abs(SIG.degree(m)) <= 5
        assert all(abs(n) <= 1 for n in SIG.free_exponents(m))
    assert SIG.identity() in BASIS


@settings(max_examples=150, deadline=None)
@given(monomials, monomials)
def test_graded_commutativity(x, y):
    a, b = Element.monomial(SIG, x), Element.monomial(SIG, y)
    sign = -1 if (SIG.degree(x) * SIG.degree(y)) % 2 else 1
    assert a * b == (b * a).scale(sign)


@settings(max_examples=150, deadline=None)
@given(monomials, monomials, monomials)
def test_associativity(x, y, z):
    a, b, c = (Element.monomial(SIG, m) for m in (x, y, z))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=100, deadline=None)
@given(monomials, st.sampled_from([1, -1, Fraction(2, 3)]))
def test_normalize_is_idempotent(m, coefficient):
    once = normalize(SIG, SIG.word(m), coefficient)
    (m2, c2), = once.items()
    assert normalize(SIG, SIG.word(m2), c2) == once


@settings(max_examples=100, deadline=None)
@given(monomials, monomials)
def test_degree_is_additive(x, y):
    product = Element.monomial(SIG, x) * Element.monomial(SIG, y)
    for m in product.terms:
        assert SIG.degree(m) == SIG.degree(x) + SIG.degree(y)


def test_monomial_identity():
    assert Monomial.identity(3).is_identity()
    assert not Monomial((0, 1, 0)).is_identity()
