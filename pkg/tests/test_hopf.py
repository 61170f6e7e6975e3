from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.algebra import Element, Factor, GeneratorKind, Signature, normalize
from core.errors import DomainError
from core.hopf import HopfStructure, TensorSquareElement, coproduct, counit, is_primitive

LOOP = Signature.build([
    {"name": "x1", "kind": GeneratorKind.GROUP_FREE},
    {"name": "y1", "kind": GeneratorKind.GROUP_TORSION, "torsion_order": 3},
    {"name": "sx2", "kind": GeneratorKind.POLY_EVEN, "degree": 2},
    {"name": "sx3", "kind": GeneratorKind.POLY_EVEN, "degree": 4},
    {"name": "e", "kind": GeneratorKind.EXT_ODD, "degree": 1},
    {"name": "f", "kind": GeneratorKind.EXT_ODD, "degree": 3},
])
HOPF = HopfStructure(LOOP)
monomials = st.sampled_from(LOOP.basis(6, group_range=2))


def w(*items):
    return normalize(LOOP, list(items))


def tensor(a, b):
    return TensorSquareElement.tensor(a, b)


def test_group_like():
    x = w(("x1", 3))
    assert coproduct(HOPF, x) == tensor(x, x)
    assert HOPF.is_group_like(w(("x1", -1), ("y1", 2)))


def test_spherical_generator_is_primitive():
    s = w(("sx2", 1))
    one = Element.one(LOOP)
    assert coproduct(HOPF, s) == tensor(s, one) + tensor(one, s)
    assert is_primitive(HOPF, s)
    assert is_primitive(HOPF, w(("e", 1)))


def test_product_of_two_primitives():
    s, t = w(("sx2", 1)), w(("sx3", 1))
    one = Element.one(LOOP)
    expected = tensor(s * t, one) + tensor(s, t) + tensor(t, s) + tensor(one, s * t)
    assert coproduct(HOPF, s * t) == expected


def test_not_primitive():
    assert not is_primitive(HOPF, w(("x1", 1)))
    assert not is_primitive(HOPF, w(("sx2", 2)))


def test_counit():
    assert counit(HOPF, w(("x1", 7))) == 1
    assert counit(HOPF, w(("sx2", 1))) == 0
    assert counit(HOPF, Element.one(LOOP).scale(3) + w(("sx2", 1)).scale(2)) == 3
    assert counit(HOPF, w(("x1", 1), ("y1", 1)).scale(Fraction(1, 2))) == Fraction(1, 2)


def test_coproduct_rejects_manifold_generators():
    sig = Signature.build([
        {"name": "x1", "kind": GeneratorKind.GROUP_FREE},
        {"name": "d1", "kind": GeneratorKind.EXT_ODD, "degree": -1, "factor": Factor.MANIFOLD},
    ])
    hopf = HopfStructure(sig)
    d1 = normalize(sig, [("d1", 1)])
    with pytest.raises(DomainError):
        hopf.coproduct(d1)
    with pytest.raises(DomainError):
        hopf.counit(d1)


def test_odd_primitives_anticommute_in_the_tensor_square():
    e, f = w(("e", 1)), w(("f", 1))
    assert coproduct(HOPF, e * f) == coproduct(HOPF, e) * coproduct(HOPF, f)
    assert coproduct(HOPF, f * e) == coproduct(HOPF, e * f) * TensorSquareElement.from_terms(
        LOOP, {(LOOP.identity(), LOOP.identity()): -1}
    )


@settings(max_examples=100, deadline=None)
@given(monomials)
def test_coassociativity(m):
    a = Element.monomial(LOOP, m)
    assert HOPF.left_iterate(a) == HOPF.right_iterate(a)


@settings(max_examples=100, deadline=None)
@given(monomials)
def test_counit_laws(m):
    a = Element.monomial(LOOP, m)
    assert HOPF.counit_right(a) == a
    assert HOPF.counit_left(a) == a


@settings(max_examples=100, deadline=None)
@given(monomials, monomials)
def test_coproduct_is_an_algebra_map(x, y):
    a, b = Element.monomial(LOOP, x), Element.monomial(LOOP, y)
    assert coproduct(HOPF, a * b) == coproduct(HOPF, a) * coproduct(HOPF, b)
