"""Finite rings by structure constants and the regularity hierarchy."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endolab import rings
from endolab.verdicts import CapExceeded

CAP = 4096


def ut2(modulus):
    return rings.matrix_ring_presentation(2, modulus, upper_triangular=True)


def mat2(modulus):
    return rings.matrix_ring_presentation(2, modulus)


def test_validate_builtin_constructions():
    for ring in (rings.zmod_ring(6), ut2(2), mat2(2),
                 rings.product_ring(rings.zmod_ring(2), rings.zmod_ring(3))):
        ok, msg = rings.validate_ring(ring)
        assert ok, msg


def test_validate_rejects_broken_identity():
    ring = rings.FiniteRing(moduli=(4,), mul=(((1,),),), one=(2,))
    ok, msg = rings.validate_ring(ring)
    assert not ok
    assert "identity" in msg or "one" in msg


def test_validate_rejects_nonassociative():
    # x*y = x+y is not associative with this "one"
    ring = rings.FiniteRing(moduli=(3,), mul=(((2,),),), one=(1,))
    ok, _ = rings.validate_ring(ring)
    assert not ok


def squarefree(n):
    return all(n % (p * p) for p in range(2, n))


@settings(max_examples=29, deadline=None)
@given(st.integers(2, 30))
def test_zn_regularity_iff_squarefree(n):
    ring = rings.zmod_ring(n)
    verdict = rings.is_regular(ring, CAP)
    assert verdict.value is squarefree(n)
    # commutative, so regular, unit regular and abelian regular coincide
    assert rings.is_unit_regular(ring, CAP).value is squarefree(n)
    assert rings.is_abelian_regular(ring, CAP).value is squarefree(n)


def test_regularity_witness_roundtrip():
    ring = rings.zmod_ring(6)
    for x in rings.enumerate_elements(ring, CAP):
        y = rings.regularity_witness(x)
        assert y is not None
        assert (x * y * x).coords == x.coords


def test_upper_triangular_not_regular():
    verdict = rings.is_regular(ut2(2), CAP)
    assert verdict.value is False
    x = verdict.witness
    assert rings.regularity_witness(x) is None


def test_full_matrix_ring_regular_not_abelian():
    ring = mat2(2)
    assert rings.is_regular(ring, CAP).value is True
    assert rings.is_unit_regular(ring, CAP).value is True
    assert rings.is_abelian_regular(ring, CAP).value is False


def test_hierarchy_consistency():
    for ring in (rings.zmod_ring(4), rings.zmod_ring(6), ut2(2), mat2(2),
                 rings.product_ring(rings.zmod_ring(2), rings.zmod_ring(2))):
        abelian, unit, regular = rings.regularity_hierarchy(ring, CAP)
        if abelian.value:
            assert unit.value and regular.value
        if unit.value:
            assert regular.value


def test_idempotents_of_z6():
    ring = rings.zmod_ring(6)
    vals = sorted(e.coords[0] for e in rings.idempotents(ring, CAP))
    assert vals == [0, 1, 3, 4]


def test_units_of_z6():
    ring = rings.zmod_ring(6)
    vals = sorted(u.coords[0] for u in rings.units(ring, CAP))
    assert vals == [1, 5]


def test_unit_detection_in_matrix_ring():
    ring = mat2(2)
    # e11 + e12 + e21 has determinant 1 mod 2: a unit
    u = ring.element((1, 1, 1, 0))
    assert rings.is_unit(u)
    # e11 is idempotent, not a unit
    assert not rings.is_unit(ring.element((1, 0, 0, 0)))


def test_cap_exceeded_is_loud():
    with pytest.raises(CapExceeded):
        rings.enumerate_elements(rings.zmod_ring(100), 50)
    verdict = rings.is_regular(rings.zmod_ring(100), 50)
    assert verdict.value is None


def test_element_arithmetic():
    ring = rings.zmod_ring(12)
    a, b = ring.element((7,)), ring.element((9,))
    assert (a + b).coords == (4,)
    assert (a * b).coords == (3,)
    assert (a - b).coords == (10,)
    assert ring.element(ring.one) * a == a or (ring.element(ring.one) * a).coords == a.coords
