"""Finite modules: validation, submodule lattices, quotients, extraction."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endolab import modules, rings
from endolab.verdicts import CapExceeded

CAP = 512


def z(n):
    return rings.zmod_ring(n)


def reg(n):
    return modules.regular_module(z(n), name=f"Z{n}")


def ut2z2():
    return rings.matrix_ring_presentation(2, 2, upper_triangular=True)


def e1R():
    r = modules.regular_module(ut2z2(), name="UT2Z2")
    sub = modules.submodule_generated(r, [(1, 0, 0)])
    inner, _ = modules.extract(sub)
    return inner


def small_fixture_modules():
    v4, _, _ = modules.direct_sum([reg(2), reg(2)])
    return [reg(2), reg(4), reg(6), reg(12), v4, e1R(),
            modules.regular_module(ut2z2())]


def test_validate_builtin_modules():
    for m in small_fixture_modules():
        ok, msg = modules.validate_module(m)
        assert ok, msg


def test_validate_rejects_broken_action():
    # action that ignores the ring identity
    m = modules.FiniteModule(ring=z(4), moduli=(4,), action=(((2,),),))
    ok, msg = modules.validate_module(m)
    assert not ok
    assert msg


def test_zero_module():
    zm = modules.zero_module(z(6))
    assert zm.size() == 1
    assert zm.moduli == ()
    ok, _ = modules.validate_module(zm)
    assert ok


def test_direct_sum_embeddings_and_projections():
    m6 = reg(6)
    s2, _ = modules.extract(modules.submodule_generated(m6, [(3,)]))
    s3, _ = modules.extract(modules.submodule_generated(m6, [(2,)]))
    m, embs, projs = modules.direct_sum([s2, s3])
    assert m.size() == 6
    for k, (e, p) in enumerate(zip(embs, projs)):
        assert modules.is_module_hom(e)
        assert modules.is_module_hom(p)
        comp = e.then(p)
        assert comp.matrix == modules.identity_hom(e.domain).matrix
    # mixed projection is zero
    assert embs[0].then(projs[1]).is_zero()


def test_submodule_counts_z12():
    subs = modules.enumerate_submodules(reg(12), CAP)
    # one submodule per divisor of 12
    assert len(subs) == 6
    orders = sorted(s.order() for s in subs)
    assert orders == [1, 2, 3, 4, 6, 12]


def test_submodule_counts_plane():
    v4, _, _ = modules.direct_sum([reg(2), reg(2)])
    subs = modules.enumerate_submodules(v4, CAP)
    # 0, three lines, the plane
    assert len(subs) == 5


def test_quotient_order_multiplicativity():
    for m in small_fixture_modules():
        for n in modules.enumerate_submodules(m, CAP):
            q, proj = modules.quotient(m, n)
            assert n.order() * q.size() == m.size()
            assert modules.is_module_hom(proj)
            ok, msg = modules.validate_module(q)
            assert ok, msg


def test_extract_preserves_order_and_inclusion():
    for m in small_fixture_modules():
        for n in modules.enumerate_submodules(m, CAP):
            inner, incl = modules.extract(n)
            assert inner.size() == n.order()
            assert modules.is_module_hom(incl)
            got = {incl.apply(x) for x in inner.elements()}
            assert got == set(n.elements())


def test_radical_socle_fixtures():
    assert modules.radical(reg(12), CAP).order() == 2   # <6>
    assert modules.socle(reg(12), CAP).order() == 6     # <2>
    assert modules.radical(reg(6), CAP).is_zero()
    assert modules.socle(reg(6), CAP).is_full()
    m = e1R()
    assert modules.radical(m, CAP).order() == 2
    assert not modules.radical(m, CAP).is_zero()


def test_simplicity():
    assert modules.is_simple(reg(2), CAP)
    assert modules.is_simple(reg(3), CAP)
    assert not modules.is_simple(reg(4), CAP)
    assert not modules.is_simple(modules.zero_module(z(2)), CAP)


def test_essential_fixture():
    m = reg(4)
    two = modules.submodule_generated(m, [(2,)])
    assert modules.is_essential(two, CAP)
    m6 = reg(6)
    three = modules.submodule_generated(m6, [(3,)])
    assert not modules.is_essential(three, CAP)


def test_sum_intersect_lattice_identities():
    m = reg(12)
    subs = list(modules.enumerate_submodules(m, CAP))
    for a in subs:
        for b in subs:
            s = modules.submodule_sum(a, b)
            i = modules.submodule_intersect(a, b)
            assert s.contains_sub(a) and s.contains_sub(b)
            assert a.contains_sub(i) and b.contains_sub(i)
            assert s.order() * i.order() == a.order() * b.order()


def test_action_closure_of_generated_submodule():
    r = modules.regular_module(ut2z2())
    sub = modules.submodule_generated(r, [(0, 1, 0)])
    for x in sub.elements():
        for t in range(3):
            coords = tuple(1 if i == t else 0 for i in range(3))
            assert sub.contains(r.act(x, coords))


def test_enumerate_submodules_cap():
    with pytest.raises(CapExceeded):
        modules.enumerate_submodules(reg(12), cap=4)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 6, 8, 9, 12]), st.data())
def test_quotient_then_extract_sizes(n, data):
    m = reg(n)
    subs = modules.enumerate_submodules(m, CAP)
    sub = data.draw(st.sampled_from(list(subs)))
    q, _ = modules.quotient(m, sub)
    inner, _ = modules.extract(sub)
    assert q.size() * inner.size() == m.size()
