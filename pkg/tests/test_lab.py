"""Module-level property deciders and the theorem suites."""

import pytest

from endolab import lab, modules, rings
from endolab.verdicts import Caps

CAPS = Caps()


def z(n):
    return rings.zmod_ring(n)


def reg(n):
    return modules.regular_module(z(n), name=f"Z{n}")


def plane():
    m, _, _ = modules.direct_sum([reg(2), reg(2)])
    return m


def e1R():
    r = modules.regular_module(
        rings.matrix_ring_presentation(2, 2, upper_triangular=True))
    inner, _ = modules.extract(modules.submodule_generated(r, [(1, 0, 0)]))
    return inner


def sum_2_3():
    m6 = reg(6)
    s2, _ = modules.extract(modules.submodule_generated(m6, [(3,)]))
    s3, _ = modules.extract(modules.submodule_generated(m6, [(2,)]))
    total, _, _ = modules.direct_sum([s2, s3])
    return total


def test_endoregular_fixtures():
    assert lab.is_endoregular(reg(6), CAPS).value is True
    assert lab.is_endoregular(plane(), CAPS).value is True
    v = lab.is_endoregular(reg(4), CAPS)
    assert v.value is False


def test_abelian_endoregular_fixtures():
    assert lab.is_abelian_endoregular(e1R(), CAPS).value is True
    assert lab.is_abelian_endoregular(plane(), CAPS).value is False
    assert lab.is_abelian_endoregular(sum_2_3(), CAPS).value is True
    assert lab.is_abelian_endoregular(reg(6), CAPS).value is True


def test_unit_endoregular_fixtures():
    assert lab.is_unit_endoregular(plane(), CAPS).value is True
    assert lab.is_unit_endoregular(reg(4), CAPS).value is False
    zero = modules.zero_module(z(2))
    assert lab.is_unit_endoregular(zero, CAPS).value is True


def test_ssp_sip():
    assert lab.has_ssp(reg(6), CAPS).value is True
    assert lab.has_sip(reg(6), CAPS).value is True
    assert lab.has_ssp(plane(), CAPS).value is True
    assert lab.has_sip(plane(), CAPS).value is True
    assert lab.has_ssp(reg(2), CAPS).value is True


def test_summand_lattice_shape():
    assert len(lab.summand_lattice(reg(6), CAPS)) == 4
    assert len(lab.summand_lattice(reg(2), CAPS)) == 2
    assert len(lab.summand_lattice(plane(), CAPS)) == 5
    assert lab.is_distributive_boolean(reg(6), CAPS).value is True
    assert lab.is_distributive_boolean(plane(), CAPS).value is False
    assert lab.is_distributive_boolean(reg(2), CAPS).value is True


def test_five_way_suite():
    rep = lab.five_way_suite(sum_2_3(), CAPS)
    assert all(v.value is True for v in rep.all_verdicts())
    rep = lab.five_way_suite(plane(), CAPS)
    assert all(v.value is False for v in rep.all_verdicts())
    rep = lab.five_way_suite(reg(2), CAPS)
    assert all(v.value is True for v in rep.all_verdicts())
    with pytest.raises(ValueError):
        lab.five_way_suite(reg(4), CAPS)


def test_unit_suite():
    rep = lab.unit_suite(reg(6), CAPS)
    assert rep.unit_endoregular.value is True
    assert rep.im_plus_ker_always_full.value is True
    assert rep.idempotents_commute_with_units.value is True
    assert rep.conclusion_checked.value is True
    rep = lab.unit_suite(plane(), CAPS)
    assert rep.im_plus_ker_always_full.value is False
    assert rep.idempotents_commute_with_units.value is False
    zero = modules.zero_module(z(2))
    rep = lab.unit_suite(zero, CAPS)
    assert rep.unit_endoregular.value is True


def test_prime_semiprime_z12():
    m = reg(12)
    primes = lab.spec_of(m, CAPS)
    got = sorted(p.gens for p in primes)
    sub = lambda k: modules.submodule_generated(m, [(k,)])
    assert got == sorted([sub(2).gens, sub(3).gens])
    v = lab.is_semiprime_in(sub(4), CAPS)
    assert v.value is False
    assert v.witness.gens == sub(2).gens
    assert lab.is_semiprime_in(sub(6), CAPS).value is True
    assert lab.is_prime_in(sub(6), CAPS).value is False


def test_prime_errors():
    m = reg(12)
    with pytest.raises(lab.NotFullyInvariant):
        lab.is_prime_in(modules.full_submodule(m), CAPS)
    p = plane()
    line = [n for n in modules.enumerate_submodules(p, 512) if n.order() == 2][0]
    with pytest.raises(lab.NotFullyInvariant):
        lab.is_prime_in(line, CAPS)


def test_zero_prime_in_simple():
    m = reg(3)
    assert lab.is_prime_module(m, CAPS).value is True
    zero = modules.zero_module(z(2))
    assert lab.is_prime_module(zero, CAPS).value is False


def test_duo_fixtures():
    assert lab.is_duo(reg(12), CAPS).value is True
    assert lab.is_quasi_duo(reg(12), CAPS).value is True
    assert lab.is_quasi_duo(plane(), CAPS).value is False
    assert lab.is_quasi_duo(e1R(), CAPS).value is True


def test_subdirect_of_simples():
    assert lab.is_subdirect_of_simples(reg(6), CAPS).value is True
    assert lab.is_subdirect_of_simples(e1R(), CAPS).value is False
    assert lab.is_subdirect_of_simples(reg(2), CAPS).value is True


def test_k_nonsingular_polyform():
    assert lab.is_k_nonsingular(reg(4), CAPS).value is False
    assert lab.is_k_nonsingular(sum_2_3(), CAPS).value is True
    # the definitional implication on a handful of fixtures
    for m in (reg(4), reg(6), reg(12), plane(), e1R(), sum_2_3()):
        poly = lab.is_polyform(m, CAPS)
        knon = lab.is_k_nonsingular(m, CAPS)
        if poly.value:
            assert knon.value


def test_azumaya_agreement():
    for m in (reg(4), reg(6), reg(12), plane(), e1R()):
        assert lab.azumaya_agreement(m, CAPS).value is True


def test_theorem_suites_all_pass():
    members = [
        lab.CorpusMember("z4", reg(4), projective=True),
        lab.CorpusMember("z6", reg(6), projective=True),
        lab.CorpusMember("z12", reg(12), projective=True),
        lab.CorpusMember("plane", plane(), projective=True),
        lab.CorpusMember("e1R", e1R(), projective=True),
        lab.CorpusMember("s23", sum_2_3()),
    ]
    z6m = members[1]
    fams = [(z6m, z6m), (members[5], members[5])]
    report = lab.theorem_suites(members, CAPS, families=fams)
    assert not report.failed
    counts = report.counts()
    assert counts["fail"] == 0
    assert counts["pass"] > 0


def test_verdicts_skip_loudly_under_caps():
    tight = Caps(elements=8, submodules=4, homs=8)
    v = lab.is_endoregular(reg(12), tight)
    assert v.value is None
    assert "cap" in v.reason or "exceeds" in v.reason


def test_analyze_report():
    rep = lab.analyze("e1R", e1R(), CAPS)
    assert rep.end_size == 2
    assert rep.radical_order == 2
    assert rep.properties["abelian endoregular"].value is True
    assert rep.properties["subdirect product of simples"].value is False
    assert len(rep.spec) == 1
    lines = rep.lines()
    assert any("abelian endoregular: true" in ln for ln in lines)
