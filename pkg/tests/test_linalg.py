"""Exact linear algebra: normal forms, canonical subgroup bases, congruence
solving.  Property tests compare against brute-force oracles on small sizes."""

import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endolab import linalg


def small_matrix(max_dim=8, lo=-100, hi=100):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                min_size=r, max_size=r,
            )
        )
    )


def moduli_vectors(max_len=3, choices=(2, 3, 4, 6, 8)):
    return st.lists(st.sampled_from(choices), min_size=1, max_size=max_len).map(tuple)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(small_matrix())
def test_snf_reconstruction(rows):
    u, s, v = linalg.smith_normal_form(rows)
    assert linalg.mat_mul(linalg.mat_mul(u, s), v) == linalg.as_matrix(rows)


@settings(max_examples=150, deadline=None)
@given(small_matrix())
def test_snf_divisibility_chain(rows):
    diag = linalg.snf_diagonal(rows)
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    assert all(d >= 0 for d in diag)


@settings(max_examples=100, deadline=None)
@given(small_matrix(max_dim=5, lo=-20, hi=20))
def test_snf_inverses_are_inverses(rows):
    u, uinv, s, v, vinv = linalg.snf_with_inverses(rows)
    n, m = len(u), len(v)
    assert linalg.mat_mul(u, uinv) == linalg.identity_matrix(n)
    assert linalg.mat_mul(v, vinv) == linalg.identity_matrix(m)
    assert linalg.mat_mul(linalg.mat_mul(u, s), v) == linalg.as_matrix(rows)


def test_snf_fixture_diag():
    # classic 2x2 with nontrivial invariant factors
    assert linalg.snf_diagonal([[2, 4], [6, 8]]) == (2, 4)
    assert linalg.snf_diagonal([[1, 0], [0, 1]]) == (1, 1)
    assert linalg.snf_diagonal([[0, 0], [0, 0]]) == (0, 0)


# ---------------------------------------------------------------------------
# Hermite normal form and canonical subgroup bases
# ---------------------------------------------------------------------------


def test_hnf_echelon_fixture():
    h = linalg.hermite_normal_form([[0, 0, 1, 1], [0, 1, 1, 0], [2, 0, 0, 0],
                                    [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]], 4)
    for row in h:
        assert all(v >= 0 for v in row)
    # pivots strictly to the right as we go down
    pivots = [next(j for j, v in enumerate(row) if v) for row in h]
    assert pivots == sorted(pivots)


def brute_subgroup(gens, m):
    elems = {tuple(0 for _ in m)}
    frontier = [tuple(v % mm for v, mm in zip(g, m)) for g in gens]
    while frontier:
        g = frontier.pop()
        new = set()
        for e in elems:
            s = tuple((a + b) % mm for a, b, mm in zip(e, g, m))
            if s not in elems:
                new.add(s)
        if new:
            elems |= new
            frontier.extend(new)
        elif g not in elems:
            elems.add(g)
            frontier.append(g)
    return frozenset(elems)


@settings(max_examples=200, deadline=None)
@given(
    moduli_vectors(),
    st.data(),
)
def test_canonical_form_matches_brute_force(m, data):
    k = len(m)
    gens = data.draw(st.lists(
        st.lists(st.integers(-6, 12), min_size=k, max_size=k).map(tuple),
        min_size=0, max_size=3,
    ))
    canon = linalg.subgroup_canonical_form(gens, m)
    want = brute_subgroup(gens, m)
    assert frozenset(linalg.enumerate_subgroup(canon, m)) == want
    assert linalg.subgroup_order(canon, m) == len(want)
    for row in canon:
        for j, v in enumerate(row):
            assert 0 <= v < m[j]
    # canonicity: shuffles and redundant generators do not change the form
    gens2 = list(gens) + list(gens[:1])
    random.Random(0).shuffle(gens2)
    assert linalg.subgroup_canonical_form(gens2, m) == canon
    for x in want:
        assert linalg.subgroup_membership(x, canon, m)


def test_structure_gives_invariant_factors():
    m = (12,)
    gens, orders = linalg.subgroup_structure([(4,)], m)
    assert orders == (3,)
    assert linalg.subgroup_order(linalg.subgroup_canonical_form(gens, m), m) == 3
    gens, orders = linalg.subgroup_structure([(2, 0), (0, 2)], (4, 4))
    assert orders == (2, 2)


def test_abelian_group_type():
    assert linalg.abelian_group_type((6,)) == (6,)
    assert linalg.abelian_group_type((2, 3)) == (6,)
    assert linalg.abelian_group_type((2, 4)) == (2, 4)
    assert linalg.abelian_group_type(()) == ()


def test_subgroup_intersection_fixture():
    m = (12,)
    a = linalg.subgroup_canonical_form([(2,)], m)
    b = linalg.subgroup_canonical_form([(3,)], m)
    inter = linalg.subgroup_intersection(a, b, m)
    assert frozenset(linalg.enumerate_subgroup(inter, m)) == {(0,), (6,)}


# ---------------------------------------------------------------------------
# Congruence solving
# ---------------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_solve_congruence_agrees_with_enumeration(data):
    out_m = data.draw(moduli_vectors(max_len=2))
    in_m = data.draw(moduli_vectors(max_len=2, choices=(2, 3, 4, 6)))
    rows = len(in_m)
    cols = len(out_m)
    # rows scaled so in_moduli annihilate them modulo out_moduli
    a = []
    for i in range(rows):
        row = []
        for j in range(cols):
            step = out_m[j] // math.gcd(in_m[i], out_m[j])
            row.append(step * data.draw(st.integers(0, 3)))
        a.append(tuple(row))
    b = data.draw(st.lists(st.integers(0, 7), min_size=cols, max_size=cols).map(tuple))

    solved = linalg.solve_congruence_system(a, b, out_m, in_m)
    want = {
        x
        for x in itertools.product(*(range(mm) for mm in in_m))
        if all(
            sum(x[i] * a[i][j] for i in range(rows)) % out_m[j] == b[j] % out_m[j]
            for j in range(cols)
        )
    }
    if solved is None:
        assert not want
    else:
        particular, homogeneous = solved
        got = {
            tuple((p + s) % mm for p, s, mm in zip(particular, shift, in_m))
            for shift in linalg.enumerate_subgroup(homogeneous, in_m)
        }
        assert got == want


def test_solve_rejects_unannihilated_rows():
    with pytest.raises(ValueError):
        linalg.solve_congruence_system([(1,)], (0,), (4,), (2,))


def test_kernel_subgroup_fixture():
    # x * 2 = 0 mod 4 over Z/4: kernel {0, 2}
    canon = linalg.kernel_subgroup([(2,)], (4,), (4,))
    assert frozenset(linalg.enumerate_subgroup(canon, (4,))) == {(0,), (2,)}


def test_integer_kernel():
    ker = linalg.integer_kernel([(2, 4)], 2)
    # left kernel of the 1x2 matrix inside Z^1 is trivial
    assert ker == ()
    ker = linalg.integer_kernel([(1, 1), (1, 1)], 2)
    assert len(ker) == 1
    x = ker[0]
    assert x[0] + x[1] == 0
