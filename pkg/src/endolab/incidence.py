"""Finite preorders, their incidence algebras over a commutative base ring,
and the coordinate-tuple module construction.

The incidence algebra I(X, A) has one basis block e_{xy} per comparable pair
xRy; the product is convolution, so e_{xy} e_{zw} = e_{xw} when y = z (the
pair (x, w) is comparable by transitivity) and 0 otherwise.  A must be
commutative so scalars slide past the pair basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .homs import end_ring
from .modules import FiniteModule, ModuleHom, is_module_hom, submodule_generated
from .rings import FiniteRing, validate_ring
from .verdicts import CapExceeded


class NonCommutativeBase(ValueError):
    """Incidence algebras are only built over commutative coefficient rings."""


class NotCyclic(ValueError):
    """The endomorphism comparison needs a cyclic coefficient module."""


class NoBottomElement(ValueError):
    """The endomorphism comparison needs an element below every other."""


@dataclass(frozen=True)
class Preorder:
    """Finite reflexive transitive relation on named elements."""

    elements: tuple[str, ...]
    relation: tuple[tuple[bool, ...], ...]

    def leq(self, x: str, y: str) -> bool:
        return self.relation[self.elements.index(x)][self.elements.index(y)]

    def pairs(self) -> list[tuple[int, int]]:
        """Comparable index pairs in row-major order: the algebra basis."""
        n = len(self.elements)
        return [(i, j) for i in range(n) for j in range(n) if self.relation[i][j]]

    def bottom(self) -> Optional[int]:
        for i in range(len(self.elements)):
            if all(self.relation[i]):
                return i
        return None


def preorder_from_pairs(
    elements: Sequence[str], related: Sequence[tuple[str, str]]
) -> Preorder:
    """Build a preorder from element names and related pairs.

    The reflexive closure is applied automatically; a non-transitive input is
    rejected rather than silently closed, since closure would change the
    algebra being asked about.
    """
    names = tuple(elements)
    if len(set(names)) != len(names):
        raise ValueError("duplicate element names")
    index = {x: i for i, x in enumerate(names)}
    n = len(names)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for x, y in related:
        if x not in index or y not in index:
            raise ValueError(f"relation pair ({x}, {y}) names an unknown element")
        rel[index[x]][index[y]] = True
    for i, k, j in itertools.product(range(n), repeat=3):
        if rel[i][k] and rel[k][j] and not rel[i][j]:
            raise ValueError(
                f"relation is not transitive: {names[i]} R {names[k]} R {names[j]} "
                f"but not {names[i]} R {names[j]}"
            )
    return Preorder(names, tuple(tuple(r) for r in rel))


def validate_preorder(x: Preorder) -> bool:
    n = len(x.elements)
    if len(x.relation) != n or any(len(r) != n for r in x.relation):
        return False
    if any(not x.relation[i][i] for i in range(n)):
        return False
    for i, k, j in itertools.product(range(n), repeat=3):
        if x.relation[i][k] and x.relation[k][j] and not x.relation[i][j]:
            return False
    return True


def interval(x: Preorder, lo: str, hi: str) -> list[str]:
    """The segment {y : lo R y R hi}."""
    i, j = x.elements.index(lo), x.elements.index(hi)
    return [
        x.elements[k]
        for k in range(len(x.elements))
        if x.relation[i][k] and x.relation[k][j]
    ]


@dataclass(frozen=True)
class IncidenceAlgebraBundle:
    ring: FiniteRing
    base: FiniteRing
    preorder: Preorder
    pair_index: tuple[tuple[int, int], ...]

    def basis_position(self, pair: tuple[int, int], t: int) -> int:
        return self.pair_index.index(pair) * self.base.basis_count + t


def build_incidence_algebra(x: Preorder, a: FiniteRing) -> IncidenceAlgebraBundle:
    """The incidence algebra I(X, A) as an explicit structure-constant ring."""
    if not validate_preorder(x):
        raise ValueError("invalid preorder")
    for s, t in itertools.combinations(range(a.basis_count), 2):
        bs = [1 if i == s else 0 for i in range(a.basis_count)]
        bt = [1 if i == t else 0 for i in range(a.basis_count)]
        if a.mul_coords(bs, bt) != a.mul_coords(bt, bs):
            raise NonCommutativeBase("coefficient ring is not commutative")

    pairs = tuple(x.pairs())
    na = a.basis_count
    dim = len(pairs) * na
    moduli = tuple(a.moduli[t] for _ in pairs for t in range(na))

    pair_pos = {p: k for k, p in enumerate(pairs)}
    related = x.relation
    mul = []
    for (p, s) in ((p, s) for p in pairs for s in range(na)):
        row = []
        for (q, t) in ((q, t) for q in pairs for t in range(na)):
            coords = [0] * dim
            if p[1] == q[0] and related[p[0]][q[1]]:
                target = pair_pos[(p[0], q[1])]
                bs = [1 if i == s else 0 for i in range(na)]
                bt = [1 if i == t else 0 for i in range(na)]
                prod = a.mul_coords(bs, bt)
                for u in range(na):
                    coords[target * na + u] = prod[u]
            row.append(tuple(coords))
        mul.append(tuple(row))

    one = [0] * dim
    for i in range(len(x.elements)):
        k = pair_pos[(i, i)]
        for t in range(na):
            one[k * na + t] = a.one[t]

    ring = FiniteRing(
        moduli=moduli,
        mul=tuple(mul),
        one=tuple(one),
        name=f"I(X,{a.name})" if a.name else "I(X,A)",
    )
    ok, msg = validate_ring(ring)
    assert ok, msg
    return IncidenceAlgebraBundle(ring=ring, base=a, preorder=x, pair_index=pairs)


def build_mx(m: FiniteModule, bundle: IncidenceAlgebraBundle) -> FiniteModule:
    """M^(X) as a right module over I(X, A).

    A tuple (m_x) hit by f returns the tuple y ↦ Σ_x m_x f(x, y); on basis
    elements e_{uv} ⊗ a this moves block u to block v through the action
    of a and kills everything else.
    """
    a = bundle.base
    if m.ring != a:
        raise ValueError("module is not over the coefficient ring of the algebra")
    nx = len(bundle.preorder.elements)
    rank = m.rank
    na = a.basis_count
    moduli = m.moduli * nx

    action = []
    for p in bundle.pair_index:
        u, v = p
        for t in range(na):
            scalar = m.rho(tuple(1 if i == t else 0 for i in range(na)))
            rows = []
            for block in range(nx):
                for r in range(rank):
                    row = [0] * (nx * rank)
                    if block == u:
                        for c in range(rank):
                            row[v * rank + c] = scalar[r][c]
                    rows.append(tuple(row))
            action.append(tuple(rows))

    return FiniteModule(
        ring=bundle.ring,
        moduli=moduli,
        action=tuple(action),
        name=f"{m.name}(X)" if m.name else "M(X)",
    )


@dataclass(frozen=True)
class IsoReport:
    left_size: int
    right_size: int
    isomorphic: bool
    detail: str = ""


def is_cyclic(m: FiniteModule, cap: int) -> bool:
    if m.size() > cap:
        raise CapExceeded(m.size(), cap, "module elements")
    if m.size() == 1:
        return True
    return any(
        submodule_generated(m, [x]).is_full() for x in m.elements()
    )


def incend_check(
    m: FiniteModule, bundle: IncidenceAlgebraBundle, cap: int = 4096
) -> IsoReport:
    """Verify End_A(M) ≅ End_R(M(X)) for cyclic M and X with a bottom element.

    The candidate isomorphism sends φ to the blockwise map Φ((m_x)) = (φ(m_x));
    it is checked to be well defined, additive (it is matrix-linear by
    construction), multiplicative, unital, injective and surjective.
    """
    if bundle.preorder.bottom() is None:
        raise NoBottomElement("the preorder has no element below all others")
    if not is_cyclic(m, cap):
        raise NotCyclic("the coefficient module is not cyclic")

    mx = build_mx(m, bundle)
    left = end_ring(m)
    right = end_ring(mx)
    if left.homs.size() > cap or right.homs.size() > cap:
        raise CapExceeded(max(left.homs.size(), right.homs.size()), cap, "endomorphisms")

    nx = len(bundle.preorder.elements)
    rank = m.rank

    def lift(phi: ModuleHom) -> ModuleHom:
        mat = [[0] * (nx * rank) for _ in range(nx * rank)]
        for b in range(nx):
            for r in range(rank):
                for c in range(rank):
                    mat[b * rank + r][b * rank + c] = phi.matrix[r][c]
        return ModuleHom(mx, mx, tuple(tuple(row) for row in mat))

    images = set()
    lifted = {}
    for phi in left.homs.iter_homs():
        big = lift(phi)
        if not is_module_hom(big):
            return IsoReport(left.homs.size(), right.homs.size(), False,
                             "lift is not an R-module homomorphism")
        key = right.homs.coords_of(big)
        images.add(key)
        lifted[left.homs.coords_of(phi)] = (phi, big, key)

    if len(images) != left.homs.size():
        return IsoReport(left.homs.size(), right.homs.size(), False, "lift not injective")
    if len(images) != right.homs.size():
        return IsoReport(left.homs.size(), right.homs.size(), False, "lift not surjective")

    ident = lift(ModuleHom(m, m, linalg.identity_matrix(rank)))
    if right.homs.coords_of(ident) != right.homs.coords_of(
        ModuleHom(mx, mx, linalg.identity_matrix(nx * rank))
    ):
        return IsoReport(left.homs.size(), right.homs.size(), False, "lift not unital")

    items = list(lifted.values())
    for (phi, big_phi, _), (psi, big_psi, _) in itertools.product(items, repeat=2):
        if lift(psi.then(phi)).matrix != big_psi.then(big_phi).matrix:
            return IsoReport(left.homs.size(), right.homs.size(), False,
                             "lift not multiplicative")

    return IsoReport(left.homs.size(), right.homs.size(), True)
