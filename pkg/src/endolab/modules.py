"""Finite right modules over a structure-constant ring.

A module is an additive group ⊕ Z/d_j together with one action matrix per
ring basis element, using the row-vector convention: elements are rows and
``x * r = x @ rho(r)`` with rho extended additively.  With this convention
rho is a multiplicative homomorphism, so right modules need no
anti-homomorphism bookkeeping.

Submodules are identified by the canonical generator matrix of their
underlying subgroup; since the subgroup is action-closed, the canonical
form is a bit-exact identity for the submodule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterator, Optional, Sequence

from . import linalg
from .linalg import IntMatrix, IntVector, ModuliVector
from .rings import FiniteRing, RingElement
from .verdicts import CapExceeded


@dataclass(frozen=True)
class FiniteModule:
    ring: FiniteRing
    moduli: ModuliVector
    action: tuple[IntMatrix, ...]  # one rank x rank matrix per ring basis element
    name: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def size(self) -> int:
        return prod(self.moduli)

    def rho(self, r: Sequence[int]) -> IntMatrix:
        """Action matrix of the ring element with coordinates r."""
        n = self.rank
        out = [[0] * n for _ in range(n)]
        for t, coeff in enumerate(r):
            if not coeff:
                continue
            mat = self.action[t]
            for i in range(n):
                row = mat[i]
                orow = out[i]
                for j in range(n):
                    orow[j] += coeff * row[j]
        return tuple(linalg.vec_mod(row, self.moduli) for row in out)

    def act(self, x: Sequence[int], r: Sequence[int]) -> IntVector:
        return linalg.vec_mod(linalg.vec_mat(x, self.rho(r)), self.moduli)

    def reduce(self, x: Sequence[int]) -> IntVector:
        return linalg.vec_mod(x, self.moduli)

    def zero(self) -> IntVector:
        return (0,) * self.rank

    def elements(self) -> Iterator[IntVector]:
        return itertools.product(*(range(d) for d in self.moduli))


@dataclass(frozen=True)
class ModuleHom:
    """R-linear map between finite modules, as a rank_dom x rank_cod matrix."""

    domain: FiniteModule
    codomain: FiniteModule
    matrix: IntMatrix

    def apply(self, x: Sequence[int]) -> IntVector:
        if not self.matrix:  # rank-0 domain: the only value is 0
            return self.codomain.zero()
        return linalg.vec_mod(linalg.vec_mat(x, self.matrix), self.codomain.moduli)

    def then(self, nxt: "ModuleHom") -> "ModuleHom":
        """Diagrammatic composition: apply self first, then ``nxt``."""
        if self.codomain != nxt.domain:
            raise ValueError("composition mismatch")
        mat = linalg.mat_mod(linalg.mat_mul(self.matrix, nxt.matrix), nxt.codomain.moduli)
        return ModuleHom(self.domain, nxt.codomain, mat)

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise ValueError("hom addition mismatch")
        mat = tuple(
            linalg.vec_mod([a + b for a, b in zip(r1, r2)], self.codomain.moduli)
            for r1, r2 in zip(self.matrix, other.matrix)
        )
        return ModuleHom(self.domain, self.codomain, mat)

    def scale(self, k: int) -> "ModuleHom":
        mat = tuple(
            linalg.vec_mod([k * v for v in row], self.codomain.moduli)
            for row in self.matrix
        )
        return ModuleHom(self.domain, self.codomain, mat)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)


def identity_hom(m: FiniteModule) -> ModuleHom:
    return ModuleHom(m, m, linalg.identity_matrix(m.rank))


def zero_hom(dom: FiniteModule, cod: FiniteModule) -> ModuleHom:
    return ModuleHom(dom, cod, linalg.zero_matrix(dom.rank, cod.rank))


def is_module_hom(h: ModuleHom) -> bool:
    """Well-defined mod codomain moduli and commutes with every action matrix."""
    dm, cm = h.domain.moduli, h.codomain.moduli
    for i in range(h.domain.rank):
        for j in range(h.codomain.rank):
            if (dm[i] * h.matrix[i][j]) % cm[j]:
                return False
    for t in range(h.domain.ring.basis_count):
        lhs = linalg.mat_mod(linalg.mat_mul(h.domain.action[t], h.matrix), cm)
        rhs = linalg.mat_mod(linalg.mat_mul(h.matrix, h.codomain.action[t]), cm)
        if lhs != rhs:
            return False
    return True


def validate_module(m: FiniteModule) -> tuple[bool, str]:
    """Check the right-module laws on the presentation; (ok, first violation)."""
    ring = m.ring
    k = ring.basis_count
    n = m.rank
    if any(d < 1 for d in m.moduli):
        return False, "moduli: every additive order must be >= 1"
    if len(m.action) != k:
        return False, "action: one matrix per ring basis element required"
    for t in range(k):
        mat = m.action[t]
        if len(mat) != n or any(len(row) != n for row in mat):
            return False, f"action[{t}]: matrix must be {n} x {n}"
        for j in range(n):
            for s in range(n):
                if (m.moduli[j] * mat[j][s]) % m.moduli[s]:
                    return False, f"action[{t}]: row {j} not annihilated by its order"
    if linalg.mat_mod(m.rho(ring.one), m.moduli) != linalg.mat_mod(
        linalg.identity_matrix(n), m.moduli
    ):
        return False, "identity action: rho(one) must act as the identity"
    for i in range(k):
        for j in range(k):
            basis_i = tuple(1 if t == i else 0 for t in range(k))
            basis_j = tuple(1 if t == j else 0 for t in range(k))
            lhs = linalg.mat_mod(linalg.mat_mul(m.action[i], m.action[j]), m.moduli)
            rhs = m.rho(ring.mul_coords(basis_i, basis_j))
            if lhs != rhs:
                return False, f"multiplicativity: rho(b_{i})rho(b_{j}) != rho(b_{i} b_{j})"
    return True, ""


def regular_module(ring: FiniteRing, name: str = "") -> FiniteModule:
    """The ring acting on itself by right multiplication."""
    k = ring.basis_count
    action = []
    for t in range(k):
        basis = tuple(1 if s == t else 0 for s in range(k))
        action.append(ring.right_mul_matrix(basis))
    return FiniteModule(
        ring=ring, moduli=ring.moduli, action=tuple(action),
        name=name or (f"{ring.name}-regular" if ring.name else "regular"),
    )


def zero_module(ring: FiniteRing) -> FiniteModule:
    return FiniteModule(ring=ring, moduli=(), action=((),) * ring.basis_count, name="0")


def direct_sum(
    summands: Sequence[FiniteModule],
) -> tuple[FiniteModule, list[ModuleHom], list[ModuleHom]]:
    """Block-diagonal direct sum with its embeddings and projections."""
    if not summands:
        raise ValueError("direct_sum of an empty family is ambiguous; pass the ring's zero module")
    ring = summands[0].ring
    if any(m.ring != ring for m in summands):
        raise ValueError("direct_sum requires all summands over the same ring")
    moduli = tuple(d for m in summands for d in m.moduli)
    total = len(moduli)
    action = []
    for t in range(ring.basis_count):
        mat = [[0] * total for _ in range(total)]
        off = 0
        for m in summands:
            block = m.action[t]
            for i in range(m.rank):
                for j in range(m.rank):
                    mat[off + i][off + j] = block[i][j]
            off += m.rank
        action.append(tuple(tuple(row) for row in mat))
    name = " + ".join(m.name or "?" for m in summands)
    big = FiniteModule(ring=ring, moduli=moduli, action=tuple(action), name=name)
    embeddings = []
    projections = []
    off = 0
    for m in summands:
        emb = [[0] * total for _ in range(m.rank)]
        prj = [[0] * m.rank for _ in range(total)]
        for i in range(m.rank):
            emb[i][off + i] = 1
            prj[off + i][i] = 1
        embeddings.append(ModuleHom(m, big, tuple(tuple(r) for r in emb)))
        projections.append(ModuleHom(big, m, tuple(tuple(r) for r in prj)))
        off += m.rank
    return big, embeddings, projections


# ---------------------------------------------------------------------------
# Submodules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Submodule:
    """Action-closed subgroup in canonical generator form."""

    ambient: FiniteModule
    gens: IntMatrix

    def order(self) -> int:
        return linalg.subgroup_order(self.gens, self.ambient.moduli)

    def contains(self, x: Sequence[int]) -> bool:
        return linalg.subgroup_membership(x, self.gens, self.ambient.moduli)

    def contains_sub(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_full(self) -> bool:
        return self.order() == self.ambient.size()

    def elements(self) -> list[IntVector]:
        return linalg.enumerate_subgroup(self.gens, self.ambient.moduli)


def zero_submodule(m: FiniteModule) -> Submodule:
    return Submodule(m, ())


def full_submodule(m: FiniteModule) -> Submodule:
    gens = linalg.identity_matrix(m.rank)
    return Submodule(m, linalg.subgroup_canonical_form(gens, m.moduli))


def submodule_generated(m: FiniteModule, elems: Sequence[Sequence[int]]) -> Submodule:
    """Smallest action-closed subgroup containing ``elems``.

    Closure: push the current generators through every basis action matrix
    and re-canonicalize until the canonical form stops changing.
    """
    canon = linalg.subgroup_canonical_form([m.reduce(x) for x in elems], m.moduli)
    while True:
        rows = list(canon)
        for g in canon:
            for t in range(m.ring.basis_count):
                rows.append(linalg.vec_mod(linalg.vec_mat(g, m.action[t]), m.moduli))
        nxt = linalg.subgroup_canonical_form(rows, m.moduli)
        if nxt == canon:
            return Submodule(m, canon)
        canon = nxt


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    if a.ambient != b.ambient:
        raise ValueError("submodule sum: ambient mismatch")
    canon = linalg.subgroup_canonical_form(a.gens + b.gens, a.ambient.moduli)
    return Submodule(a.ambient, canon)


def submodule_intersect(a: Submodule, b: Submodule) -> Submodule:
    if a.ambient != b.ambient:
        raise ValueError("submodule intersection: ambient mismatch")
    canon = linalg.subgroup_intersection(a.gens, b.gens, a.ambient.moduli)
    return Submodule(a.ambient, canon)


@lru_cache(maxsize=None)
def enumerate_submodules(m: FiniteModule, cap: int) -> tuple[Submodule, ...]:
    """Every submodule, canonical and duplicate-free.

    Seeds with the cyclic submodules and closes the set under pairwise sums;
    correct because every submodule is a sum of cyclic ones.
    """
    total = m.size()
    if total > cap:
        raise CapExceeded(total, cap, "module elements")
    seen: dict[IntMatrix, Submodule] = {}
    zero = zero_submodule(m)
    seen[zero.gens] = zero
    cyclic = []
    for x in m.elements():
        sub = submodule_generated(m, [x])
        if sub.gens not in seen:
            seen[sub.gens] = sub
            cyclic.append(sub)
    frontier = list(cyclic)
    while frontier:
        fresh = []
        for a in frontier:
            for b in cyclic:
                s = submodule_sum(a, b)
                if s.gens not in seen:
                    seen[s.gens] = s
                    fresh.append(s)
        frontier = fresh
    return tuple(sorted(seen.values(), key=lambda s: (s.order(), s.gens)))


def maximal_submodules(m: FiniteModule, cap: int) -> list[Submodule]:
    subs = enumerate_submodules(m, cap)
    proper = [s for s in subs if not s.is_full()]
    out = []
    for s in proper:
        if not any(t is not s and t.order() > s.order() and t.contains_sub(s) for t in proper):
            out.append(s)
    return out


def radical(m: FiniteModule, cap: int) -> Submodule:
    """Intersection of the maximal submodules (the whole module if none)."""
    maxes = maximal_submodules(m, cap)
    if not maxes:
        return full_submodule(m)
    acc = maxes[0]
    for s in maxes[1:]:
        acc = submodule_intersect(acc, s)
    return acc


def socle(m: FiniteModule, cap: int) -> Submodule:
    subs = enumerate_submodules(m, cap)
    nonzero = [s for s in subs if not s.is_zero()]
    minimal = [
        s for s in nonzero
        if not any(t is not s and not t.is_zero() and t.order() < s.order() and s.contains_sub(t) for t in nonzero)
    ]
    acc = zero_submodule(m)
    for s in minimal:
        acc = submodule_sum(acc, s)
    return acc


def is_simple(m: FiniteModule, cap: int) -> bool:
    return len(enumerate_submodules(m, cap)) == 2


def is_essential(n: Submodule, cap: int) -> bool:
    """n meets every nonzero submodule of its ambient nontrivially."""
    for k in enumerate_submodules(n.ambient, cap):
        if not k.is_zero() and submodule_intersect(n, k).is_zero():
            return False
    return True


def is_essentially_closed(n: Submodule, cap: int) -> bool:
    """No proper essential extension of n inside the ambient module.

    n is essential in a submodule L iff n meets every nonzero submodule
    contained in L; submodules of L are exactly the ambient submodules
    inside L.
    """
    subs = enumerate_submodules(n.ambient, cap)
    for l in subs:
        if l.gens == n.gens or not l.contains_sub(n) or l.order() <= n.order():
            continue
        essential_in_l = all(
            not submodule_intersect(n, k).is_zero()
            for k in subs
            if not k.is_zero() and l.contains_sub(k)
        )
        if essential_in_l:
            return False
    return True


# ---------------------------------------------------------------------------
# Quotients and extraction
# ---------------------------------------------------------------------------


def quotient(m: FiniteModule, n: Submodule) -> tuple[FiniteModule, ModuleHom]:
    """M/N with its canonical projection.

    Coordinates come from the Smith form of the lifted lattice of N, so
    repeated quotient calls are bit-identical.  Coordinates of order 1 are
    dropped (the zero module has empty moduli).
    """
    if n.ambient != m:
        raise ValueError("quotient: submodule of a different module")
    k = m.rank
    basis = linalg.lattice_basis(n.gens, m.moduli)
    _, _, s, v, vinv = linalg.snf_with_inverses(basis) if k else ((), (), (), (), ())
    orders = tuple(s[i][i] for i in range(k))
    kept = [i for i in range(k) if orders[i] > 1]
    qmod = tuple(orders[i] for i in kept)
    # projection: x -> (x @ Vinv) restricted to kept coordinates
    proj = tuple(
        tuple(vinv[r][i] % qmod[t] for t, i in enumerate(kept)) for r in range(k)
    )
    # lift: kept coordinate i -> row i of V
    lift = tuple(tuple(v[i]) for i in kept)
    action = []
    for t in range(m.ring.basis_count):
        mat = linalg.mat_mul(linalg.mat_mul(lift, m.action[t]), [
            [vinv[r][i] for i in kept] for r in range(k)
        ])
        action.append(tuple(linalg.vec_mod(row, qmod) for row in mat))
    q = FiniteModule(
        ring=m.ring, moduli=qmod, action=tuple(action),
        name=f"({m.name})/N" if m.name else "quotient",
    )
    return q, ModuleHom(m, q, proj)


@lru_cache(maxsize=None)
def submodule_coordinates(n: Submodule) -> tuple[IntMatrix, tuple[int, ...]]:
    """Invariant-factor generators and orders of the subgroup under n."""
    return linalg.subgroup_structure(n.gens, n.ambient.moduli)


@lru_cache(maxsize=None)
def extract(n: Submodule) -> tuple[FiniteModule, ModuleHom]:
    """A standalone module isomorphic to n, with its inclusion hom.

    Coordinates are the invariant-factor generators of the subgroup, so the
    extraction is canonical per submodule.
    """
    m = n.ambient
    gens, orders = submodule_coordinates(n)
    inner = FiniteModule(
        ring=m.ring,
        moduli=orders,
        action=_extracted_action(m, gens, orders),
        name=f"sub({m.name})" if m.name else "sub",
    )
    return inner, ModuleHom(inner, m, gens)


def _extracted_action(
    m: FiniteModule, gens: IntMatrix, orders: tuple[int, ...]
) -> tuple[IntMatrix, ...]:
    action = []
    for t in range(m.ring.basis_count):
        rows = []
        for g in gens:
            image = linalg.vec_mod(linalg.vec_mat(g, m.action[t]), m.moduli)
            rows.append(coordinates_in_subgroup(image, gens, orders, m.moduli))
        action.append(tuple(rows))
    return tuple(action)


def coordinates_in_subgroup(
    x: Sequence[int], gens: IntMatrix, orders: tuple[int, ...], m: ModuliVector
) -> IntVector:
    """Unique coefficients c with sum(c_i * gens_i) = x in ⊕ Z/m."""
    solved = linalg.solve_congruence_system(gens, linalg.vec_mod(x, m), m, orders)
    if solved is None:
        raise ValueError("element lies outside the subgroup")
    particular, homogeneous = solved
    assert homogeneous == (), "invariant-factor generators must give unique coordinates"
    return particular
