"""Hom groups, endomorphism rings, traces, products and summand tests.

Hom_R(M, N) is computed exactly: an integer matrix F represents an R-map
iff it commutes with every action matrix and is well-defined modulo the
codomain moduli.  Both conditions are linear congruences in the entries of
F, so the full hom group falls out of one congruence-system solve as a
subgroup of ⊕ Z/d^N in invariant-factor form.  Nothing here needs an
enumeration cap except the explicit hom-enumeration helpers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterator, Optional, Sequence

from . import linalg
from .linalg import IntMatrix, IntVector
from .modules import (
    FiniteModule,
    ModuleHom,
    Submodule,
    coordinates_in_subgroup,
    extract,
    identity_hom,
    submodule_coordinates,
    zero_submodule,
)
from .rings import FiniteRing, RingElement
from .verdicts import CapExceeded


@dataclass(frozen=True)
class HomGroup:
    """Hom_R(M, N) as an abelian group with matrix generators.

    ``orders`` are the invariant factors (each > 1, dividing chain), so every
    hom is uniquely sum(c_i * gens_i) with 0 <= c_i < orders_i and
    |Hom| = prod(orders).
    """

    domain: FiniteModule
    codomain: FiniteModule
    gens: tuple[ModuleHom, ...]
    orders: tuple[int, ...]

    def size(self) -> int:
        return prod(self.orders)

    def from_coords(self, coords: Sequence[int]) -> ModuleHom:
        rows = [[0] * self.codomain.rank for _ in range(self.domain.rank)]
        for c, g in zip(coords, self.gens):
            if not c:
                continue
            for i in range(self.domain.rank):
                grow = g.matrix[i]
                row = rows[i]
                for j in range(self.codomain.rank):
                    row[j] += c * grow[j]
        mat = tuple(linalg.vec_mod(r, self.codomain.moduli) for r in rows)
        return ModuleHom(self.domain, self.codomain, mat)

    def coords_of(self, h: ModuleHom) -> IntVector:
        """Unique coefficient vector of a hom over the generators."""
        flat_gens = [
            tuple(v for row in g.matrix for v in row) for g in self.gens
        ]
        flat_target = tuple(v for row in h.matrix for v in row)
        out_moduli = tuple(
            self.codomain.moduli[j]
            for _ in range(self.domain.rank)
            for j in range(self.codomain.rank)
        )
        solved = linalg.solve_congruence_system(
            flat_gens, flat_target, out_moduli, self.orders
        )
        if solved is None:
            raise ValueError("matrix is not an R-homomorphism in this hom group")
        particular, homogeneous = solved
        assert homogeneous == ()
        return particular

    def iter_homs(self) -> Iterator[ModuleHom]:
        for coords in itertools.product(*(range(o) for o in self.orders)):
            yield self.from_coords(coords)

    def enumerate_homs(self, cap: int) -> list[ModuleHom]:
        if self.size() > cap:
            raise CapExceeded(self.size(), cap, "homomorphisms")
        return list(self.iter_homs())


def _hom_system(dom: FiniteModule, cod: FiniteModule) -> tuple[list[list[int]], tuple[int, ...], tuple[int, ...]]:
    """Linear system whose solutions (flattened F) are exactly the R-maps."""
    nd, nc = dom.rank, cod.rank
    unknowns = nd * nc
    idx = lambda i, j: i * nc + j
    columns: list[list[int]] = []
    out_moduli: list[int] = []

    def new_eq(modulus: int) -> list[int]:
        col = [0] * unknowns
        columns.append(col)
        out_moduli.append(modulus)
        return col

    for t in range(dom.ring.basis_count):
        rho_d = dom.action[t]
        rho_c = cod.action[t]
        for u in range(nd):
            for v in range(nc):
                eq = new_eq(cod.moduli[v])
                for i in range(nd):
                    eq[idx(i, v)] += rho_d[u][i]
                for j in range(nc):
                    eq[idx(u, j)] -= rho_c[j][v]
    for i in range(nd):
        for j in range(nc):
            eq = new_eq(cod.moduli[j])
            eq[idx(i, j)] = dom.moduli[i]

    # transpose: unknowns index rows, equations index columns
    a = [[columns[e][x] for e in range(len(columns))] for x in range(unknowns)]
    in_moduli = tuple(cod.moduli[j] for i in range(nd) for j in range(nc))
    return a, tuple(out_moduli), in_moduli


@lru_cache(maxsize=None)
def hom_group(dom: FiniteModule, cod: FiniteModule) -> HomGroup:
    """Compute Hom_R(M, N) exactly (no caps involved)."""
    if dom.ring != cod.ring:
        raise ValueError("hom_group requires modules over the same ring")
    nd, nc = dom.rank, cod.rank
    if nd == 0 or nc == 0:
        return HomGroup(dom, cod, (), ())
    a, out_moduli, in_moduli = _hom_system(dom, cod)
    solutions = linalg.kernel_subgroup(a, out_moduli, in_moduli)
    gens, orders = linalg.subgroup_structure(solutions, in_moduli)
    hom_gens = tuple(
        ModuleHom(dom, cod, tuple(tuple(flat[i * nc:(i + 1) * nc]) for i in range(nd)))
        for flat in gens
    )
    return HomGroup(dom, cod, hom_gens, orders)


def kernel(h: ModuleHom) -> Submodule:
    """Ker h, via the homogeneous solutions of x @ F = 0 (mod codomain)."""
    canon = linalg.kernel_subgroup(h.matrix, h.codomain.moduli, h.domain.moduli)
    return Submodule(h.domain, canon)


def image(h: ModuleHom) -> Submodule:
    """Im h; the rows of the matrix generate it, and it is action-closed."""
    canon = linalg.subgroup_canonical_form(h.matrix, h.codomain.moduli)
    return Submodule(h.codomain, canon)


# ---------------------------------------------------------------------------
# Endomorphism rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndRingBundle:
    """End_R(M) as a FiniteRing plus exact dictionaries to/from matrix homs.

    Ring multiplication is composition: the product x*y maps to the
    endomorphism "apply to_hom(y) first, then to_hom(x)", matching the usual
    left-action composition (x∘y)(m) = x(y(m)).
    """

    module: FiniteModule
    ring: FiniteRing
    homs: HomGroup

    def to_hom(self, x: RingElement) -> ModuleHom:
        return self.homs.from_coords(x.coords)

    def from_hom(self, h: ModuleHom) -> RingElement:
        return self.ring.element(self.homs.coords_of(h))

    def identity(self) -> RingElement:
        return self.ring.one_element()


@lru_cache(maxsize=None)
def end_ring(m: FiniteModule) -> EndRingBundle:
    """Build End_R(M) with structure constants from composing generators."""
    homs = hom_group(m, m)
    k = len(homs.gens)
    mul = []
    for i in range(k):
        row = []
        for j in range(k):
            # b_i * b_j  =  g_j-then-g_i  (composition g_i ∘ g_j)
            composed = homs.gens[j].then(homs.gens[i])
            row.append(homs.coords_of(composed))
        mul.append(tuple(row))
    one = homs.coords_of(identity_hom(m)) if k else ()
    ring = FiniteRing(
        moduli=homs.orders, mul=tuple(mul), one=one,
        name=f"End({m.name})" if m.name else "End",
    )
    return EndRingBundle(module=m, ring=ring, homs=homs)


# ---------------------------------------------------------------------------
# Traces, products, invariance and summands
# ---------------------------------------------------------------------------


def trace(source: FiniteModule, target: FiniteModule) -> Submodule:
    """Sum of the images of all homs source -> target (a submodule of target)."""
    homs = hom_group(source, target)
    rows = [row for g in homs.gens for row in g.matrix]
    canon = linalg.subgroup_canonical_form(rows, target.moduli)
    return Submodule(target, canon)


@lru_cache(maxsize=None)
def is_m_generated(n: Submodule) -> bool:
    """n is an epimorphic image of copies of its ambient module.

    For finite modules this is equivalent to the trace of the ambient in
    the extracted module being everything.
    """
    inner, _ = extract(n)
    return trace(n.ambient, inner).order() == inner.size()


def m_generated_submodules(m: FiniteModule, cap: int) -> list[Submodule]:
    from .modules import enumerate_submodules

    return [n for n in enumerate_submodules(m, cap) if is_m_generated(n)]


def product_submodules(k: Submodule, l: Submodule) -> Submodule:
    """The submodule product K_M L = sum of f(L) over f in Hom(M, K).

    Both K and L live in the same ambient M; homs into the extracted K are
    pushed back into M through the inclusion.
    """
    if k.ambient != l.ambient:
        raise ValueError("product: submodules of different modules")
    m = k.ambient
    inner_k, inc = extract(k)
    homs = hom_group(m, inner_k)
    rows = []
    for g in homs.gens:
        into_m = g.then(inc)
        for x in l.gens:
            rows.append(into_m.apply(x))
    canon = linalg.subgroup_canonical_form(rows, m.moduli)
    return Submodule(m, canon)


@lru_cache(maxsize=None)
def is_fully_invariant(n: Submodule) -> bool:
    """phi(n) inside n for every endomorphism; generators of End suffice."""
    bundle_homs = hom_group(n.ambient, n.ambient)
    for g in bundle_homs.gens:
        for x in n.gens:
            if not n.contains(g.apply(x)):
                return False
    return True


@lru_cache(maxsize=None)
def summand_test(n: Submodule) -> Optional[ModuleHom]:
    """Idempotent projection of the ambient module onto n, if one exists.

    Solves the linear system: E is an endomorphism, every row of E lies in
    the subgroup of n (via auxiliary coefficients), and E fixes each
    canonical generator of n.  A solution is automatically an idempotent
    with image exactly n.
    """
    m = n.ambient
    nm = m.rank
    if nm == 0:
        return identity_hom(m)
    gens, orders = submodule_coordinates(n)
    ng = len(gens)
    unknowns = nm * nm + nm * ng  # E entries then coefficient rows
    e_idx = lambda i, j: i * nm + j
    c_idx = lambda i, l: nm * nm + i * ng + l

    columns: list[list[int]] = []
    out_moduli: list[int] = []
    rhs: list[int] = []

    def new_eq(modulus: int, b: int = 0) -> list[int]:
        col = [0] * unknowns
        columns.append(col)
        out_moduli.append(modulus)
        rhs.append(b % modulus)
        return col

    for t in range(m.ring.basis_count):
        rho = m.action[t]
        for u in range(nm):
            for v in range(nm):
                eq = new_eq(m.moduli[v])
                for i in range(nm):
                    eq[e_idx(i, v)] += rho[u][i]
                for j in range(nm):
                    eq[e_idx(u, j)] -= rho[j][v]
    for i in range(nm):
        for j in range(nm):
            eq = new_eq(m.moduli[j])
            eq[e_idx(i, j)] = m.moduli[i]
    # row i of E = sum_l c_{i,l} * gens_l
    for i in range(nm):
        for j in range(nm):
            eq = new_eq(m.moduli[j])
            eq[e_idx(i, j)] = 1
            for l in range(ng):
                eq[c_idx(i, l)] = -gens[l][j]
    # E fixes the canonical generators of n
    for g in n.gens:
        for j in range(nm):
            eq = new_eq(m.moduli[j], b=g[j])
            for i in range(nm):
                eq[e_idx(i, j)] += g[i]

    a = [[columns[e][x] for e in range(len(columns))] for x in range(unknowns)]
    in_moduli = tuple(
        [m.moduli[j] for i in range(nm) for j in range(nm)]
        + [orders[l] for i in range(nm) for l in range(ng)]
    )
    solved = linalg.solve_congruence_system(a, tuple(rhs), tuple(out_moduli), in_moduli)
    if solved is None:
        return None
    particular, _ = solved
    mat = tuple(
        tuple(particular[e_idx(i, j)] % m.moduli[j] for j in range(nm)) for i in range(nm)
    )
    proj = ModuleHom(m, m, mat)
    assert proj.then(proj).matrix == proj.matrix
    assert image(proj).gens == n.gens
    return proj


# ---------------------------------------------------------------------------
# Isomorphism / embedding search
# ---------------------------------------------------------------------------


def find_isomorphism(a: FiniteModule, b: FiniteModule, cap: int) -> Optional[ModuleHom]:
    """A bijective R-hom a -> b, or None; raises CapExceeded past the cap.

    Quick-rejects on additive invariants before enumerating Hom(a, b).
    """
    if linalg.abelian_group_type(a.moduli) != linalg.abelian_group_type(b.moduli):
        return None
    homs = hom_group(a, b)
    size_b = b.size()
    for h in homs.enumerate_homs(cap):
        if image(h).order() == size_b and kernel(h).order() == 1:
            return h
    return None


def find_embedding(a: FiniteModule, b: FiniteModule, cap: int) -> Optional[ModuleHom]:
    """An injective R-hom a -> b, or None; raises CapExceeded past the cap."""
    if a.size() > b.size() or b.size() % a.size():
        return None
    homs = hom_group(a, b)
    for h in homs.enumerate_homs(cap):
        if kernel(h).order() == 1:
            return h
    return None
