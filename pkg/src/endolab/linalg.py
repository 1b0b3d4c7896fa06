"""Exact integer linear algebra over Z and over products of Z/m.

Everything downstream (rings, modules, hom computation) reduces to three
primitives implemented here:

* Smith normal form of an integer matrix, with the unimodular transforms
  and their inverses.
* Solving linear congruence systems ``x @ A = b (mod m)`` where each output
  coordinate carries its own modulus.
* A canonical (Howell/Hermite-style) generator matrix for subgroups of
  ``Z/m_1 x ... x Z/m_k``, so that subgroup equality is bit-equality.

All arithmetic uses Python's arbitrary-precision integers; intermediate
entries in a Smith reduction can exceed any fixed word size.

Matrices are tuples of tuples of ints (row-major).  Moduli vectors are
tuples of ints ``m_j >= 1``; ``m_j == 1`` marks a zero coordinate that is
kept positionally so embedding indices stay stable.
"""

from __future__ import annotations

from math import gcd, lcm, prod
from typing import Iterable, Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]
ModuliVector = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Raised when matrix/vector shapes or moduli lengths are incompatible."""


def as_matrix(rows: Iterable[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    if not b:
        return tuple(() for _ in a)
    cols = range(len(b[0]))
    return tuple(
        tuple(sum(ra[k] * b[k][j] for k in range(len(b))) for j in cols)
        for ra in a
    )


def vec_mat(x: Sequence[int], a: Sequence[Sequence[int]]) -> IntVector:
    if len(x) != len(a):
        raise DimensionMismatch(f"vector length {len(x)} vs {len(a)} rows")
    if not a:
        return ()
    cols = range(len(a[0]))
    return tuple(sum(x[k] * a[k][j] for k in range(len(a))) for j in cols)


def vec_mod(x: Sequence[int], m: ModuliVector) -> IntVector:
    if len(x) != len(m):
        raise DimensionMismatch(f"vector length {len(x)} vs {len(m)} moduli")
    return tuple(v % mm for v, mm in zip(x, m))


def mat_mod(a: Sequence[Sequence[int]], m: ModuliVector) -> IntMatrix:
    return tuple(vec_mod(row, m) for row in a)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


class _Transform:
    """Mutable S with accumulated U, Uinv, V, Vinv so that A = U S V always."""

    def __init__(self, a: Sequence[Sequence[int]]):
        self.s = [list(row) for row in a]
        self.rows = len(self.s)
        self.cols = len(self.s[0]) if self.s else 0
        self.u = [list(row) for row in identity_matrix(self.rows)]
        self.uinv = [list(row) for row in identity_matrix(self.rows)]
        self.v = [list(row) for row in identity_matrix(self.cols)]
        self.vinv = [list(row) for row in identity_matrix(self.cols)]

    # Row operations transform S on the left; U absorbs the inverse so that
    # U*S*V stays equal to the original matrix.

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.s[i], self.s[j] = self.s[j], self.s[i]
        self.uinv[i], self.uinv[j] = self.uinv[j], self.uinv[i]
        for row in self.u:
            row[i], row[j] = row[j], row[i]

    def row_addmul(self, src: int, dst: int, k: int) -> None:
        if k == 0:
            return
        srow, drow = self.s[src], self.s[dst]
        for c in range(self.cols):
            drow[c] += k * srow[c]
        srow, drow = self.uinv[src], self.uinv[dst]
        for c in range(self.rows):
            drow[c] += k * srow[c]
        for row in self.u:
            row[src] -= k * row[dst]

    def row_negate(self, i: int) -> None:
        self.s[i] = [-v for v in self.s[i]]
        self.uinv[i] = [-v for v in self.uinv[i]]
        for row in self.u:
            row[i] = -row[i]

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.s:
            row[i], row[j] = row[j], row[i]
        self.v[i], self.v[j] = self.v[j], self.v[i]
        for row in self.vinv:
            row[i], row[j] = row[j], row[i]

    def col_addmul(self, src: int, dst: int, k: int) -> None:
        if k == 0:
            return
        for row in self.s:
            row[dst] += k * row[src]
        vsrc, vdst = self.v[src], self.v[dst]
        for c in range(self.cols):
            vsrc[c] -= k * vdst[c]
        for row in self.vinv:
            row[dst] += k * row[src]

    def col_negate(self, i: int) -> None:
        for row in self.s:
            row[i] = -row[i]
        self.v[i] = [-v for v in self.v[i]]
        for row in self.vinv:
            row[i] = -row[i]


def _snf_full(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, Uinv, S, V, Vinv) with A = U S V, U and V unimodular."""
    t = _Transform(a)
    n = min(t.rows, t.cols)

    for pos in range(n):
        while True:
            # Locate the entry of least absolute value in the working block.
            best = None
            for i in range(pos, t.rows):
                row = t.s[i]
                for j in range(pos, t.cols):
                    v = row[j]
                    if v and (best is None or abs(v) < abs(t.s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            t.row_swap(pos, best[0])
            t.col_swap(pos, best[1])
            if t.s[pos][pos] < 0:
                t.row_negate(pos)
            pivot = t.s[pos][pos]
            dirty = False
            for i in range(pos + 1, t.rows):
                q = t.s[i][pos] // pivot
                t.row_addmul(pos, i, -q)
                if t.s[i][pos]:
                    dirty = True
            for j in range(pos + 1, t.cols):
                q = t.s[pos][j] // pivot
                t.col_addmul(pos, j, -q)
                if t.s[pos][j]:
                    dirty = True
            if not dirty:
                break

    # Enforce the divisibility chain d_1 | d_2 | ... with zeros last.
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            a_, b_ = t.s[i][i], t.s[i + 1][i + 1]
            if a_ == 0 and b_ != 0:
                t.row_swap(i, i + 1)
                t.col_swap(i, i + 1)
                changed = True
            elif a_ != 0 and b_ % a_ != 0:
                # Merge diag(a, b) into diag(gcd, lcm) via one extra column.
                t.col_addmul(i + 1, i, 1)
                while t.s[i + 1][i] or t.s[i][i + 1]:
                    if t.s[i + 1][i]:
                        if t.s[i][i] == 0 or (t.s[i + 1][i] and abs(t.s[i + 1][i]) < abs(t.s[i][i])):
                            t.row_swap(i, i + 1)
                        q = t.s[i + 1][i] // t.s[i][i]
                        t.row_addmul(i, i + 1, -q)
                    if t.s[i][i + 1]:
                        if t.s[i][i] == 0:
                            t.col_swap(i, i + 1)
                        q = t.s[i][i + 1] // t.s[i][i]
                        t.col_addmul(i, i + 1, -q)
                if t.s[i][i] < 0:
                    t.row_negate(i)
                if t.s[i + 1][i + 1] < 0:
                    t.row_negate(i + 1)
                changed = True

    for i in range(n):
        if t.s[i][i] < 0:
            t.row_negate(i)

    to_t = lambda m: tuple(tuple(row) for row in m)
    return to_t(t.u), to_t(t.uinv), to_t(t.s), to_t(t.v), to_t(t.vinv)


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: A = U @ S @ V with U, V unimodular.

    S is diagonal with nonnegative entries d_1 | d_2 | ..., zeros last.
    Total on all integer matrices, including empty ones.
    """
    u, _, s, v, _ = _snf_full(a)
    return u, s, v


def snf_with_inverses(
    a: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form returning (U, Uinv, S, V, Vinv) with A = U S V."""
    return _snf_full(a)


def snf_diagonal(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    _, _, s, _, _ = _snf_full(a)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)))


# ---------------------------------------------------------------------------
# Hermite normal form (row-style, upper echelon)
# ---------------------------------------------------------------------------


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> IntMatrix:
    """Row HNF of the lattice spanned by ``rows`` inside Z^ncols.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    Zero rows are dropped.  The result is the unique echelon basis of the
    row lattice, hence usable as a canonical form.
    """
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != ncols:
            raise DimensionMismatch(f"row length {len(r)} vs {ncols} columns")
    rank = 0
    pivot_cols = []
    for c in range(ncols):
        while True:
            nz = [i for i in range(rank, len(mat)) if mat[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][c]))
            mat[rank], mat[i0] = mat[i0], mat[rank]
            if mat[rank][c] < 0:
                mat[rank] = [-v for v in mat[rank]]
            head = mat[rank]
            clean = True
            for i in range(rank + 1, len(mat)):
                if mat[i][c]:
                    q = mat[i][c] // head[c]
                    mat[i] = [a - q * b for a, b in zip(mat[i], head)]
                    if mat[i][c]:
                        clean = False
            if clean:
                pivot_cols.append(c)
                rank += 1
                break
    mat = mat[:rank]
    # Reduce entries above each pivot into canonical range, left to right so
    # a reduction never dirties an already-canonical column.
    for k in range(rank):
        c = pivot_cols[k]
        piv = mat[k][c]
        for i in range(k):
            q = mat[i][c] // piv
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[k])]
    return tuple(tuple(r) for r in mat)


# ---------------------------------------------------------------------------
# Subgroups of  Z/m_1 x ... x Z/m_k
# ---------------------------------------------------------------------------


def lattice_basis(gens: Iterable[Sequence[int]], m: ModuliVector) -> IntMatrix:
    """Full-rank k x k HNF basis of the integer lattice lifting the subgroup.

    The subgroup of the finite group generated by ``gens`` corresponds to
    the lattice spanned by the generator rows together with diag(m); since
    diag(m) has full rank the HNF is square upper-triangular with diagonal
    entries dividing the moduli.
    """
    k = len(m)
    rows = [list(g) for g in gens]
    for g in rows:
        if len(g) != k:
            raise DimensionMismatch(f"generator length {len(g)} vs {k} moduli")
    for i in range(k):
        rows.append([m[i] if j == i else 0 for j in range(k)])
    return hermite_normal_form(rows, k)


def subgroup_canonical_form(gens: Iterable[Sequence[int]], m: ModuliVector) -> IntMatrix:
    """Canonical generator matrix of the subgroup generated by ``gens``.

    Two generator sets span the same subgroup iff their canonical forms are
    identical tuples.  The zero subgroup canonicalizes to the empty matrix.
    Rows whose pivot equals its modulus carry no information mod m and are
    dropped; the remaining HNF rows still generate the subgroup.
    """
    basis = lattice_basis(gens, m)
    kept = tuple(row for i, row in enumerate(basis) if row[i] != m[i])
    return kept


def subgroup_membership(x: Sequence[int], canon: Sequence[Sequence[int]], m: ModuliVector) -> bool:
    """True iff x lies in the subgroup with the given canonical form."""
    if len(x) != len(m):
        raise DimensionMismatch(f"vector length {len(x)} vs {len(m)} moduli")
    basis = lattice_basis(canon, m)
    rem = list(x)
    for i, row in enumerate(basis):
        if rem[i] % row[i]:
            return False
        q = rem[i] // row[i]
        if q:
            rem = [a - q * b for a, b in zip(rem, row)]
    return not any(rem)


def subgroup_order(canon: Sequence[Sequence[int]], m: ModuliVector) -> int:
    basis = lattice_basis(canon, m)
    index = prod(basis[i][i] for i in range(len(m)))
    return prod(m) // index if m else 1


def subgroup_structure(
    canon: Sequence[Sequence[int]], m: ModuliVector
) -> tuple[IntMatrix, tuple[int, ...]]:
    """Invariant-factor generators of a subgroup of the finite group.

    Returns rows g_1..g_r (reduced mod m) and orders s_1 | s_2 | ... > 1
    such that the subgroup is the internal direct sum of the cyclic groups
    <g_i> with |<g_i>| = s_i, and every element is uniquely
    sum(c_i * g_i) with 0 <= c_i < s_i.
    """
    k = len(m)
    basis = lattice_basis(canon, m)
    if k == 0:
        return (), ()
    # diag(m) = C @ basis; C is integer because diag(m) lies in the lattice.
    c_rows = []
    for i in range(k):
        rem = [m[i] if j == i else 0 for j in range(k)]
        coeff = [0] * k
        for j, row in enumerate(basis):
            q = rem[j] // row[j]
            coeff[j] = q
            if q:
                rem = [a - q * b for a, b in zip(rem, row)]
        assert not any(rem)
        c_rows.append(coeff)
    _, _, s, v, _ = _snf_full(c_rows)
    new_basis = mat_mul(v, basis)
    gens = []
    orders = []
    for i in range(k):
        o = s[i][i]
        if o > 1:
            gens.append(vec_mod(new_basis[i], m))
            orders.append(o)
    return tuple(gens), tuple(orders)


def enumerate_subgroup(canon: Sequence[Sequence[int]], m: ModuliVector) -> list[IntVector]:
    """All elements of the subgroup (for oracles and small-scale checks)."""
    gens, orders = subgroup_structure(canon, m)
    elems = [(0,) * len(m)]
    for g, o in zip(gens, orders):
        step = list(elems)
        cur = list(g)
        for _ in range(1, o):
            elems.extend(vec_mod([a + b for a, b in zip(e, cur)], m) for e in step)
            cur = [a + b for a, b in zip(cur, g)]
    return elems


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis of {z in Z^r : z @ M = 0} for the r x ncols matrix M."""
    r = len(rows)
    if r == 0:
        return ()
    _, uinv, s, _, _ = _snf_full(rows)
    free = [i for i in range(r) if i >= ncols or s[i][i] == 0]
    return tuple(tuple(uinv[i]) for i in free)


def subgroup_intersection(
    a_canon: Sequence[Sequence[int]],
    b_canon: Sequence[Sequence[int]],
    m: ModuliVector,
) -> IntMatrix:
    """Canonical form of the intersection of two subgroups of ⊕ Z/m_j.

    Works on the lifted lattices: both contain diag(m), so the intersection
    lattice does too and descends back to the subgroup intersection.
    """
    k = len(m)
    basis_a = lattice_basis(a_canon, m)
    basis_b = lattice_basis(b_canon, m)
    stacked = [list(r) for r in basis_a] + [[-v for v in r] for r in basis_b]
    kern = integer_kernel(stacked, k)
    rows = [vec_mat(z[:k], basis_a) for z in kern]
    return subgroup_canonical_form(rows, m)


# ---------------------------------------------------------------------------
# Congruence systems
# ---------------------------------------------------------------------------


def solve_congruence_system(
    a: Sequence[Sequence[int]],
    b: Sequence[int],
    out_moduli: ModuliVector,
    in_moduli: Optional[ModuliVector] = None,
) -> Optional[tuple[IntVector, IntMatrix]]:
    """Solve ``x @ A = b  (mod out_moduli coordinatewise)`` exactly.

    The unknown x has one coordinate per row of A.  ``in_moduli`` gives the
    modulus each coordinate of x is taken by (so the solution set is a coset
    inside the finite group ⊕ Z/in_moduli_i); it defaults to the lcm of the
    output moduli in every coordinate.  Each in_moduli[i] must annihilate
    row i of A modulo the output moduli, otherwise the reduction would be
    unsound and a ValueError is raised.

    Returns None when no solution exists, else ``(particular, homogeneous)``
    where ``homogeneous`` is the canonical generator matrix (over in_moduli)
    of the group of homogeneous solutions.  The coset
    particular + <homogeneous> enumerates the full solution set.
    """
    r = len(a)
    c = len(out_moduli)
    if len(b) != c:
        raise DimensionMismatch(f"rhs length {len(b)} vs {c} output moduli")
    for row in a:
        if len(row) != c:
            raise DimensionMismatch(f"row length {len(row)} vs {c} output moduli")

    if in_moduli is None:
        big = lcm(*out_moduli) if out_moduli else 1
        in_moduli = (big,) * r
    elif len(in_moduli) != r:
        raise DimensionMismatch(f"{len(in_moduli)} input moduli vs {r} rows")
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            if (in_moduli[i] * v) % out_moduli[j]:
                raise ValueError(
                    f"in_moduli[{i}]={in_moduli[i]} does not annihilate A[{i}][{j}]={v} "
                    f"mod {out_moduli[j]}"
                )

    stacked = [list(row) for row in a]
    for j in range(c):
        stacked.append([out_moduli[j] if t == j else 0 for t in range(c)])

    _, uinv, s, _, vinv = _snf_full(stacked)
    bp = vec_mat(b, vinv)
    total = r + c
    w = [0] * total
    free = []
    for i in range(total):
        si = s[i][i] if i < c else 0
        if si == 0:
            free.append(i)
            if i < c and bp[i] != 0:
                return None
        else:
            if bp[i] % si:
                return None
            w[i] = bp[i] // si
    # Diagonal indices only exist below c; any bp beyond c is vacuous.
    for i in range(c, total):
        pass
    z = vec_mat(w, uinv)
    particular = vec_mod(z[:r], in_moduli)

    hom_rows = [uinv[i][:r] for i in free]
    homogeneous = subgroup_canonical_form(hom_rows, in_moduli)
    return particular, homogeneous


def kernel_subgroup(
    a: Sequence[Sequence[int]],
    out_moduli: ModuliVector,
    in_moduli: ModuliVector,
) -> IntMatrix:
    """Canonical generators of {x : x @ A = 0 (mod out_moduli)} over in_moduli."""
    solved = solve_congruence_system(a, (0,) * len(out_moduli), out_moduli, in_moduli)
    assert solved is not None
    _, homogeneous = solved
    return homogeneous


def abelian_group_type(m: ModuliVector) -> tuple[int, ...]:
    """Invariant factors (>1) of ⊕ Z/m_i, a canonical additive isomorphism type."""
    if not m:
        return ()
    k = len(m)
    diag = [[m[i] if j == i else 0 for j in range(k)] for i in range(k)]
    return tuple(d for d in snf_diagonal(diag) if d > 1)
