"""Decision procedures for module-level regularity and the theorem suites.

Every predicate that the theory characterizes in more than one way is
computed along every feasible route, and the routes are forced to agree;
a decided disagreement raises InternalInconsistency rather than being
resolved silently.  Enumeration caps turn into "undecided" verdicts, which
suites report as skips, never as passes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import rings
from .homs import (
    end_ring,
    find_embedding,
    find_isomorphism,
    hom_group,
    image,
    is_fully_invariant,
    is_m_generated,
    kernel,
    product_submodules,
    summand_test,
)
from .modules import (
    FiniteModule,
    ModuleHom,
    Submodule,
    direct_sum,
    enumerate_submodules,
    extract,
    is_essential,
    maximal_submodules,
    quotient,
    radical,
    socle,
    submodule_intersect,
    submodule_sum,
    zero_submodule,
)
from .verdicts import CapExceeded, Caps, InternalInconsistency, Verdict, agree


class NotFullyInvariant(ValueError):
    """Prime/semiprime tests require a proper fully invariant submodule."""


def iter_end_homs(m: FiniteModule, cap: int) -> Iterator[ModuleHom]:
    """All endomorphisms of m; raises CapExceeded before yielding anything."""
    bundle = end_ring(m)
    if bundle.homs.size() > cap:
        raise CapExceeded(bundle.homs.size(), cap, "endomorphisms")
    return bundle.homs.iter_homs()


# ---------------------------------------------------------------------------
# Core predicates, route by route
# ---------------------------------------------------------------------------


def is_endoregular(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """End ring von Neumann regular; cross-checked against the kernel/image
    summand characterization."""
    return agree(
        f"endoregular({m.name})",
        _endoregular_via_ring(m, caps),
        _endoregular_via_summands(m, caps),
    )


def _endoregular_via_ring(m: FiniteModule, caps: Caps) -> Verdict:
    return rings.is_regular(end_ring(m).ring, caps.homs)


def _endoregular_via_summands(m: FiniteModule, caps: Caps) -> Verdict:
    try:
        for phi in iter_end_homs(m, caps.homs):
            if summand_test(kernel(phi)) is None or summand_test(image(phi)) is None:
                return Verdict.no(witness=phi, reason="kernel or image not a summand")
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    return Verdict.yes()


def azumaya_agreement(m: FiniteModule, caps: Caps) -> Verdict:
    """Per-endomorphism equivalence: quasi-inverse exists iff Ker and Im are
    direct summands.  True means zero disagreements over all of End(m)."""
    bundle = end_ring(m)
    if bundle.homs.size() > caps.homs:
        return Verdict.undecided(f"|End| = {bundle.homs.size()} exceeds hom cap {caps.homs}")
    for coords in itertools.product(*(range(o) for o in bundle.homs.orders)):
        phi = bundle.homs.from_coords(coords)
        witness = rings.regularity_witness(bundle.ring.element(coords)) is not None
        summands = (
            summand_test(kernel(phi)) is not None
            and summand_test(image(phi)) is not None
        )
        if witness != summands:
            return Verdict.no(
                witness=phi,
                reason=f"quasi-inverse {'exists' if witness else 'missing'} but "
                f"summand checks say {summands}",
            )
    return Verdict.yes()


def is_abelian_endoregular(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """Three routes: abelian regular End ring; M = Ker ⊕ Im for every
    endomorphism; endoregular with all M-generated submodules fully
    invariant.  All feasible routes must agree."""
    return agree(
        f"abelian_endoregular({m.name})",
        abelian_route_end_ring(m, caps),
        abelian_route_ker_im(m, caps),
        abelian_route_fully_invariant(m, caps),
    )


def abelian_route_end_ring(m: FiniteModule, caps: Caps) -> Verdict:
    return rings.is_abelian_regular(end_ring(m).ring, caps.homs)


def abelian_route_ker_im(m: FiniteModule, caps: Caps) -> Verdict:
    size = m.size()
    try:
        for phi in iter_end_homs(m, caps.homs):
            ker, im = kernel(phi), image(phi)
            if ker.order() * im.order() != size or not submodule_intersect(ker, im).is_zero():
                return Verdict.no(witness=phi, reason="M != Ker ⊕ Im")
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    return Verdict.yes()


def abelian_route_fully_invariant(m: FiniteModule, caps: Caps) -> Verdict:
    endo = agree(
        f"endoregular({m.name})",
        _endoregular_via_ring(m, caps),
        _endoregular_via_summands(m, caps),
    )
    if not endo.decided:
        return endo
    if endo.value is False:
        return Verdict.no(witness=endo.witness, reason="not endoregular")
    try:
        subs = enumerate_submodules(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for n in subs:
        if is_m_generated(n) and not is_fully_invariant(n):
            return Verdict.no(witness=n, reason="movable M-generated submodule")
    return Verdict.yes()


def is_unit_endoregular(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    return rings.is_unit_regular(end_ring(m).ring, caps.homs)


# ---------------------------------------------------------------------------
# Summand lattice
# ---------------------------------------------------------------------------


def direct_summands(m: FiniteModule, caps: Caps) -> list[Submodule]:
    return [n for n in enumerate_submodules(m, caps.submodules) if summand_test(n) is not None]


def has_ssp(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """Sum of any two direct summands is a direct summand."""
    try:
        summands = direct_summands(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for a, b in itertools.combinations(summands, 2):
        s = submodule_sum(a, b)
        if summand_test(s) is None:
            return Verdict.no(witness=(a, b), reason="sum of summands not a summand")
    return Verdict.yes()


def has_sip(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """Intersection of any two direct summands is a direct summand."""
    try:
        summands = direct_summands(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for a, b in itertools.combinations(summands, 2):
        s = submodule_intersect(a, b)
        if summand_test(s) is None:
            return Verdict.no(witness=(a, b), reason="intersection of summands not a summand")
    return Verdict.yes()


def summand_lattice(m: FiniteModule, caps: Caps = Caps()) -> list[Submodule]:
    """The direct summands, sorted canonically (a lattice when SSP and SIP hold)."""
    return direct_summands(m, caps)


def is_distributive_boolean(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """Summand lattice distributive (then complemented, hence Boolean).

    Checks A ∩ (B + C) = (A ∩ B) + (A ∩ C) on every triple of summands and
    existence of a complement for every summand.
    """
    try:
        summands = direct_summands(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for a in summands:
        if not any(
            submodule_intersect(a, b).is_zero() and submodule_sum(a, b).is_full()
            for b in summands
        ):
            return Verdict.no(witness=a, reason="summand without complement")
    for a, b, c in itertools.product(summands, repeat=3):
        lhs = submodule_intersect(a, submodule_sum(b, c))
        rhs = submodule_sum(submodule_intersect(a, b), submodule_intersect(a, c))
        if lhs.gens != rhs.gens:
            return Verdict.no(witness=(a, b, c), reason="distributivity fails")
    return Verdict.yes()


# ---------------------------------------------------------------------------
# The five-way characterization of abelian endoregularity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiveWayReport:
    """Per-condition verdicts of the five equivalent characterizations."""

    abelian: Verdict
    iso_equal: Verdict
    no_double_embedding: Verdict
    disjoint_hom_zero: Verdict
    distributive: Verdict

    def all_verdicts(self) -> tuple[Verdict, ...]:
        return (
            self.abelian,
            self.iso_equal,
            self.no_double_embedding,
            self.disjoint_hom_zero,
            self.distributive,
        )

    def agreement(self) -> Verdict:
        return agree("five-way characterization", *self.all_verdicts())


def five_way_suite(m: FiniteModule, caps: Caps = Caps()) -> FiveWayReport:
    """Evaluate the five equivalent conditions on an endoregular module.

    Raises ValueError when the module is not endoregular (the hypothesis of
    the equivalence) and InternalInconsistency when decided conditions
    disagree.
    """
    endo = is_endoregular(m, caps)
    if endo.value is False:
        raise ValueError("five-way suite requires an endoregular module")

    abelian = is_abelian_endoregular(m, caps)

    try:
        mgen = [n for n in enumerate_submodules(m, caps.submodules) if is_m_generated(n)]
        iso_equal: Verdict = Verdict.yes()
        for a, b in itertools.combinations(mgen, 2):
            ea, _ = extract(a)
            eb, _ = extract(b)
            if find_isomorphism(ea, eb, caps.homs) is not None:
                iso_equal = Verdict.no(witness=(a, b), reason="distinct isomorphic M-generated submodules")
                break

        no_double: Verdict = Verdict.yes()
        for b in mgen:
            if b.is_zero():
                continue
            eb, _ = extract(b)
            doubled, _, _ = direct_sum([eb, eb])
            if find_embedding(doubled, m, caps.homs) is not None:
                no_double = Verdict.no(witness=b, reason="B ⊕ B embeds with B nonzero")
                break

        disjoint: Verdict = Verdict.yes()
        for a, b in itertools.permutations(mgen, 2):
            if not submodule_intersect(a, b).is_zero():
                continue
            ea, _ = extract(a)
            eb, _ = extract(b)
            if hom_group(ea, eb).size() != 1:
                disjoint = Verdict.no(witness=(a, b), reason="nonzero hom between disjoint submodules")
                break
    except CapExceeded as exc:
        iso_equal = no_double = disjoint = Verdict.undecided(str(exc))

    distributive = is_distributive_boolean(m, caps)
    report = FiveWayReport(abelian, iso_equal, no_double, disjoint, distributive)
    report.agreement()  # raises on decided disagreement
    return report


# ---------------------------------------------------------------------------
# Unit-endoregular partial converses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitSuiteReport:
    unit_endoregular: Verdict
    im_plus_ker_always_full: Verdict
    idempotents_commute_with_units: Verdict
    conclusion_checked: Verdict


def unit_suite(m: FiniteModule, caps: Caps = Caps()) -> UnitSuiteReport:
    """On a unit endoregular module, each hypothesis that holds must force
    abelian endoregularity; vacuous when neither hypothesis holds."""
    unit = is_unit_endoregular(m, caps)
    size = m.size()

    hyp1: Verdict
    try:
        hyp1 = Verdict.yes()
        for phi in iter_end_homs(m, caps.homs):
            ker, im = kernel(phi), image(phi)
            if submodule_sum(im, ker).order() != size:
                hyp1 = Verdict.no(witness=phi, reason="Im + Ker proper")
                break
    except CapExceeded as exc:
        hyp1 = Verdict.undecided(str(exc))

    hyp2: Verdict
    try:
        bundle = end_ring(m)
        elems = rings.enumerate_elements(bundle.ring, caps.homs)
        idem = [e for e in elems if (e * e).coords == e.coords]
        unit_elems = [u for u in elems if rings.is_unit(u)]
        hyp2 = Verdict.yes()
        for e in idem:
            for u in unit_elems:
                if (e * u).coords != (u * e).coords:
                    hyp2 = Verdict.no(witness=(e, u), reason="idempotent/unit do not commute")
                    break
            if hyp2.value is False:
                break
    except CapExceeded as exc:
        hyp2 = Verdict.undecided(str(exc))

    conclusion = Verdict.undecided("vacuous: no hypothesis holds")
    if unit.value and (hyp1.value or hyp2.value):
        ab = is_abelian_endoregular(m, caps)
        if ab.value is False:
            raise InternalInconsistency(
                f"unit endoregular module {m.name} satisfies a converse hypothesis "
                "but is not abelian endoregular"
            )
        conclusion = ab
    return UnitSuiteReport(unit, hyp1, hyp2, conclusion)


# ---------------------------------------------------------------------------
# Prime and semiprime submodules
# ---------------------------------------------------------------------------


def fully_invariant_submodules(m: FiniteModule, caps: Caps) -> list[Submodule]:
    """Fully invariant submodules, largest first (witness search order)."""
    subs = [n for n in enumerate_submodules(m, caps.submodules) if is_fully_invariant(n)]
    subs.sort(key=lambda n: (-n.order(), n.gens))
    return subs


def is_prime_in(n: Submodule, caps: Caps = Caps()) -> Verdict:
    """n proper fully invariant, and K_M L ⊆ n forces K ⊆ n or L ⊆ n for
    fully invariant K, L."""
    _require_proper_fully_invariant(n)
    m = n.ambient
    try:
        fi = fully_invariant_submodules(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for k, l in itertools.product(fi, repeat=2):
        prod_kl = product_submodules(k, l)
        if n.contains_sub(prod_kl) and not n.contains_sub(k) and not n.contains_sub(l):
            return Verdict.no(witness=(k, l), reason="product inside, factors outside")
    return Verdict.yes()


def is_semiprime_in(n: Submodule, caps: Caps = Caps()) -> Verdict:
    _require_proper_fully_invariant(n)
    m = n.ambient
    try:
        fi = fully_invariant_submodules(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for k in fi:
        if n.contains_sub(product_submodules(k, k)) and not n.contains_sub(k):
            return Verdict.no(witness=k, reason="square inside, factor outside")
    return Verdict.yes()


def _require_proper_fully_invariant(n: Submodule) -> None:
    if n.is_full():
        raise NotFullyInvariant("prime/semiprime submodules must be proper")
    if not is_fully_invariant(n):
        raise NotFullyInvariant("submodule is not fully invariant")


def spec_of(m: FiniteModule, caps: Caps = Caps()) -> list[Submodule]:
    """All prime submodules of m."""
    out = []
    for n in fully_invariant_submodules(m, caps):
        if n.is_full():
            continue
        if is_prime_in(n, caps).value is True:
            out.append(n)
    return out


def is_prime_module(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """0 is prime in m (m nonzero)."""
    if m.size() == 1:
        return Verdict.no(reason="zero module is not prime")
    return is_prime_in(zero_submodule(m), caps)


def is_semiprime_module(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    if m.size() == 1:
        return Verdict.no(reason="zero module is not semiprime")
    return is_semiprime_in(zero_submodule(m), caps)


# ---------------------------------------------------------------------------
# Duo, subdirect products, singularity
# ---------------------------------------------------------------------------


def is_quasi_duo(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    try:
        maxes = maximal_submodules(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for n in maxes:
        if not is_fully_invariant(n):
            return Verdict.no(witness=n, reason="movable maximal submodule")
    return Verdict.yes()


def is_duo(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    try:
        subs = enumerate_submodules(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for n in subs:
        if not is_fully_invariant(n):
            return Verdict.no(witness=n, reason="movable submodule")
    return Verdict.yes()


def is_subdirect_of_simples(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """For finite modules: radical zero (every proper submodule sits under a
    maximal one, so the canonical map into the simple quotients embeds)."""
    try:
        rad = radical(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    if rad.is_zero():
        return Verdict.yes()
    return Verdict.no(witness=rad, reason="nonzero radical")


def is_k_nonsingular(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """No nonzero endomorphism has essential kernel."""
    try:
        for phi in iter_end_homs(m, caps.homs):
            if phi.is_zero():
                continue
            if is_essential(kernel(phi), caps.submodules):
                return Verdict.no(witness=phi, reason="nonzero endomorphism with essential kernel")
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    return Verdict.yes()


def is_polyform(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    """No nonzero partial homomorphism K -> M has kernel essential in K."""
    try:
        subs = enumerate_submodules(m, caps.submodules)
        for k_sub in subs:
            if k_sub.is_zero():
                continue
            inner, _ = extract(k_sub)
            homs = hom_group(inner, m)
            if homs.size() > caps.homs:
                return Verdict.undecided(
                    f"|Hom(K, M)| = {homs.size()} exceeds hom cap {caps.homs}"
                )
            for f in homs.iter_homs():
                if f.is_zero():
                    continue
                if is_essential(kernel(f), caps.submodules):
                    return Verdict.no(
                        witness=(k_sub, f),
                        reason="partial homomorphism with essential kernel",
                    )
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    return Verdict.yes()


def idempotents_central_in_end(m: FiniteModule, caps: Caps = Caps()) -> Verdict:
    try:
        bundle = end_ring(m)
        for e in rings.idempotents(bundle.ring, caps.homs):
            if not rings.is_central(e):
                return Verdict.no(witness=e, reason="non-central idempotent in End")
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    return Verdict.yes()


# ---------------------------------------------------------------------------
# Reports and theorem suites
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusMember:
    """A validated module with an id and a projectivity tag.

    projective is set only for constructions that are projective by
    construction (direct summands of the regular module); theorems that
    hypothesize quasi-projectivity run only on tagged members.
    """

    id: str
    module: FiniteModule
    projective: bool = False


@dataclass(frozen=True)
class ResultRecord:
    """One (object, check) outcome: pass, fail, or skip."""

    object_id: str
    check_id: str
    status: str
    detail: str = ""
    witness: object = None


@dataclass
class SuiteReport:
    records: list[ResultRecord]

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.records)

    def summary(self) -> str:
        c = self.counts()
        return f"{c['pass']} passed, {c['fail']} failed, {c['skip']} skipped"


def _record(object_id: str, check_id: str, v: Verdict) -> ResultRecord:
    """Theorem checks phrase the claim so that True means the theorem holds."""
    if v.value is True:
        return ResultRecord(object_id, check_id, "pass", v.reason)
    if v.value is False:
        return ResultRecord(object_id, check_id, "fail", v.describe(), v.witness)
    return ResultRecord(object_id, check_id, "skip", v.reason)


def _implication(hyp: Verdict, concl: Verdict, vacuous: str = "hypothesis fails") -> Verdict:
    if hyp.value is False:
        return Verdict.yes(reason=vacuous)
    if not hyp.decided:
        return Verdict.undecided(hyp.reason)
    if concl.value is True:
        return Verdict.yes()
    if concl.value is False:
        return Verdict.no(witness=concl.witness, reason=concl.reason)
    return Verdict.undecided(concl.reason)


def _biconditional(a: Verdict, b: Verdict) -> Verdict:
    if not a.decided or not b.decided:
        return Verdict.undecided(a.reason or b.reason)
    if a.value == b.value:
        return Verdict.yes()
    return Verdict.no(
        witness=(a.witness, b.witness),
        reason=f"sides differ: {a.describe()} vs {b.describe()}",
    )


def check_route_agreement(m: FiniteModule, caps: Caps) -> Verdict:
    """The three abelian-endoregularity routes agree wherever decided."""
    try:
        is_abelian_endoregular(m, caps)
    except InternalInconsistency as exc:
        return Verdict.no(reason=str(exc))
    routes = [
        abelian_route_end_ring(m, caps),
        abelian_route_ker_im(m, caps),
        abelian_route_fully_invariant(m, caps),
    ]
    if not any(v.decided for v in routes):
        return Verdict.undecided("all routes undecided")
    return Verdict.yes()


def check_ssp_sip(m: FiniteModule, caps: Caps) -> Verdict:
    """Endoregular modules have both summand-closure properties."""
    endo = is_endoregular(m, caps)
    if endo.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not endo.decided:
        return Verdict.undecided(endo.reason)
    return _both(has_ssp(m, caps), has_sip(m, caps))


def _both(a: Verdict, b: Verdict) -> Verdict:
    if a.value is False:
        return a
    if b.value is False:
        return b
    if a.value is True and b.value is True:
        return Verdict.yes()
    return Verdict.undecided(a.reason or b.reason)


def check_generated_iff_summand(m: FiniteModule, caps: Caps) -> Verdict:
    """On an endoregular module, M-generated submodules are exactly the
    direct summands."""
    endo = is_endoregular(m, caps)
    if endo.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not endo.decided:
        return Verdict.undecided(endo.reason)
    try:
        subs = enumerate_submodules(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for n in subs:
        if is_m_generated(n) != (summand_test(n) is not None):
            return Verdict.no(witness=n, reason="M-generated and summand status differ")
    return Verdict.yes()


def check_summands_inherit(m: FiniteModule, caps: Caps) -> Verdict:
    """Direct summands and M-generated submodules of an abelian endoregular
    module are abelian endoregular."""
    ab = is_abelian_endoregular(m, caps)
    if ab.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not ab.decided:
        return Verdict.undecided(ab.reason)
    try:
        subs = enumerate_submodules(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for n in subs:
        if summand_test(n) is None and not is_m_generated(n):
            continue
        inner, _ = extract(n)
        v = is_abelian_endoregular(inner, caps)
        if v.value is False:
            return Verdict.no(witness=n, reason="submodule not abelian endoregular")
        if not v.decided:
            return Verdict.undecided(v.reason)
    return Verdict.yes()


def check_ker_im_summands_in_powers(m: FiniteModule, caps: Caps) -> Verdict:
    """For endoregular M and homs between small finite powers of M, kernels
    and images are direct summands."""
    endo = is_endoregular(m, caps)
    if endo.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not endo.decided:
        return Verdict.undecided(endo.reason)
    powers = {}
    for k in (1, 2):
        powers[k], _, _ = direct_sum([m] * k)
    try:
        # size every hom group first: one over-cap group makes the whole
        # check undecidable, so do not burn time on the small ones
        for n in (1, 2):
            for l in (1, 2):
                size = hom_group(powers[n], powers[l]).size()
                if size > caps.homs:
                    return Verdict.undecided(
                        f"|Hom(M^{n}, M^{l})| = {size} exceeds hom cap {caps.homs}"
                    )
        for n in (1, 2):
            for l in (1, 2):
                homs = hom_group(powers[n], powers[l])
                for f in homs.iter_homs():
                    if summand_test(kernel(f)) is None or summand_test(image(f)) is None:
                        return Verdict.no(witness=f, reason="kernel or image not a summand")
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    return Verdict.yes()


def check_central_idempotents_from_subdirect(m: FiniteModule, caps: Caps) -> Verdict:
    """A quasi-duo subdirect product of simples has central idempotents in
    its endomorphism ring; with endoregularity it is abelian endoregular."""
    hyp = _both(is_quasi_duo(m, caps), is_subdirect_of_simples(m, caps))
    if hyp.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not hyp.decided:
        return Verdict.undecided(hyp.reason)
    central = idempotents_central_in_end(m, caps)
    if central.value is not True:
        return central
    endo = is_endoregular(m, caps)
    if endo.value is True:
        return is_abelian_endoregular(m, caps)
    if not endo.decided:
        return Verdict.undecided(endo.reason)
    return Verdict.yes()


def check_subdirect_characterization(m: FiniteModule, caps: Caps, projective: bool) -> Verdict:
    """Quasi-duo endoregular with zero radical implies abelian endoregular
    with zero radical; the converse holds for projective members."""
    rad_zero = is_subdirect_of_simples(m, caps)
    cond1 = _both(_both(is_quasi_duo(m, caps), is_endoregular(m, caps)), rad_zero)
    cond2 = _both(is_abelian_endoregular(m, caps), rad_zero)
    forward = _implication(cond1, cond2)
    if forward.value is not True or not projective:
        return forward
    return _implication(cond2, cond1)


def check_prime_iff_maximal(m: FiniteModule, caps: Caps) -> Verdict:
    """On projective abelian endoregular members, prime submodules are
    exactly the maximal ones, and the module is quasi-duo."""
    ab = is_abelian_endoregular(m, caps)
    if ab.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not ab.decided:
        return Verdict.undecided(ab.reason)
    qd = is_quasi_duo(m, caps)
    if qd.value is False:
        return Verdict.no(witness=qd.witness, reason="not quasi-duo")
    if not qd.decided:
        return Verdict.undecided(qd.reason)
    try:
        primes = {p.gens for p in spec_of(m, caps)}
        maxes = {n.gens for n in maximal_submodules(m, caps.submodules)}
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    if primes != maxes:
        return Verdict.no(
            witness=(sorted(primes), sorted(maxes)),
            reason="prime and maximal submodule sets differ",
        )
    return Verdict.yes()


def check_fi_maximal_is_prime(m: FiniteModule, caps: Caps) -> Verdict:
    """On projective members, a submodule maximal in the lattice of fully
    invariant submodules is prime."""
    try:
        fi = fully_invariant_submodules(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    proper = [n for n in fi if not n.is_full()]
    for n in proper:
        maximal_fi = not any(
            k.contains_sub(n) and not n.contains_sub(k) and not k.is_full() for k in fi
        )
        if not maximal_fi:
            continue
        v = is_prime_in(n, caps)
        if v.value is False:
            return Verdict.no(witness=(n, v.witness), reason="maximal fully invariant, not prime")
        if not v.decided:
            return Verdict.undecided(v.reason)
    return Verdict.yes()


def check_prime_quotients(m: FiniteModule, caps: Caps) -> Verdict:
    """Zero is prime (semiprime) in M/N whenever N is prime (semiprime) in M."""
    try:
        fi = fully_invariant_submodules(m, caps)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    for n in fi:
        if n.is_full():
            continue
        for test, quotient_test in (
            (is_prime_in, is_prime_module),
            (is_semiprime_in, is_semiprime_module),
        ):
            v = test(n, caps)
            if v.value is not True:
                if not v.decided:
                    return Verdict.undecided(v.reason)
                continue
            q, _ = quotient(m, n)
            qv = quotient_test(q, caps)
            if qv.value is False:
                return Verdict.no(witness=(n, qv.witness), reason="quotient loses primeness")
            if not qv.decided:
                return Verdict.undecided(qv.reason)
    return Verdict.yes()


def check_fi_summand_descends(m: FiniteModule, caps: Caps) -> Verdict:
    """A fully invariant direct summand L of M with L ≤ N stays fully
    invariant inside N."""
    try:
        subs = enumerate_submodules(m, caps.submodules)
    except CapExceeded as exc:
        return Verdict.undecided(str(exc))
    fi_summands = [
        l for l in subs if is_fully_invariant(l) and summand_test(l) is not None
    ]
    for n in subs:
        inner, _ = extract(n)
        for l in fi_summands:
            if not n.contains_sub(l):
                continue
            inside = _pull_into(l, n, inner)
            if not is_fully_invariant(inside):
                return Verdict.no(witness=(l, n), reason="full invariance lost in submodule")
    return Verdict.yes()


def _pull_into(l: Submodule, n: Submodule, inner: FiniteModule) -> Submodule:
    """Rewrite l ≤ n in the coordinates of the extracted copy of n."""
    from .modules import coordinates_in_subgroup, submodule_coordinates, submodule_generated

    gens, orders = submodule_coordinates(n)
    ambient_moduli = n.ambient.moduli
    gens_inside = [
        coordinates_in_subgroup(g, gens, orders, ambient_moduli) for g in l.gens
    ]
    return submodule_generated(inner, gens_inside)


def check_polyform_implies_k_nonsingular(m: FiniteModule, caps: Caps) -> Verdict:
    return _implication(is_polyform(m, caps), is_k_nonsingular(m, caps))


def check_five_way(m: FiniteModule, caps: Caps) -> Verdict:
    """On endoregular members, the five characterizations all agree."""
    endo = is_endoregular(m, caps)
    if endo.value is False:
        return Verdict.yes(reason="hypothesis fails")
    if not endo.decided:
        return Verdict.undecided(endo.reason)
    try:
        report = five_way_suite(m, caps)
    except InternalInconsistency as exc:
        return Verdict.no(reason=str(exc))
    verdicts = report.all_verdicts()
    if all(v.decided for v in verdicts):
        return Verdict.yes()
    return Verdict.undecided("some conditions undecided")


def check_unit_converses(m: FiniteModule, caps: Caps) -> Verdict:
    try:
        report = unit_suite(m, caps)
    except InternalInconsistency as exc:
        return Verdict.no(reason=str(exc))
    if report.conclusion_checked.value is True:
        return Verdict.yes()
    if report.conclusion_checked.decided:
        return Verdict.no(reason=report.conclusion_checked.reason)
    if report.unit_endoregular.decided and not report.unit_endoregular.value:
        return Verdict.yes(reason="hypothesis fails")
    if (
        report.unit_endoregular.value
        and report.im_plus_ker_always_full.value is False
        and report.idempotents_commute_with_units.value is False
    ):
        return Verdict.yes(reason="vacuous: no converse hypothesis holds")
    return Verdict.undecided(report.conclusion_checked.reason)


MEMBER_CHECKS = (
    ("azumaya-agreement", lambda m, caps, proj: azumaya_agreement(m, caps)),
    ("abelian-route-agreement", lambda m, caps, proj: check_route_agreement(m, caps)),
    ("endoregular-implies-ssp-sip", lambda m, caps, proj: check_ssp_sip(m, caps)),
    ("generated-iff-summand", lambda m, caps, proj: check_generated_iff_summand(m, caps)),
    ("summands-inherit-abelian", lambda m, caps, proj: check_summands_inherit(m, caps)),
    ("power-hom-summands", lambda m, caps, proj: check_ker_im_summands_in_powers(m, caps)),
    ("five-way-agreement", lambda m, caps, proj: check_five_way(m, caps)),
    ("unit-converses", lambda m, caps, proj: check_unit_converses(m, caps)),
    ("subdirect-central-idempotents",
     lambda m, caps, proj: check_central_idempotents_from_subdirect(m, caps)),
    ("subdirect-characterization",
     lambda m, caps, proj: check_subdirect_characterization(m, caps, proj)),
    ("prime-iff-maximal",
     lambda m, caps, proj: check_prime_iff_maximal(m, caps) if proj
     else Verdict.undecided("needs a projective member")),
    ("fi-maximal-is-prime",
     lambda m, caps, proj: check_fi_maximal_is_prime(m, caps) if proj
     else Verdict.undecided("needs a projective member")),
    ("prime-quotients", lambda m, caps, proj: check_prime_quotients(m, caps)),
    ("fi-summand-descends", lambda m, caps, proj: check_fi_summand_descends(m, caps)),
    ("polyform-implies-k-nonsingular",
     lambda m, caps, proj: check_polyform_implies_k_nonsingular(m, caps)),
)


def check_direct_sum_family(members: Sequence[CorpusMember], caps: Caps) -> Verdict:
    """The direct sum is abelian endoregular iff each factor is and each
    embedded factor is fully invariant in the sum."""
    total, embeddings, _ = direct_sum([mem.module for mem in members])
    lhs = is_abelian_endoregular(total, caps)
    factor_checks = []
    for mem, emb in zip(members, embeddings):
        factor_checks.append(is_abelian_endoregular(mem.module, caps))
        sub = image(emb)
        factor_checks.append(
            Verdict.yes() if is_fully_invariant(sub)
            else Verdict.no(witness=sub, reason="factor not fully invariant in sum")
        )
    rhs = Verdict.yes()
    for v in factor_checks:
        rhs = _both(rhs, v)
    return _biconditional(lhs, rhs)


def theorem_suites(
    corpus: Sequence[CorpusMember],
    caps: Caps = Caps(),
    families: Sequence[Sequence[CorpusMember]] = (),
) -> SuiteReport:
    """Run every theorem check over each corpus member, then the direct-sum
    characterization over the given families (of at most 3 members)."""
    records: list[ResultRecord] = []
    for mem in corpus:
        for check_id, fn in MEMBER_CHECKS:
            try:
                v = fn(mem.module, caps, mem.projective)
            except InternalInconsistency as exc:
                records.append(ResultRecord(mem.id, check_id, "fail", str(exc)))
                continue
            records.append(_record(mem.id, check_id, v))
    for fam in families:
        fam_id = "+".join(mem.id for mem in fam)
        try:
            v = check_direct_sum_family(fam, caps)
        except InternalInconsistency as exc:
            records.append(ResultRecord(fam_id, "direct-sum-characterization", "fail", str(exc)))
            continue
        except CapExceeded as exc:
            v = Verdict.undecided(str(exc))
        records.append(_record(fam_id, "direct-sum-characterization", v))
    return SuiteReport(records)


# ---------------------------------------------------------------------------
# Per-module property report
# ---------------------------------------------------------------------------


PROPERTY_FUNCS = (
    ("endoregular", is_endoregular),
    ("abelian endoregular", is_abelian_endoregular),
    ("unit endoregular", is_unit_endoregular),
    ("quasi-duo", is_quasi_duo),
    ("duo", is_duo),
    ("subdirect product of simples", is_subdirect_of_simples),
    ("SSP", has_ssp),
    ("SIP", has_sip),
    ("distributive Boolean summand lattice", is_distributive_boolean),
    ("K-nonsingular", is_k_nonsingular),
    ("polyform", is_polyform),
)


@dataclass
class PropertyReport:
    module_id: str
    properties: dict[str, Verdict]
    routes: dict[str, Verdict]
    radical_order: int
    socle_order: int
    end_size: int
    summand_count: Optional[int]
    spec: list[Submodule]

    def lines(self) -> list[str]:
        out = [f"module {self.module_id}"]
        out.append(f"  |End| = {self.end_size}")
        out.append(f"  |Rad| = {self.radical_order}, |Soc| = {self.socle_order}")
        if self.summand_count is not None:
            out.append(f"  direct summands: {self.summand_count}")
        out.append(f"  prime submodules: {len(self.spec)}")
        for name, v in self.properties.items():
            out.append(f"  {name}: {v.describe()}")
        for name, v in self.routes.items():
            out.append(f"  route {name}: {v.describe()}")
        return out


def analyze(module_id: str, m: FiniteModule, caps: Caps = Caps()) -> PropertyReport:
    props: dict[str, Verdict] = {}
    for name, fn in PROPERTY_FUNCS:
        try:
            props[name] = fn(m, caps)
        except CapExceeded as exc:
            props[name] = Verdict.undecided(str(exc))
    routes = {
        "abelian via End ring": abelian_route_end_ring(m, caps),
        "abelian via Ker ⊕ Im": abelian_route_ker_im(m, caps),
        "abelian via fully invariant": abelian_route_fully_invariant(m, caps),
    }
    try:
        rad = radical(m, caps.submodules).order()
        soc = socle(m, caps.submodules).order()
    except CapExceeded:
        rad = soc = -1
    try:
        summand_count: Optional[int] = len(direct_summands(m, caps))
    except CapExceeded:
        summand_count = None
    try:
        primes = spec_of(m, caps)
    except CapExceeded:
        primes = []
    return PropertyReport(
        module_id=module_id,
        properties=props,
        routes=routes,
        radical_order=rad,
        socle_order=soc,
        end_size=end_ring(m).homs.size(),
        summand_count=summand_count,
        spec=primes,
    )
