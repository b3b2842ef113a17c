"""Directed systems of Lie superalgebras, colimits, and the limit theorem.

A directed system is a functor from a directed poset: one algebra per
element and one transition morphism per related pair, with f_ii = id
and f_ki = f_kj . f_ji checked exactly.  The colimit is presented as
the direct sum of all members modulo the identifications
iota_i(x) - iota_j(f_ji x); its bracket routes both arguments through a
common upper bound.

theorem_verify builds, for a system of perfect algebras, the canonical
comparison between the colimit of the central extensions and the
central extension of the colimit, and certifies that it is an
isomorphism by exhibiting the inverse and checking both composites and
the restriction to the two kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .algebra import (
    GradedBasis,
    GradedLinearMap,
    LieSuperalgebra,
    ValidationReport,
    centre,
    check_morphism,
    is_perfect,
)
from .linalg import Echelon, Vector, kernel_basis, quotient_space, vec_add_scaled
from .uce import UceAlgebra, UceMemo, build_uce, uce_of_morphism

ONE = Fraction(1)


class InvalidSystemError(ValueError):
    """Raised when a directed system fails validation."""

    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


class DirectedPoset:
    """Finite directed poset; the reflexive closure is taken automatically."""

    __slots__ = ("elements", "_leq")

    def __init__(self, elements: Sequence[Hashable], relation):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("poset elements must be distinct")
        known = set(self.elements)
        leq = {(i, i) for i in self.elements}
        for i, j in relation:
            if i not in known or j not in known:
                raise ValueError(f"relation pair ({i!r}, {j!r}) uses unknown elements")
            leq.add((i, j))
        for i, j in leq:
            if i != j and (j, i) in leq:
                raise ValueError(f"antisymmetry fails on {i!r}, {j!r}")
        for i, j in list(leq):
            for k in self.elements:
                if (j, k) in leq and (i, k) not in leq:
                    raise ValueError(f"transitivity fails: {i!r} <= {j!r} <= {k!r}")
        for a in self.elements:
            for b in self.elements:
                if not any((a, k) in leq and (b, k) in leq for k in self.elements):
                    raise ValueError(f"no upper bound for {a!r}, {b!r}: poset is not directed")
        self._leq = frozenset(leq)

    def leq(self, i, j) -> bool:
        return (i, j) in self._leq

    def upper_bound(self, i, j):
        """First element in declaration order above both i and j."""
        for k in self.elements:
            if (i, k) in self._leq and (j, k) in self._leq:
                return k
        raise AssertionError("directedness was validated")

    def top(self):
        """The greatest element, or None."""
        for t in self.elements:
            if all((i, t) in self._leq for i in self.elements):
                return t
        return None

    def pairs(self) -> List[Tuple[Hashable, Hashable]]:
        """All related pairs (i, j) with i <= j, in element order."""
        return [(i, j) for i in self.elements for j in self.elements if (i, j) in self._leq]


class DirectedSystem:
    """Algebras over a directed poset with compatible transition maps.

    morphisms maps strictly related pairs (i, j), i < j, to the map
    L_i -> L_j; identity transitions are implicit.
    """

    __slots__ = ("poset", "algebras", "morphisms")

    def __init__(self, poset: DirectedPoset,
                 algebras: Dict[Hashable, LieSuperalgebra],
                 morphisms: Dict[Tuple[Hashable, Hashable], GradedLinearMap],
                 validate: bool = True):
        self.poset = poset
        self.algebras = dict(algebras)
        self.morphisms = dict(morphisms)
        if validate:
            report = validate_system(self)
            if not report.ok:
                raise InvalidSystemError(report)

    def transition(self, i, j) -> GradedLinearMap:
        if i == j:
            return GradedLinearMap.identity(self.algebras[i].basis)
        return self.morphisms[(i, j)]


def validate_system(system: DirectedSystem) -> ValidationReport:
    report = ValidationReport()
    poset = system.poset
    for i in poset.elements:
        if i not in system.algebras:
            report.add("coverage", repr(i), "no algebra attached to this element")
    if not report.ok:
        return report
    for i, j in poset.pairs():
        if i == j:
            f = system.morphisms.get((i, i))
            if f is not None and f != GradedLinearMap.identity(system.algebras[i].basis):
                report.add("identity", repr(i), "explicit self-transition is not the identity")
            continue
        f = system.morphisms.get((i, j))
        if f is None:
            report.add("coverage", f"{i!r} <= {j!r}", "missing transition map")
            continue
        if f.domain != system.algebras[i].basis or f.codomain != system.algebras[j].basis:
            report.add("typing", f"{i!r} <= {j!r}", "transition endpoints do not match the algebras")
            continue
        if not f.is_parity_preserving():
            report.add("grading", f"{i!r} <= {j!r}", "transition is not parity preserving")
        if not check_morphism(f, system.algebras[i], system.algebras[j]):
            report.add("morphism", f"{i!r} <= {j!r}", "transition does not respect brackets")
    if not report.ok:
        return report
    for i, j in poset.pairs():
        for k in poset.elements:
            if i != j and j != k and poset.leq(j, k):
                lhs = system.transition(j, k).compose(system.transition(i, j))
                if lhs != system.transition(i, k):
                    report.add("compatibility", f"{i!r} <= {j!r} <= {k!r}",
                               "composite transition disagrees with the direct one")
    return report


def chain_system(algebras: Sequence[LieSuperalgebra],
                 maps: Sequence[GradedLinearMap],
                 labels: Optional[Sequence[Hashable]] = None) -> DirectedSystem:
    """Totally ordered system from consecutive maps L_k -> L_{k+1}."""
    if len(maps) != len(algebras) - 1:
        raise ValueError("need one map fewer than algebras")
    if labels is None:
        labels = list(range(len(algebras)))
    labels = list(labels)
    relation = [(labels[k], labels[k + 1]) for k in range(len(maps))]
    poset = DirectedPoset(labels, relation + [
        (labels[a], labels[b]) for a in range(len(labels)) for b in range(a + 1, len(labels))
    ])
    morphisms = {}
    for a in range(len(labels)):
        acc = None
        for b in range(a + 1, len(labels)):
            step = maps[b - 1]
            acc = step if acc is None else step.compose(acc)
            morphisms[(labels[a], labels[b])] = acc
    return DirectedSystem(poset, dict(zip(labels, algebras)), morphisms)


class Colimit:
    """Colimit algebra with its presentation and structure injections."""

    __slots__ = ("system", "algebra", "presentation", "offsets", "injections")

    def __init__(self, system, algebra, presentation, offsets, injections):
        self.system = system
        self.algebra = algebra
        self.presentation = presentation
        self.offsets = offsets
        self.injections = injections

    def injection(self, i) -> GradedLinearMap:
        return self.injections[i]


def colimit(system: DirectedSystem, validate: bool = True) -> Colimit:
    """Present the colimit on the direct sum modulo the identifications."""
    poset = system.poset
    offsets: Dict[Hashable, int] = {}
    amb_labels: List[str] = []
    amb_parities: List[int] = []
    total = 0
    for i in poset.elements:
        L = system.algebras[i]
        offsets[i] = total
        total += L.dim
        amb_labels.extend(f"{i}:{lab}" for lab in L.basis.labels)
        amb_parities.extend(L.basis.parities)

    rows: List[Vector] = []
    for i, j in poset.pairs():
        if i == j:
            continue
        f = system.transition(i, j)
        oi, oj = offsets[i], offsets[j]
        for b in range(system.algebras[i].dim):
            row: Vector = {oi + b: ONE}
            vec_add_scaled(row, {oj + c: x for c, x in f.columns[b].items()}, -ONE)
            if row:
                rows.append(row)
    pres = quotient_space(total, rows)

    comp_of: Dict[int, Tuple[Hashable, int]] = {}
    bounds = list(offsets.items())
    for col in pres.free_columns:
        for i, off in reversed(bounds):
            if col >= off:
                comp_of[col] = (i, col - off)
                break
    labels = [amb_labels[c] for c in pres.free_columns]
    parities = [amb_parities[c] for c in pres.free_columns]
    basis = GradedBasis(labels, parities)

    dim = pres.dim
    table = []
    for c1 in pres.free_columns:
        i, a = comp_of[c1]
        row = []
        for c2 in pres.free_columns:
            j, b = comp_of[c2]
            k = poset.upper_bound(i, j)
            x = system.transition(i, k).columns[a]
            y = system.transition(j, k).columns[b]
            z = system.algebras[k].bracket(x, y)
            ok = offsets[k]
            row.append(pres.project({ok + c: v for c, v in z.items()}))
        table.append(row)
    alg = LieSuperalgebra(basis, table, validate=validate)

    injections = {}
    for i in poset.elements:
        L = system.algebras[i]
        oi = offsets[i]
        cols = [pres.project({oi + b: ONE}) for b in range(L.dim)]
        injections[i] = GradedLinearMap(L.basis, basis, cols)
    colim = Colimit(system, alg, pres, offsets, injections)

    t = poset.top()
    if validate and t is not None:
        if not injections[t].is_bijective():
            raise AssertionError("injection from the top element must be an isomorphism")
    return colim


def factor_through(colim: Colimit,
                   cones: Dict[Hashable, GradedLinearMap],
                   check: bool = True) -> GradedLinearMap:
    """The unique map out of the colimit agreeing with a compatible cone.

    cones[i] maps system member i into a common codomain; compatibility
    cones[j] . f_ji == cones[i] is verified, as is the factorization.
    """
    system = colim.system
    poset = system.poset
    codomain = None
    for i in poset.elements:
        g = cones.get(i)
        if g is None:
            raise ValueError(f"cone is missing a component at {i!r}")
        if codomain is None:
            codomain = g.codomain
        elif g.codomain != codomain:
            raise ValueError("cone components have different codomains")
    if check:
        for i, j in poset.pairs():
            if i == j:
                continue
            if cones[j].compose(system.transition(i, j)) != cones[i]:
                raise ValueError(f"cone is not compatible over {i!r} <= {j!r}")
    pres = colim.presentation
    comp = []
    bounds = list(colim.offsets.items())
    for col in pres.free_columns:
        for i, off in reversed(bounds):
            if col >= off:
                comp.append((i, col - off))
                break
    cols = [dict(cones[i].columns[b]) for i, b in comp]
    mediating = GradedLinearMap(colim.algebra.basis, codomain, cols)
    if check:
        for i in poset.elements:
            if mediating.compose(colim.injections[i]) != cones[i]:
                raise AssertionError("mediating map does not extend the cone")
    return mediating


# ------------------------------------------------------- central extensions of systems

def uce_system(system: DirectedSystem,
               memo: Optional[UceMemo] = None) -> Tuple[DirectedSystem, Dict[Hashable, UceAlgebra]]:
    """Apply the central-extension construction to every member and map."""
    if memo is None:
        memo = UceMemo()
    exts = {i: memo.uce(system.algebras[i]) for i in system.poset.elements}
    algebras = {i: exts[i].lie for i in system.poset.elements}
    morphisms = {}
    for i, j in system.poset.pairs():
        if i == j:
            continue
        morphisms[(i, j)] = uce_of_morphism(system.transition(i, j),
                                            source=exts[i], target=exts[j])
    return DirectedSystem(system.poset, algebras, morphisms), exts


@dataclass
class LimitUReport:
    map: GradedLinearMap
    colim_uce: Colimit
    colim: Colimit
    kernel_dim: int
    kernel_central: bool
    surjective: bool


def limit_u(system: DirectedSystem, memo: Optional[UceMemo] = None,
            colim: Optional[Colimit] = None,
            uce_colim: Optional[Colimit] = None,
            exts: Optional[Dict[Hashable, UceAlgebra]] = None) -> LimitUReport:
    """Canonical map from the colimit of extensions onto the colimit.

    Its kernel is checked to be central; it is surjective when every
    member is perfect.
    """
    if memo is None:
        memo = UceMemo()
    if colim is None:
        colim = colimit(system)
    if uce_colim is None or exts is None:
        usys, exts = uce_system(system, memo)
        uce_colim = colimit(usys)
    cones = {i: colim.injections[i].compose(exts[i].u) for i in system.poset.elements}
    v = factor_through(uce_colim, cones)
    ker = kernel_basis(v.matrix())
    zc = centre(uce_colim.algebra)
    central = all(zc.contains(k) for k in ker)
    return LimitUReport(map=v, colim_uce=uce_colim, colim=colim,
                        kernel_dim=len(ker), kernel_central=central,
                        surjective=v.is_surjective())


@dataclass
class TheoremReport:
    dim_colim: int
    dim_uce_of_colim: int
    dim_colim_of_uce: int
    phi_is_morphism: bool
    phi_bijective: bool
    psi_after_phi_is_id: bool
    phi_after_psi_is_id: bool
    h2_of_colim_dim: int
    h2_colim_of_kernels_dim: int
    h2_restriction_bijective: bool

    @property
    def ok(self) -> bool:
        return (self.phi_is_morphism and self.phi_bijective
                and self.psi_after_phi_is_id and self.phi_after_psi_is_id
                and self.h2_restriction_bijective)


def theorem_verify(system: DirectedSystem, memo: Optional[UceMemo] = None) -> TheoremReport:
    """Certify colim uce(L_i) ~ uce(colim L_i) for a system of perfect algebras.

    phi is the mediating map of the cone uce(phi_i); psi routes a
    bracket through preimages of the canonical projection of the
    colimit of extensions.  Both composites and the restriction of phi
    to the kernel parts are checked exactly.
    """
    if memo is None:
        memo = UceMemo()
    for i in system.poset.elements:
        if not is_perfect(system.algebras[i]):
            raise ValueError(f"member {i!r} is not perfect")
    colim = colimit(system)
    ext_top = memo.uce(colim.algebra)
    usys, exts = uce_system(system, memo)
    uce_colim = colimit(usys)

    cones = {i: uce_of_morphism(colim.injections[i], source=exts[i], target=ext_top)
             for i in system.poset.elements}
    phi = factor_through(uce_colim, cones)
    phi_is_morphism = check_morphism(phi, uce_colim.algebra, ext_top.lie)
    phi_bijective = phi.is_bijective()

    report_v = limit_u(system, memo, colim=colim, uce_colim=uce_colim, exts=exts)
    v = report_v.map
    section = Echelon(track=True)
    for idx, col in enumerate(v.columns):
        section.insert(col, tag=idx)

    def preimage(vec: Vector) -> Vector:
        residue, cert = section.reduce(vec)
        if residue:
            raise AssertionError("canonical projection of the colimit of extensions is not onto")
        return {t: x for t, x in cert.items() if x}

    CK = uce_colim.algebra
    dcl = colim.algebra.dim
    psi_cols = []
    for col in ext_top.presentation.free_columns:
        a, b = divmod(col, dcl)
        psi_cols.append(CK.bracket(preimage({a: ONE}), preimage({b: ONE})))
    psi = GradedLinearMap(ext_top.lie.basis, CK.basis, psi_cols)

    psi_after_phi = psi.compose(phi) == GradedLinearMap.identity(CK.basis)
    phi_after_psi = phi.compose(psi) == GradedLinearMap.identity(ext_top.lie.basis)

    h2_top = kernel_basis(ext_top.u.matrix())
    ker_v = kernel_basis(v.matrix())
    h2_span = Echelon()
    for w in h2_top:
        h2_span.insert(dict(w))
    restriction_ok = len(h2_top) == len(ker_v)
    image_span = Echelon()
    for w in ker_v:
        img = phi.apply(w)
        if h2_span.insert(dict(img)) is not None:
            restriction_ok = False  # image escapes the kernel of the projection
        if image_span.insert(img) is None:
            restriction_ok = False  # restriction fails to be injective

    return TheoremReport(
        dim_colim=colim.algebra.dim,
        dim_uce_of_colim=ext_top.dim,
        dim_colim_of_uce=CK.dim,
        phi_is_morphism=phi_is_morphism,
        phi_bijective=phi_bijective,
        psi_after_phi_is_id=psi_after_phi,
        phi_after_psi_is_id=phi_after_psi,
        h2_of_colim_dim=len(h2_top),
        h2_colim_of_kernels_dim=len(ker_v),
        h2_restriction_bijective=restriction_ok,
    )


def induced_colimit_map(src: Colimit, dst: Colimit,
                        components: Dict[Hashable, GradedLinearMap],
                        check: bool = True) -> GradedLinearMap:
    """Colimit of a morphism of systems over the same poset.

    components[i] : src member i -> dst member i must commute with the
    transition maps of both systems.
    """
    sp, dp = src.system.poset, dst.system.poset
    if sp.elements != dp.elements or sp.pairs() != dp.pairs():
        raise ValueError("systems live over different posets")
    if check:
        for i, j in sp.pairs():
            if i == j:
                continue
            lhs = components[j].compose(src.system.transition(i, j))
            rhs = dst.system.transition(i, j).compose(components[i])
            if lhs != rhs:
                raise ValueError(f"components do not commute over {i!r} <= {j!r}")
    cones = {i: dst.injections[i].compose(components[i]) for i in sp.elements}
    out = factor_through(src, cones, check=check)
    if check and not check_morphism(out, src.algebra, dst.algebra):
        raise AssertionError("induced map fails to be a morphism")
    return out
