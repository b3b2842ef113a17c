"""Universal central extensions of Lie superalgebras over Q.

For a Lie superalgebra L the relation space B inside L (x) L is spanned
by, over homogeneous x, y, z:

* x (x) y + (-1)^{|x||y|} y (x) x  (written on basis pairs),
* x (x) x for even x,
* (-1)^{|x||z|} x (x) [y,z] + (-1)^{|y||x|} y (x) [z,x]
                            + (-1)^{|z||y|} z (x) [x,y].

Evaluating the families on basis pairs and triples spans the same
space: the first and third families are multilinear, and the quadratic
second family expands over a basis into diagonal terms plus first-family
pair terms.  The third family is invariant under cyclic rotation of
(x, y, z), so one representative per cyclic class is enumerated.

The extension algebra is (L (x) L) / B with bracket
[<a,b>, <c,d>] = <[a,b], [c,d]> and canonical map u<a,b> = [a,b]; the
kernel of u is central, and for perfect L it is the second homology of
L and u is the universal central extension.

The cohomological cross-check h2_cohomology_oracle counts degree-zero
super-alternating 2-cocycles with values in Q modulo coboundaries.  It
reads only the structure constants and shares nothing with build_uce.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (
    GradedBasis,
    GradedLinearMap,
    LieSuperalgebra,
    Subspace,
    ValidationReport,
    check_morphism,
    is_perfect,
    vector_parity,
)
from .linalg import (
    Echelon,
    QuotientPresentation,
    SparseMatrix,
    Vector,
    kernel_basis,
    quotient_space,
    rank_of_rows,
    vec_add_scaled,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def b_relations(L: LieSuperalgebra) -> list:
    """Spanning vectors of the relation space B in L (x) L.

    Tensor coordinate (a, b) is a*dim + b.  Zero vectors are dropped.
    """
    d = L.dim
    par = L.basis.parities
    table = L.table
    rows = []
    for i in range(d):
        for j in range(i, d):
            sign = -ONE if par[i] and par[j] else ONE
            if i == j:
                if sign == ONE:
                    rows.append({i * d + i: ONE})
            else:
                rows.append({i * d + j: ONE, j * d + i: sign})
    for i in range(d):
        if par[i] == 0:
            rows.append({i * d + i: ONE})
    for i in range(d):
        ti = table[i]
        for j in range(i, d):
            tj = table[j]
            tij = ti[j]
            for k in range(i, d):
                cjk = tj[k]
                cki = table[k][i]
                if not (cjk or cki or tij):
                    continue
                row: Vector = {}
                if cjk:
                    s = -ONE if par[i] and par[k] else ONE
                    base = i * d
                    for t, x in cjk.items():
                        c = base + t
                        y = row.get(c, ZERO) + s * x
                        if y:
                            row[c] = y
                        else:
                            del row[c]
                if cki:
                    s = -ONE if par[j] and par[i] else ONE
                    base = j * d
                    for t, x in cki.items():
                        c = base + t
                        y = row.get(c, ZERO) + s * x
                        if y:
                            row[c] = y
                        else:
                            del row[c]
                if tij:
                    s = -ONE if par[k] and par[j] else ONE
                    base = k * d
                    for t, x in tij.items():
                        c = base + t
                        y = row.get(c, ZERO) + s * x
                        if y:
                            row[c] = y
                        else:
                            del row[c]
                if row:
                    rows.append(row)
    return rows


class UceAlgebra:
    """The universal central extension data of a Lie superalgebra.

    Fields: base (L), lie (the extension algebra), presentation (of
    L (x) L by the relation space), u (extension -> L).  The quotient
    basis element at free tensor coordinate (a, b) is labelled
    <label_a,label_b> and has parity |a| + |b|.
    """

    __slots__ = ("base", "lie", "presentation", "u")

    def __init__(self, base, lie, presentation, u):
        self.base = base
        self.lie = lie
        self.presentation = presentation
        self.u = u

    @property
    def dim(self) -> int:
        return self.lie.dim

    def class_of(self, x: Vector, y: Vector) -> Vector:
        """Class <x, y> of a tensor x (x) y in extension coordinates."""
        d = self.base.dim
        tensor: Vector = {}
        for a, xa in x.items():
            base = a * d
            for b, yb in y.items():
                w = xa * yb
                if w:
                    tensor[base + b] = tensor.get(base + b, ZERO) + w
        return self.presentation.project({k: v for k, v in tensor.items() if v})

    def __repr__(self) -> str:
        return f"UceAlgebra(dim={self.dim} over dim={self.base.dim})"


def build_uce(L: LieSuperalgebra, validate: bool = True) -> UceAlgebra:
    """Quotient of the tensor square by the relation space.

    The built algebra is validated eagerly; the canonical map u is
    checked to be a morphism with central kernel.
    """
    d = L.dim
    par = L.basis.parities
    labels = L.basis.labels
    pres = quotient_space(d * d, b_relations(L))
    free = pres.free_columns
    n = len(free)
    coords = []
    qlabels = []
    qpar = []
    for col in free:
        a, b = divmod(col, d)
        coords.append((a, b))
        qlabels.append(f"<{labels[a]},{labels[b]}>")
        qpar.append((par[a] + par[b]) & 1)
    basis = GradedBasis(qlabels, qpar)

    brackets = [L.table[a][b] for a, b in coords]
    project = pres.project
    table = []
    for i in range(n):
        w = brackets[i]
        row = []
        for j in range(n):
            w2 = brackets[j]
            if w and w2:
                tensor: Vector = {}
                for r, x in w.items():
                    base = r * d
                    for s, y in w2.items():
                        v = x * y
                        if v:
                            c = base + s
                            z = tensor.get(c, ZERO) + v
                            if z:
                                tensor[c] = z
                            else:
                                del tensor[c]
                row.append(project(tensor))
            else:
                row.append({})
        table.append(row)
    lie = LieSuperalgebra(basis, table, validate=validate)
    u = GradedLinearMap(basis, L.basis, [dict(b) for b in brackets])
    out = UceAlgebra(L, lie, pres, u)
    if validate:
        assert check_morphism(u, lie, L), "canonical map is not a morphism"
        for z in kernel_basis(u.matrix()):
            for j in range(n):
                assert not lie.bracket(z, {j: ONE}), "kernel of u is not central"
    return out


class UceMemo:
    """Explicit cache so repeated checks reuse one extension per algebra."""

    __slots__ = ("_store",)

    def __init__(self):
        self._store = {}

    def uce(self, L: LieSuperalgebra, validate: bool = True) -> UceAlgebra:
        got = self._store.get(id(L))
        if got is None:
            got = build_uce(L, validate=validate)
            self._store[id(L)] = got
        return got


def h2(L, uce: Optional[UceAlgebra] = None, memo: Optional[UceMemo] = None) -> Subspace:
    """Kernel of the canonical map, as a subspace of the extension.

    Accepts a LieSuperalgebra or a prebuilt UceAlgebra.  Warns when L is
    not perfect (the kernel is still central, but it is not the second
    homology in that case).
    """
    if isinstance(L, UceAlgebra):
        ext = L
    else:
        if uce is not None:
            ext = uce
        elif memo is not None:
            ext = memo.uce(L)
        else:
            ext = build_uce(L)
    if not is_perfect(ext.base):
        warnings.warn("algebra is not perfect; kernel of u is not H2", stacklevel=2)
    vectors = kernel_basis(ext.u.matrix())
    return Subspace(ext.lie, vectors)


def uce_of_morphism(
    f: GradedLinearMap,
    source: Optional[UceAlgebra] = None,
    target: Optional[UceAlgebra] = None,
    memo: Optional[UceMemo] = None,
    check: bool = True,
) -> GradedLinearMap:
    """Induced map "<a,b> -> <f a, f b>" between the extensions.

    source and target are the extensions of f's domain and codomain, or
    the plain algebras themselves (extensions are then built, via memo
    when one is given).
    """
    if source is None or target is None:
        raise ValueError("pass the source and target algebras or extensions")
    if isinstance(source, LieSuperalgebra):
        source = memo.uce(source) if memo is not None else build_uce(source)
    if isinstance(target, LieSuperalgebra):
        target = memo.uce(target) if memo is not None else build_uce(target)
    if f.domain != source.base.basis or f.codomain != target.base.basis:
        raise ValueError("morphism endpoints do not match the given extensions")
    dM = target.base.dim
    cols = []
    for a, b in _free_coords(source):
        fa = f.columns[a]
        fb = f.columns[b]
        tensor: Vector = {}
        for r, x in fa.items():
            base = r * dM
            for s, y in fb.items():
                v = x * y
                if v:
                    c = base + s
                    z = tensor.get(c, ZERO) + v
                    if z:
                        tensor[c] = z
                    else:
                        del tensor[c]
        cols.append(target.presentation.project(tensor))
    out = GradedLinearMap(source.lie.basis, target.lie.basis, cols)
    if check:
        # naturality: u_M after uce(f) equals f after u_L
        lhs = target.u.compose(out)
        rhs = f.compose(source.u)
        assert lhs == rhs, "induced map does not commute with the canonical maps"
    return out


def _free_coords(ext: UceAlgebra):
    d = ext.base.dim
    return [divmod(col, d) for col in ext.presentation.free_columns]


def is_centrally_closed(L: LieSuperalgebra, uce: Optional[UceAlgebra] = None,
                        memo: Optional[UceMemo] = None) -> bool:
    """For perfect L: is the canonical map an isomorphism?"""
    if not is_perfect(L):
        raise ValueError("central closure is defined here for perfect algebras only")
    if uce is None:
        uce = memo.uce(L) if memo is not None else build_uce(L)
    if uce.dim != L.dim:
        return False
    return uce.u.rank() == L.dim


class Cocycle2:
    """Degree-zero 2-cocycle on L with values in a graded space.

    values[i][j] is tau(b_i, b_j) in coordinates of the target basis.
    """

    __slots__ = ("source", "target", "values")

    def __init__(self, source: LieSuperalgebra, target: GradedBasis, values):
        self.source = source
        self.target = target
        d = source.dim
        vals = []
        for i in range(d):
            row = []
            for j in range(d):
                cell = {k: x for k, x in values[i][j].items() if x}
                for k in cell:
                    if not 0 <= k < len(target):
                        raise ValueError("cocycle value out of target range")
                row.append(cell)
            vals.append(tuple(row))
        self.values = tuple(vals)

    def apply(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for i, xi in x.items():
            row = self.values[i]
            for j, yj in y.items():
                cell = row[j]
                if cell:
                    vec_add_scaled(out, cell, xi * yj)
        return out

    def __repr__(self) -> str:
        return f"Cocycle2({self.source!r} -> dim {len(self.target)})"


def validate_cocycle(tau: Cocycle2, L: Optional[LieSuperalgebra] = None) -> ValidationReport:
    """Degree zero, super-alternating, and the cyclic cocycle identity."""
    if L is None:
        L = tau.source
    report = ValidationReport()
    d = L.dim
    par = L.basis.parities
    tpar = tau.target.parities
    labels = L.basis.labels
    vals = tau.values
    for i in range(d):
        for j in range(d):
            want = (par[i] + par[j]) & 1
            for k in vals[i][j]:
                if tpar[k] != want:
                    report.add("degree", (labels[i], labels[j]),
                               f"value component has parity {tpar[k]}, expected {want}")
    for i in range(d):
        for j in range(i, d):
            sign = -ONE if par[i] and par[j] else ONE
            if vals[j][i] != {k: -sign * x for k, x in vals[i][j].items()}:
                report.add("alternating", (labels[i], labels[j]),
                           "tau(y,x) != -(-1)^{|x||y|} tau(x,y)")
        if par[i] == 0 and vals[i][i]:
            report.add("alternating", (labels[i], labels[i]), "tau(x,x) != 0 for even x")
    if not report.ok:
        return report
    table = L.table
    for i in range(d):
        vi = vals[i]
        for j in range(i, d):
            vj = vals[j]
            for k in range(i, d):
                acc: Vector = {}
                cell = table[j][k]
                if cell:
                    s = -ONE if par[i] and par[k] else ONE
                    for t, x in cell.items():
                        if vi[t]:
                            vec_add_scaled(acc, vi[t], s * x)
                cell = table[k][i]
                if cell:
                    s = -ONE if par[j] and par[i] else ONE
                    for t, x in cell.items():
                        if vj[t]:
                            vec_add_scaled(acc, vj[t], s * x)
                cell = table[i][j]
                if cell:
                    s = -ONE if par[k] and par[j] else ONE
                    vk = vals[k]
                    for t, x in cell.items():
                        if vk[t]:
                            vec_add_scaled(acc, vk[t], s * x)
                if acc:
                    report.add("cocycle", (labels[i], labels[j], labels[k]),
                               "cyclic cocycle sum != 0")
    return report


class CentralExtension:
    """A central extension presented on L (+) C coordinates."""

    __slots__ = ("total", "projection", "kernel")

    def __init__(self, total: LieSuperalgebra, projection: GradedLinearMap, kernel: Subspace):
        self.total = total
        self.projection = projection
        self.kernel = kernel

    def __repr__(self) -> str:
        return f"CentralExtension(total dim={self.total.dim})"


def extension_from_cocycle(L: LieSuperalgebra, tau: Cocycle2,
                           validate: bool = True) -> CentralExtension:
    """L (+) C with bracket [l1 (+) c1, l2 (+) c2] = [l1,l2] (+) tau(l1,l2)."""
    if tau.source is not L:
        report = validate_cocycle(tau, L)
        if not report.ok:
            raise ValueError("cocycle does not validate against the given algebra")
    d = L.dim
    c = len(tau.target)
    labels = list(L.basis.labels)
    used = set(labels)
    for lab in tau.target.labels:
        name = lab if lab not in used else f"z:{lab}"
        while name in used:
            name = "z:" + name
        labels.append(name)
        used.add(name)
    parities = list(L.basis.parities) + list(tau.target.parities)
    basis = GradedBasis(labels, parities)
    table = []
    for i in range(d + c):
        row = []
        for j in range(d + c):
            if i < d and j < d:
                cell = dict(L.table[i][j])
                for k, x in tau.values[i][j].items():
                    cell[d + k] = x
                row.append(cell)
            else:
                row.append({})
        table.append(row)
    total = LieSuperalgebra(basis, table, validate=validate)
    projection = GradedLinearMap(
        basis, L.basis, [{i: ONE} if i < d else {} for i in range(d + c)]
    )
    kernel = Subspace(total, [{d + k: ONE} for k in range(c)])
    return CentralExtension(total, projection, kernel)


def h2_cohomology_oracle(L: LieSuperalgebra) -> int:
    """dim of super-alternating 2-cocycles valued in a line, mod coboundaries.

    Unknowns are tau(b_i, b_j) for i < j plus tau(b_i, b_i) for odd i;
    the remaining values are forced by super-alternation.  Cocycle rows
    (the cyclic identity) are enumerated once per cyclic class;
    coboundaries are tau = g([.,.]) for all basis functionals g.  The
    even-line and odd-line sectors decouple by grading, so one global
    elimination counts both, and by field duality the result equals the
    full dim h2(L) for perfect L.  Independent of build_uce by
    construction.
    """
    d = L.dim
    par = L.basis.parities
    table = L.table
    pair_index = {}
    for i in range(d):
        if par[i]:
            pair_index[(i, i)] = len(pair_index)
        for j in range(i + 1, d):
            pair_index[(i, j)] = len(pair_index)
    npairs = len(pair_index)

    def add_value(row: Vector, i: int, t: int, coeff: Fraction) -> None:
        # tau(b_i, b_t) resolved to a signed unknown, or zero
        if i == t:
            if par[i]:
                k = pair_index[(i, i)]
                y = row.get(k, ZERO) + coeff
                if y:
                    row[k] = y
                else:
                    del row[k]
            return
        if i < t:
            k = pair_index[(i, t)]
            s = coeff
        else:
            k = pair_index[(t, i)]
            s = coeff if par[i] and par[t] else -coeff
        y = row.get(k, ZERO) + s
        if y:
            row[k] = y
        else:
            del row[k]

    constraint_rows = []
    for i in range(d):
        for j in range(i, d):
            for k in range(i, d):
                row: Vector = {}
                cell = table[j][k]
                if cell:
                    s = -ONE if par[i] and par[k] else ONE
                    for t, x in cell.items():
                        add_value(row, i, t, s * x)
                cell = table[k][i]
                if cell:
                    s = -ONE if par[j] and par[i] else ONE
                    for t, x in cell.items():
                        add_value(row, j, t, s * x)
                cell = table[i][j]
                if cell:
                    s = -ONE if par[k] and par[j] else ONE
                    for t, x in cell.items():
                        add_value(row, k, t, s * x)
                if row:
                    constraint_rows.append(row)
    dim_z2 = npairs - rank_of_rows(constraint_rows)

    coboundary_rows = []
    for g in range(d):
        row = {}
        for (i, j), k in pair_index.items():
            x = table[i][j].get(g)
            if x:
                row[k] = x
        if row:
            coboundary_rows.append(row)
    dim_b2 = rank_of_rows(coboundary_rows)
    return dim_z2 - dim_b2
