"""Finite-dimensional Lie and associative superalgebras over Q.

An algebra is given by a homogeneous basis (labels plus parities in
{0, 1}) and a dense table of structure constants: table[i][j] is the
sparse vector of the product of basis elements i and j.  Validation is
eager at construction, so downstream code may assume:

* grading: the product of parities i, j lands in parity i + j;
* Lie: super skew-symmetry and the cyclic super Jacobi identity
      (-1)^{|x||z|} [x,[y,z]] + (-1)^{|y||x|} [y,[z,x]]
                                + (-1)^{|z||y|} [z,[x,y]] = 0;
* associative: associativity on all basis triples and a two-sided
  even unit.

Everything is immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .linalg import (
    Echelon,
    SparseMatrix,
    Vector,
    echelon_rows,
    kernel_basis,
    quotient_space,
    rank_of_rows,
    vec_add_scaled,
)

ZERO = Fraction(0)
ONE = Fraction(1)

EVEN = 0
ODD = 1


class ValidationReport:
    """Collected law violations; empty means valid."""

    __slots__ = ("violations",)

    def __init__(self, violations=None):
        self.violations = list(violations or [])

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, where: tuple, detail: str) -> None:
        self.violations.append((law, where, detail))

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        lines = [f"{law} at {where}: {detail}" for law, where, detail in self.violations[:20]]
        if len(self.violations) > 20:
            lines.append(f"... and {len(self.violations) - 20} more")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"ValidationReport({len(self.violations)} violations)"


class InvalidAlgebraError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


class GradedBasis:
    """Ordered homogeneous basis: unique labels and parities in {0, 1}."""

    __slots__ = ("labels", "parities", "_index")

    def __init__(self, labels: Sequence[str], parities: Sequence[int]):
        self.labels = tuple(str(x) for x in labels)
        self.parities = tuple(int(p) for p in parities)
        if len(self.labels) != len(self.parities):
            raise ValueError("labels and parities differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        for p in self.parities:
            if p not in (EVEN, ODD):
                raise ValueError(f"parity must be 0 or 1, got {p}")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self._index[label]

    def parity(self, i: int) -> int:
        return self.parities[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedBasis)
            and self.labels == other.labels
            and self.parities == other.parities
        )

    def __hash__(self):
        return hash((self.labels, self.parities))

    def __repr__(self) -> str:
        return f"GradedBasis({len(self.labels)} elements)"


def _clean_table(dim: int, table) -> tuple:
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            cell = table[i][j]
            cell = {k: x for k, x in cell.items() if x}
            for k in cell:
                if not 0 <= k < dim:
                    raise ValueError(f"structure constant index {k} out of range")
            row.append(cell)
        out.append(tuple(row))
    return tuple(out)


def vector_parity(v: Vector, basis: GradedBasis) -> Optional[int]:
    """Parity of a homogeneous vector, None for 0, ValueError if mixed."""
    par = None
    for i in v:
        p = basis.parities[i]
        if par is None:
            par = p
        elif par != p:
            raise ValueError("vector is not homogeneous")
    return par


class LieSuperalgebra:
    """Lie superalgebra from structure constants; validated eagerly."""

    __slots__ = ("basis", "table")

    def __init__(self, basis: GradedBasis, table, validate: bool = True):
        self.basis = basis
        self.table = _clean_table(len(basis), table)
        if validate:
            report = validate_lie(self)
            if not report.ok:
                raise InvalidAlgebraError(report)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket(self, u: Vector, v: Vector) -> Vector:
        """Bilinear extension of the structure constants."""
        out: Vector = {}
        table = self.table
        for i, x in u.items():
            row = table[i]
            for j, y in v.items():
                cell = row[j]
                if cell:
                    vec_add_scaled(out, cell, x * y)
        return out

    def __repr__(self) -> str:
        return f"LieSuperalgebra(dim={self.dim})"


class AssocSuperalgebra:
    """Unital associative superalgebra from structure constants."""

    __slots__ = ("basis", "table", "unit")

    def __init__(self, basis: GradedBasis, table, unit: Vector, validate: bool = True):
        self.basis = basis
        self.table = _clean_table(len(basis), table)
        self.unit = {k: Fraction(x) for k, x in unit.items() if x}
        if validate:
            report = validate_assoc(self)
            if not report.ok:
                raise InvalidAlgebraError(report)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def product(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        table = self.table
        for i, x in u.items():
            row = table[i]
            for j, y in v.items():
                cell = row[j]
                if cell:
                    vec_add_scaled(out, cell, x * y)
        return out

    def is_supercommutative(self) -> bool:
        """ab == (-1)^{|a||b|} ba on all basis pairs."""
        par = self.basis.parities
        t = self.table
        for i in range(self.dim):
            for j in range(i, self.dim):
                sign = -ONE if par[i] and par[j] else ONE
                if t[i][j] != {k: sign * x for k, x in t[j][i].items()}:
                    return False
        return True

    def __repr__(self) -> str:
        return f"AssocSuperalgebra(dim={self.dim})"


def _check_grading(report: ValidationReport, basis: GradedBasis, table) -> None:
    par = basis.parities
    for i in range(len(basis)):
        for j in range(len(basis)):
            want = (par[i] + par[j]) & 1
            for k in table[i][j]:
                if par[k] != want:
                    report.add(
                        "grading",
                        (basis.labels[i], basis.labels[j]),
                        f"component {basis.labels[k]} has parity {par[k]}, expected {want}",
                    )


def validate_lie(L: LieSuperalgebra) -> ValidationReport:
    """Grading, super skew-symmetry, and the cyclic super Jacobi identity.

    The Jacobi expression is invariant under cyclic rotation of (i, j, k),
    so triples are checked once per cyclic class.
    """
    report = ValidationReport()
    basis, table = L.basis, L.table
    d = len(basis)
    par = basis.parities
    labels = basis.labels
    _check_grading(report, basis, table)
    for i in range(d):
        for j in range(i, d):
            sign = -ONE if par[i] and par[j] else ONE
            expected = {k: -sign * x for k, x in table[i][j].items()}
            if table[j][i] != expected:
                report.add("skew", (labels[i], labels[j]), "[y,x] != -(-1)^{|x||y|}[x,y]")
        if par[i] == EVEN and table[i][i]:
            report.add("skew", (labels[i], labels[i]), "[x,x] != 0 for even x")
    if not report.ok:
        return report
    for i in range(d):
        ti = table[i]
        for j in range(i, d):
            tj = table[j]
            for k in range(i, d):
                acc: Vector = {}
                cell = tj[k]
                if cell:
                    s = -ONE if par[i] and par[k] else ONE
                    for t, x in cell.items():
                        vec_add_scaled(acc, ti[t], s * x)
                cell = table[k][i]
                if cell:
                    s = -ONE if par[j] and par[i] else ONE
                    for t, x in cell.items():
                        vec_add_scaled(acc, tj[t], s * x)
                cell = ti[j]
                if cell:
                    s = -ONE if par[k] and par[j] else ONE
                    tk = table[k]
                    for t, x in cell.items():
                        vec_add_scaled(acc, tk[t], s * x)
                if acc:
                    report.add("jacobi", (labels[i], labels[j], labels[k]), "cyclic sum != 0")
    return report


def validate_assoc(A: AssocSuperalgebra) -> ValidationReport:
    """Grading, associativity on all ordered triples, two-sided even unit."""
    report = ValidationReport()
    basis, table = A.basis, A.table
    d = len(basis)
    labels = basis.labels
    _check_grading(report, basis, table)
    try:
        upar = vector_parity(A.unit, basis)
    except ValueError:
        report.add("unit", ("1",), "unit is not homogeneous")
        upar = None
    if upar == ODD:
        report.add("unit", ("1",), "unit must be even")
    for i in range(d):
        left = A.product(A.unit, {i: ONE})
        right = A.product({i: ONE}, A.unit)
        if left != {i: ONE}:
            report.add("unit", (labels[i],), "1 * x != x")
        if right != {i: ONE}:
            report.add("unit", (labels[i],), "x * 1 != x")
    for i in range(d):
        ti = table[i]
        for j in range(d):
            tij = ti[j]
            tj = table[j]
            for k in range(d):
                lhs: Vector = {}
                for t, x in tij.items():
                    vec_add_scaled(lhs, table[t][k], x)
                rhs: Vector = {}
                for t, x in tj[k].items():
                    vec_add_scaled(rhs, ti[t], x)
                if lhs != rhs:
                    report.add("associativity", (labels[i], labels[j], labels[k]), "(xy)z != x(yz)")
    return report


def lie_from_assoc(A: AssocSuperalgebra, validate: bool = True) -> LieSuperalgebra:
    """Supercommutator algebra: [x,y] = xy - (-1)^{|x||y|} yx."""
    d = A.dim
    par = A.basis.parities
    t = A.table
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            cell = dict(t[i][j])
            sign = -ONE if par[i] and par[j] else ONE
            vec_add_scaled(cell, t[j][i], -sign)
            row.append(cell)
        table.append(row)
    return LieSuperalgebra(A.basis, table, validate=validate)


class GradedLinearMap:
    """Even linear map between graded spaces, stored column-wise."""

    __slots__ = ("domain", "codomain", "columns")

    def __init__(self, domain: GradedBasis, codomain: GradedBasis, columns: Sequence[Vector]):
        if len(columns) != len(domain):
            raise ValueError("one column per domain basis element required")
        cols = []
        for j, col in enumerate(columns):
            c = {k: x for k, x in col.items() if x}
            for k in c:
                if not 0 <= k < len(codomain):
                    raise ValueError("column entry out of codomain range")
            cols.append(c)
        self.domain = domain
        self.codomain = codomain
        self.columns = tuple(cols)

    @classmethod
    def identity(cls, basis: GradedBasis) -> "GradedLinearMap":
        return cls(basis, basis, [{i: ONE} for i in range(len(basis))])

    @classmethod
    def zero(cls, domain: GradedBasis, codomain: GradedBasis) -> "GradedLinearMap":
        return cls(domain, codomain, [{} for _ in range(len(domain))])

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for j, x in v.items():
            vec_add_scaled(out, self.columns[j], x)
        return out

    def compose(self, inner: "GradedLinearMap") -> "GradedLinearMap":
        """self after inner."""
        if inner.codomain != self.domain:
            raise ValueError("composition domain mismatch")
        cols = [self.apply(c) for c in inner.columns]
        return GradedLinearMap(inner.domain, self.codomain, cols)

    def is_parity_preserving(self) -> bool:
        dpar = self.domain.parities
        cpar = self.codomain.parities
        for j, col in enumerate(self.columns):
            for k in col:
                if cpar[k] != dpar[j]:
                    return False
        return True

    def matrix(self) -> SparseMatrix:
        rows: list = [dict() for _ in range(len(self.codomain))]
        for j, col in enumerate(self.columns):
            for k, x in col.items():
                rows[k][j] = x
        return SparseMatrix(rows, len(self.domain))

    def rank(self) -> int:
        ech = Echelon()
        for col in self.columns:
            ech.insert(col)
        return ech.rank

    def is_injective(self) -> bool:
        return self.rank() == len(self.domain)

    def is_surjective(self) -> bool:
        return self.rank() == len(self.codomain)

    def is_bijective(self) -> bool:
        return len(self.domain) == len(self.codomain) and self.rank() == len(self.domain)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedLinearMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.columns == other.columns
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, tuple(tuple(sorted(c.items())) for c in self.columns)))

    def __repr__(self) -> str:
        return f"GradedLinearMap({len(self.domain)} -> {len(self.codomain)})"


class Subspace:
    """Homogeneous subspace of an algebra's underlying graded space."""

    __slots__ = ("ambient", "vectors")

    def __init__(self, ambient, vectors: Sequence[Vector]):
        basis = ambient.basis
        vecs = []
        for v in vectors:
            v = {k: x for k, x in v.items() if x}
            if not v:
                raise ValueError("zero vector in subspace basis")
            vector_parity(v, basis)  # raises if not homogeneous
            vecs.append(v)
        ech = Echelon()
        for v in vecs:
            if ech.insert(v) is None:
                raise ValueError("subspace basis is linearly dependent")
        self.ambient = ambient
        self.vectors = tuple(vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, v: Vector) -> bool:
        ech = Echelon()
        for b in self.vectors:
            ech.insert(b)
        return ech.contains(v)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} of {self.ambient!r})"


def check_morphism(f: GradedLinearMap, L: LieSuperalgebra, M: LieSuperalgebra) -> bool:
    """True iff f is an even Lie morphism, checked basis-pairwise."""
    if f.domain != L.basis or f.codomain != M.basis:
        return False
    if not f.is_parity_preserving():
        return False
    cols = f.columns
    for i in range(L.dim):
        fi = cols[i]
        for j in range(L.dim):
            if f.apply(L.table[i][j]) != M.bracket(fi, cols[j]):
                return False
    return True


def centre(L: LieSuperalgebra) -> Subspace:
    """Kernel of x -> ([x, b_j])_j, canonical basis from the RREF."""
    d = L.dim
    rows: dict = {}
    for i in range(d):
        for j in range(d):
            for k, x in L.table[i][j].items():
                rows.setdefault(j * d + k, {})[i] = x
    m = SparseMatrix([rows.get(r, {}) for r in sorted(rows)], d)
    return Subspace(L, kernel_basis(m))


def derived_subalgebra(L: LieSuperalgebra) -> Subspace:
    """Span of all basis brackets, canonical echelon basis."""
    spans = [cell for row in L.table for cell in row if cell]
    ech = echelon_rows(spans)
    return Subspace(L, [ech[p] for p in sorted(ech)])


def is_perfect(L: LieSuperalgebra) -> bool:
    spans = [cell for row in L.table for cell in row if cell]
    return rank_of_rows(spans) == L.dim


class NotCentralError(ValueError):
    pass


def quotient_by_central(L: LieSuperalgebra, Z: Subspace):
    """Quotient by a central subspace.

    Returns (quotient algebra, projection map).  The quotient basis is
    the canonical one of the presentation (non-pivot coordinates of L).
    """
    if Z.ambient is not L:
        raise ValueError("subspace does not live in the given algebra")
    for z in Z.vectors:
        for j in range(L.dim):
            w = L.bracket(z, {j: ONE})
            if w:
                raise NotCentralError(
                    f"subspace vector is not central: [z, {L.basis.labels[j]}] != 0"
                )
    pres = quotient_space(L.dim, list(Z.vectors))
    free = pres.free_columns
    labels = [L.basis.labels[c] for c in free]
    parities = [L.basis.parities[c] for c in free]
    basis = GradedBasis(labels, parities)
    table = []
    for a in free:
        row = []
        for b in free:
            row.append(pres.project(L.table[a][b]))
        table.append(row)
    quotient = LieSuperalgebra(basis, table)
    proj_cols = [pres.project({j: ONE}) for j in range(L.dim)]
    projection = GradedLinearMap(L.basis, basis, proj_cols)
    return quotient, projection


def subalgebra_from_vectors(
    parent: LieSuperalgebra,
    vectors: Sequence[Vector],
    labels: Optional[Sequence[str]] = None,
    validate: bool = True,
):
    """Subalgebra on the given independent homogeneous vectors.

    Returns (algebra, embedding into parent).  Raises if the span is not
    closed under the bracket; structure constants are certificates of
    the tracked elimination, so they are exact and deterministic.
    """
    n = len(vectors)
    basis_par = []
    ech = Echelon(track=True)
    for idx, v in enumerate(vectors):
        p = vector_parity(v, parent.basis)
        if p is None:
            raise ValueError("zero vector in subalgebra basis")
        basis_par.append(p)
        if ech.insert(v, tag=idx) is None:
            raise ValueError("subalgebra basis is linearly dependent")
    if labels is None:
        labels = [f"b{i}" for i in range(n)]
    basis = GradedBasis(labels, basis_par)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            w = parent.bracket(vectors[i], vectors[j])
            residue, cert = ech.reduce(w)
            if residue:
                raise ValueError(
                    f"span not closed under bracket at pair ({labels[i]}, {labels[j]})"
                )
            row.append({t: x for t, x in cert.items() if x})
        table.append(row)
    algebra = LieSuperalgebra(basis, table, validate=validate)
    embedding = GradedLinearMap(basis, parent.basis, list(vectors))
    return algebra, embedding
