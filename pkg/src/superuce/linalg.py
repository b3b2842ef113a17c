"""Exact sparse linear algebra over the rationals.

Conventions used throughout the package:

* A vector is a dict {coordinate index: Fraction} with no stored zeros.
* A matrix acts on column vectors: (M v)[r] = sum_c M[r][c] * v[c].
* Echelon forms are fully reduced (RREF).  The RREF of a row space is
  unique, so every function here is deterministic bit for bit.  The
  pivot of a row is its first nonzero entry in column order, and rows
  are processed in the order given.

The row-space routines partition the input rows into column-connected
clusters (union-find on shared columns) and eliminate each cluster
separately.  Clusters share no columns, so the union of the per-cluster
reduced forms is exactly the global RREF; this is an optimization only,
the output is identical to single-pass elimination.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

Vector = dict  # {int: Fraction}

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_is_zero(v: Vector) -> bool:
    return not v


def vec_copy(v: Vector) -> Vector:
    return dict(v)


def vec_scale(v: Vector, c: Fraction) -> Vector:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def vec_add(u: Vector, v: Vector) -> Vector:
    w = dict(u)
    for i, x in v.items():
        y = w.get(i, ZERO) + x
        if y:
            w[i] = y
        else:
            w.pop(i, None)
    return w


def vec_sub(u: Vector, v: Vector) -> Vector:
    w = dict(u)
    for i, x in v.items():
        y = w.get(i, ZERO) - x
        if y:
            w[i] = y
        else:
            w.pop(i, None)
    return w


def vec_add_scaled(u: Vector, v: Vector, c: Fraction) -> None:
    """u += c*v in place."""
    if not c:
        return
    for i, x in v.items():
        y = u.get(i, ZERO) + c * x
        if y:
            u[i] = y
        else:
            u.pop(i, None)


def vec_eq(u: Vector, v: Vector) -> bool:
    return u == v


class SparseMatrix:
    """Immutable sparse matrix; rows are vectors over column indices."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Vector], ncols: int):
        clean = []
        for r in rows:
            row = {c: x for c, x in r.items() if x}
            for c in row:
                if not 0 <= c < ncols:
                    raise ValueError(f"column index {c} out of range 0..{ncols - 1}")
            clean.append(row)
        self.rows = tuple(clean)
        self.nrows = len(clean)
        self.ncols = ncols

    @classmethod
    def from_triples(cls, triples: Iterable[tuple], nrows: int, ncols: int) -> "SparseMatrix":
        rows: list = [dict() for _ in range(nrows)]
        for r, c, x in triples:
            if x:
                rows[r][c] = rows[r].get(c, ZERO) + x
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls([{i: ONE} for i in range(n)], n)

    def entries(self) -> Iterator[tuple]:
        for r, row in enumerate(self.rows):
            for c, x in row.items():
                yield r, c, x

    def apply(self, v: Vector) -> Vector:
        """Matrix times column vector."""
        out: Vector = {}
        for r, row in enumerate(self.rows):
            s = ZERO
            if len(row) <= len(v):
                for c, x in row.items():
                    y = v.get(c)
                    if y:
                        s += x * y
            else:
                for c, y in v.items():
                    x = row.get(c)
                    if x:
                        s += x * y
            if s:
                out[r] = s
        return out

    def transpose(self) -> "SparseMatrix":
        rows: list = [dict() for _ in range(self.ncols)]
        for r, row in enumerate(self.rows):
            for c, x in row.items():
                rows[c][r] = x
        return SparseMatrix(rows, self.nrows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, tuple(tuple(sorted(r.items())) for r in self.rows)))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, {sum(len(r) for r in self.rows)} entries)"


class Echelon:
    """Incremental elimination basis for a growing set of rows.

    Stored rows are normalized (pivot coefficient 1) and forward-reduced:
    every column of a stored row is >= its pivot.  With track=True each
    row carries a certificate expressing it over the inserted originals,
    which makes reduce() return exact membership certificates.
    """

    __slots__ = ("rows", "certs", "track", "_ntags")

    def __init__(self, track: bool = False):
        self.rows: dict = {}  # pivot column -> row
        self.certs: dict = {}  # pivot column -> {tag: coefficient}
        self.track = track
        self._ntags = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple:
        return tuple(sorted(self.rows))

    def reduce(self, vec: Vector):
        """Forward-reduce vec against the stored rows.

        Returns (residue, certificate).  The residue contains no pivot
        columns and residue == vec - sum(cert[t] * original_t) holds
        exactly when tracking is on (certificate is None otherwise).
        """
        v = dict(vec)
        cert: Optional[dict] = {} if self.track else None
        rows = self.rows
        heap = [c for c in v]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            coef = v.get(c)
            if not coef:
                v.pop(c, None)
                continue
            row = rows.get(c)
            if row is None:
                continue
            del v[c]
            for col, val in row.items():
                if col == c:
                    continue
                y = v.get(col)
                if y is None:
                    v[col] = -coef * val
                    heapq.heappush(heap, col)
                else:
                    y = y - coef * val
                    if y:
                        v[col] = y
                    else:
                        del v[col]
            if cert is not None:
                for t, cv in self.certs[c].items():
                    y = cert.get(t, ZERO) + coef * cv
                    if y:
                        cert[t] = y
                    else:
                        cert.pop(t, None)
        return v, cert

    def insert(self, vec: Vector, tag=None):
        """Add vec to the span.  Returns the new pivot, or None if dependent."""
        if self.track and tag is None:
            tag = self._ntags
        self._ntags += 1
        residue, cert = self.reduce(vec)
        if not residue:
            return None
        p = min(residue)
        coef = residue[p]
        inv = ONE / coef
        row = {c: x * inv for c, x in residue.items()}
        self.rows[p] = row
        if self.track:
            rc = {t: -cv * inv for t, cv in cert.items() if cv}
            rc[tag] = rc.get(tag, ZERO) + inv
            if not rc[tag]:
                del rc[tag]
            self.certs[p] = rc
        return p

    def contains(self, vec: Vector) -> bool:
        residue, _ = self.reduce(vec)
        return not residue

    def rref_rows(self) -> dict:
        """Fully reduced rows as {pivot: row}; one back-substitution pass."""
        done: dict = {}
        for p in sorted(self.rows, reverse=True):
            r = dict(self.rows[p])
            for c in [c for c in r if c != p and c in done]:
                val = r.pop(c)
                if not val:
                    continue
                for c2, v2 in done[c].items():
                    if c2 == c:
                        continue
                    y = r.get(c2, ZERO) - val * v2
                    if y:
                        r[c2] = y
                    else:
                        r.pop(c2, None)
            done[p] = r
        return done


def _cluster_rows(rows: Sequence[Vector]):
    """Partition row indices into column-connected clusters."""
    parent: dict = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for row in rows:
        it = iter(row)
        first = next(it, None)
        if first is None:
            continue
        if first not in parent:
            parent[first] = first
        a = find(first)
        for c in it:
            if c not in parent:
                parent[c] = c
            b = find(c)
            if a != b:
                parent[b] = a
    groups: dict = {}
    for idx, row in enumerate(rows):
        if not row:
            continue
        root = find(next(iter(row)))
        groups.setdefault(root, []).append(idx)
    return groups


def echelon_rows(rows: Sequence[Vector], cluster: bool = True) -> dict:
    """RREF of the span of rows, as {pivot column: row}."""
    if cluster:
        groups = _cluster_rows(rows)
        if len(groups) > 1:
            out: dict = {}
            for root in sorted(groups):
                ech = Echelon()
                for idx in groups[root]:
                    ech.insert(rows[idx])
                out.update(ech.rref_rows())
            return out
    ech = Echelon()
    for row in rows:
        ech.insert(row)
    return ech.rref_rows()


def rref(matrix: SparseMatrix):
    """Reduced row echelon form.

    Returns (echelon matrix, pivot columns, rank); echelon rows are
    sorted by pivot column and the zero rows are dropped.
    """
    ech = echelon_rows(matrix.rows)
    pivots = tuple(sorted(ech))
    rows = [ech[p] for p in pivots]
    return SparseMatrix(rows, matrix.ncols), pivots, len(pivots)


def rank_of_rows(rows: Sequence[Vector], cluster: bool = True) -> int:
    if cluster:
        groups = _cluster_rows(rows)
        if len(groups) > 1:
            total = 0
            for root in sorted(groups):
                ech = Echelon()
                for idx in groups[root]:
                    ech.insert(rows[idx])
                total += ech.rank
            return total
    ech = Echelon()
    for row in rows:
        ech.insert(row)
    return ech.rank


def kernel_basis(matrix: SparseMatrix) -> list:
    """Canonical basis of {v : M v = 0}, one vector per free column.

    The vector for free column j has coordinate 1 at j, the negated
    echelon entries at the pivot columns, and 0 elsewhere.
    """
    ech = echelon_rows(matrix.rows)
    pivset = set(ech)
    out = []
    for j in range(matrix.ncols):
        if j in pivset:
            continue
        v = {j: ONE}
        for p, row in ech.items():
            x = row.get(j)
            if x:
                v[p] = -x
        out.append(v)
    return out


def span_membership(v: Vector, basis: Sequence[Vector]) -> bool:
    """Exact test: is v in the span of basis?"""
    ech = Echelon()
    for b in basis:
        ech.insert(b)
    return ech.contains(v)


def solve_in_span(vectors: Sequence[Vector], target: Vector):
    """Coefficients expressing target over vectors, or None.

    Returns {index: Fraction} with target == sum coeff[i] * vectors[i];
    the certificate of the deterministic forward elimination.
    """
    ech = Echelon(track=True)
    for i, b in enumerate(vectors):
        ech.insert(b, tag=i)
    residue, cert = ech.reduce(target)
    if residue:
        return None
    return cert


class QuotientPresentation:
    """Quotient of Q^ambient_dim by the span of relation rows.

    The quotient basis is indexed by the non-pivot (free) columns of the
    RREF of the relations, in increasing column order.  The canonical
    section sends quotient coordinate q to the ambient basis vector at
    free column q (all non-pivot coordinates other than q are zero), so
    project(section(w)) == w exactly and section(project(v)) - v lies in
    the relation span.
    """

    __slots__ = ("ambient_dim", "relations", "pivots", "free_columns", "_qindex")

    def __init__(self, ambient_dim: int, relation_rows: dict):
        self.ambient_dim = ambient_dim
        self.relations = relation_rows  # {pivot: rref row}
        self.pivots = tuple(sorted(relation_rows))
        pivset = set(self.pivots)
        self.free_columns = tuple(c for c in range(ambient_dim) if c not in pivset)
        self._qindex = {c: q for q, c in enumerate(self.free_columns)}

    @property
    def dim(self) -> int:
        return len(self.free_columns)

    def project(self, v: Vector) -> Vector:
        """Ambient vector to quotient coordinates."""
        qi = self._qindex
        rel = self.relations
        out: Vector = {}
        extra = None
        for c, x in v.items():
            q = qi.get(c)
            if q is not None:
                y = out.get(q, ZERO) + x
                if y:
                    out[q] = y
                else:
                    out.pop(q, None)
            else:
                if extra is None:
                    extra = []
                extra.append((c, x))
        if extra:
            for c, x in extra:
                row = rel[c]
                for c2, v2 in row.items():
                    if c2 == c:
                        continue
                    q = qi[c2]  # rref rows touch no other pivot column
                    y = out.get(q, ZERO) - x * v2
                    if y:
                        out[q] = y
                    else:
                        out.pop(q, None)
        return out

    def lift(self, w: Vector) -> Vector:
        """Canonical section, quotient coordinates to ambient."""
        free = self.free_columns
        return {free[q]: x for q, x in w.items() if x}

    def projection_matrix(self) -> SparseMatrix:
        rows: list = [dict() for _ in range(self.dim)]
        for c in range(self.ambient_dim):
            for q, x in self.project({c: ONE}).items():
                rows[q][c] = x
        return SparseMatrix(rows, self.ambient_dim)

    def section_matrix(self) -> SparseMatrix:
        rows: list = [dict() for _ in range(self.ambient_dim)]
        for q, c in enumerate(self.free_columns):
            rows[c][q] = ONE
        return SparseMatrix(rows, self.dim)

    def __repr__(self) -> str:
        return f"QuotientPresentation(ambient={self.ambient_dim}, dim={self.dim})"


def quotient_space(ambient_dim: int, spanning: Sequence[Vector]) -> QuotientPresentation:
    """Presentation of Q^ambient_dim modulo the span of the given vectors."""
    for row in spanning:
        for c in row:
            if not 0 <= c < ambient_dim:
                raise ValueError(f"relation coordinate {c} out of range 0..{ambient_dim - 1}")
    return QuotientPresentation(ambient_dim, echelon_rows(spanning))
