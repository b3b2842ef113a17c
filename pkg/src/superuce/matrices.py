"""Matrix superalgebra families over builtin coefficient superalgebras.

Mat(m,n;A) has basis E_ij(a) for positions i, j (the first m indices
even, the last n odd) and a running over a homogeneous basis of A; the
parity of E_ij(a) is |i| + |j| + |a|.  The product is the graded tensor
product of the matrix units with A: the entry of the left factor moves
past the position grading of the right factor,

    E_ij(a) E_pq(b) = [j == p] (-1)^{|a|(|p|+|q|)} E_iq(ab).

Over a purely even A (or with n = 0) every sign is +1 and this is plain
matrix multiplication.  The sign is forced: it is what makes
str([x,y]) land in the supercommutator span [A,A] for every pair, so
that sl (below) is closed under the bracket and equals the derived
subalgebra of gl.  gl is the supercommutator algebra of Mat.

Families:

* sl(m,n;A): supertrace in the span of supercommutators [A,A]; basis is
  the off-diagonal E_ij(a) ordered by (i, j, a), then the diagonal
  differences H_i(a) = E_ii(a) - s_i s_{i+1} E_{i+1,i+1}(a) with
  s_i = (-1)^{|i|}, then E_11(s_1 c) for c in an echelon basis of [A,A].
* osp(m,n;A), n even, A supercommutative: the full stabilizer of the
  even form with Gram matrix diag(I_m, J_n), J_n the standard symplectic
  block, computed as a kernel per homogeneous sector.  The module is the
  free right A-module on the column basis and the form is
  beta(e_r a, e_s b) = (-1)^{|a||s|} G_rs ab; this supermodule sign
  convention is ours (documented, not asserted as anyone else's), and
  over purely even A it collapses to the classical stabilizer condition.
* p(m) over Q: stabilizer of the odd form with Gram [[0, I_m], [-I_m, 0]]
  intersected with supertrace zero (as a subalgebra of sl(m,m;Q)).
* sq(m) over Q: matrices [[a, b], [b, a]] in gl(m,m;Q) with tr b = 0,
  computed as a kernel of the equality and trace conditions.

The supertrace cocycle on sl(m,n;A) for supercommutative A takes values
in the pairing space of A:

    tau(x, y) = sum_{i, j} sigma_i (-1)^{|x_ij|(|i|+|j|)} <<x_ij, y_ji>>,

sigma_i = +1 on the first m row indices and -1 on the rest.  The entry
parity factor mirrors the graded tensor product sign of Mat and is +1
whenever the entry is even.

steinberg_check verifies the Steinberg presentation inside the built
extension: with ehat_ij(a) the class of E_ik(a) (x) E_kj(1) for the
smallest admissible middle index k, it checks independence of k,
linearity in a, the bracket relations among generators (the doubly
matched index pattern is not a presentation relation and is excluded),
and that the ehat generate the whole extension.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Optional, Sequence

from .algebra import (
    AssocSuperalgebra,
    GradedBasis,
    GradedLinearMap,
    LieSuperalgebra,
    lie_from_assoc,
    subalgebra_from_vectors,
    vector_parity,
)
from .cyclic import CyclicPairs, cyclic_pairs
from .linalg import (
    Echelon,
    SparseMatrix,
    Vector,
    echelon_rows,
    kernel_basis,
    vec_add_scaled,
)
from .uce import Cocycle2, UceAlgebra, build_uce, extension_from_cocycle, h2, validate_cocycle

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------- coefficients

_COEFF_CACHE: dict = {}


def rational_algebra() -> AssocSuperalgebra:
    return AssocSuperalgebra(GradedBasis(["1"], [0]), [[{0: ONE}]], {0: ONE})


def truncated_polynomials(N: int) -> AssocSuperalgebra:
    """Q[t]/(t^N)."""
    if N < 2:
        raise ValueError("need N >= 2")
    labels = ["1", "t"] + [f"t^{k}" for k in range(2, N)]
    table = [[({i + j: ONE} if i + j < N else {}) for j in range(N)] for i in range(N)]
    return AssocSuperalgebra(GradedBasis(labels, [0] * N), table, {0: ONE})


def plane_square_zero() -> AssocSuperalgebra:
    """Q[x,y]/(x,y)^2."""
    labels = ["1", "x", "y"]
    table = [[{j: ONE} if i == 0 else ({i: ONE} if j == 0 else {}) for j in range(3)] for i in range(3)]
    return AssocSuperalgebra(GradedBasis(labels, [0, 0, 0]), table, {0: ONE})


def grassmann(r: int) -> AssocSuperalgebra:
    """Exterior algebra on r odd generators."""
    if r < 1:
        raise ValueError("need r >= 1")
    from itertools import combinations

    subsets = [S for k in range(r + 1) for S in combinations(range(1, r + 1), k)]
    index = {S: i for i, S in enumerate(subsets)}
    labels = ["1" if not S else "".join(f"x{i}" for i in S) for S in subsets]
    parities = [len(S) & 1 for S in subsets]
    d = len(subsets)
    table = []
    for S in subsets:
        row = []
        for T in subsets:
            if set(S) & set(T):
                row.append({})
            else:
                seq = list(S) + list(T)
                sign = ONE
                for i in range(len(seq)):
                    for j in range(i + 1, len(seq)):
                        if seq[i] > seq[j]:
                            sign = -sign
                row.append({index[tuple(sorted(seq))]: sign})
        table.append(row)
    return AssocSuperalgebra(GradedBasis(labels, parities), table, {0: ONE})


_COEFF_GRAMMAR = """\
coefficient names: Q | Q[t]/(t^N) with 2 <= N <= 6 | Q[x,y]/(x,y)^2
                 | Grassmann(r) with 1 <= r <= 3 | Mat(2,0;Q)"""


def coefficient_algebra(name: str) -> AssocSuperalgebra:
    """Builtin coefficient algebra by name; instances are cached by name."""
    key = name.replace(" ", "")
    if key in _COEFF_CACHE:
        return _COEFF_CACHE[key]
    if key == "Q":
        alg = rational_algebra()
    elif m := re.fullmatch(r"Q\[t\]/\(t\^([0-9]+)\)", key):
        N = int(m.group(1))
        if not 2 <= N <= 6:
            raise ValueError(f"unknown coefficient algebra {name!r}; {_COEFF_GRAMMAR}")
        alg = truncated_polynomials(N)
    elif key == "Q[x,y]/(x,y)^2":
        alg = plane_square_zero()
    elif m := re.fullmatch(r"Grassmann\(([0-9]+)\)", key):
        r = int(m.group(1))
        if not 1 <= r <= 3:
            raise ValueError(f"unknown coefficient algebra {name!r}; {_COEFF_GRAMMAR}")
        alg = grassmann(r)
    elif key == "Mat(2,0;Q)":
        alg = matrix_superalgebra(2, 0, rational_algebra())
    else:
        raise ValueError(f"unknown coefficient algebra {name!r}; {_COEFF_GRAMMAR}")
    _COEFF_CACHE[key] = alg
    return alg


# ------------------------------------------------------------------- Mat and gl

def matrix_superalgebra(m: int, n: int, A: AssocSuperalgebra,
                        validate: bool = True) -> AssocSuperalgebra:
    """Mat(m,n;A) on basis E_ij(a), parity |i| + |j| + |a|.

    Product: E_ij(a) E_pq(b) = [j == p] (-1)^{|a|(|p|+|q|)} E_iq(ab)
    (the graded tensor product sign; trivial over even A or for n = 0).
    """
    size = m + n
    if size < 1:
        raise ValueError("need m + n >= 1")
    dA = A.dim
    apar = A.basis.parities
    alabels = A.basis.labels
    d = size * size * dA

    def coord(i: int, j: int, t: int) -> int:
        return (i * size + j) * dA + t

    labels = []
    parities = []
    for i in range(size):
        pi = 0 if i < m else 1
        for j in range(size):
            pj = 0 if j < m else 1
            for t in range(dA):
                labels.append(f"E{i + 1},{j + 1}({alabels[t]})")
                parities.append((pi + pj + apar[t]) & 1)
    table = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(size):
        for j in range(size):
            pj = 0 if j < m else 1
            for t in range(dA):
                left = coord(i, j, t)
                for q in range(size):
                    pq = 0 if q < m else 1
                    sign = -ONE if apar[t] and ((pj + pq) & 1) else ONE
                    for s in range(dA):
                        right = coord(j, q, s)
                        prod = A.table[t][s]
                        if prod:
                            table[left][right] = {coord(i, q, k): sign * x for k, x in prod.items()}
    unit = {}
    for i in range(size):
        for t, x in A.unit.items():
            unit[coord(i, i, t)] = x
    return AssocSuperalgebra(GradedBasis(labels, parities), table, unit, validate=validate)


class MatrixFamily:
    """A matrix family member together with its gl environment."""

    __slots__ = ("kind", "m", "n", "coeff", "gl_assoc", "gl", "algebra", "embedding")

    def __init__(self, kind, m, n, coeff, gl_assoc, gl, algebra, embedding):
        self.kind = kind
        self.m = m
        self.n = n
        self.coeff = coeff
        self.gl_assoc = gl_assoc
        self.gl = gl
        self.algebra = algebra
        self.embedding = embedding

    @property
    def size(self) -> int:
        return self.m + self.n

    def index_parity(self, i: int) -> int:
        """Parity of position i (0-based)."""
        return 0 if i < self.m else 1

    def coord(self, i: int, j: int, t: int) -> int:
        return (i * self.size + j) * self.coeff.dim + t

    def E(self, i: int, j: int, a: Vector) -> Vector:
        """gl vector of the matrix with entry a at position (i, j), 0-based."""
        base = (i * self.size + j) * self.coeff.dim
        return {base + t: x for t, x in a.items() if x}

    def entry(self, v: Vector, i: int, j: int) -> Vector:
        """The (i, j) entry of a gl vector, as a coefficient vector."""
        dA = self.coeff.dim
        base = (i * self.size + j) * dA
        out = {}
        for t in range(dA):
            x = v.get(base + t)
            if x:
                out[t] = x
        return out

    def __repr__(self) -> str:
        return f"MatrixFamily({self.kind}, m={self.m}, n={self.n}, dim={self.algebra.dim})"


def supertrace(fam: MatrixFamily, v: Vector) -> Vector:
    """str(x) = sum over even diagonal entries minus sum over odd ones."""
    dA = fam.coeff.dim
    size = fam.size
    out: Vector = {}
    for i in range(size):
        sign = ONE if i < fam.m else -ONE
        base = (i * size + i) * dA
        for t in range(dA):
            x = v.get(base + t)
            if x:
                y = out.get(t, ZERO) + sign * x
                if y:
                    out[t] = y
                else:
                    del out[t]
    return out


def _supercommutator_span(A: AssocSuperalgebra) -> list:
    rows = []
    par = A.basis.parities
    for i in range(A.dim):
        for j in range(A.dim):
            cell = dict(A.table[i][j])
            sign = -ONE if par[i] and par[j] else ONE
            vec_add_scaled(cell, A.table[j][i], -sign)
            if cell:
                rows.append(cell)
    ech = echelon_rows(rows)
    return [ech[p] for p in sorted(ech)]


def _sl_vectors(fam_m: int, fam_n: int, A: AssocSuperalgebra):
    size = fam_m + fam_n
    dA = A.dim
    alabels = A.basis.labels

    def coord(i, j, t):
        return (i * size + j) * dA + t

    def sigma(i):
        return ONE if i < fam_m else -ONE

    vectors = []
    labels = []
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            for t in range(dA):
                vectors.append({coord(i, j, t): ONE})
                labels.append(f"E{i + 1},{j + 1}({alabels[t]})")
    for i in range(size - 1):
        ss = sigma(i) * sigma(i + 1)
        for t in range(dA):
            vectors.append({coord(i, i, t): ONE, coord(i + 1, i + 1, t): -ss})
            labels.append(f"H{i + 1}({alabels[t]})")
    for idx, c in enumerate(_supercommutator_span(A)):
        s1 = sigma(0)
        vectors.append({coord(0, 0, t): s1 * x for t, x in c.items()})
        labels.append(f"C{idx}")
    return vectors, labels


def _gram_osp(m: int, n: int):
    size = m + n
    h = n // 2
    G = [[ZERO] * size for _ in range(size)]
    for i in range(m):
        G[i][i] = ONE
    for r in range(h):
        G[m + r][m + h + r] = ONE
        G[m + h + r][m + r] = -ONE
    return G


def _gram_p(m: int):
    size = 2 * m
    G = [[ZERO] * size for _ in range(size)]
    for r in range(m):
        G[r][m + r] = ONE
        G[m + r][r] = -ONE
    return G


def _stabilizer_vectors(m: int, n: int, A: AssocSuperalgebra, G,
                        trace_row: bool = False) -> list:
    """Kernel of the form-invariance condition, per homogeneous sector.

    The module is the free right A-module on the position basis, and the
    action carries the graded tensor product sign,
    E_ij(c) (e_r a) = [j == r] (-1)^{|c||r|} e_i (ca).  For x = E_ij(c)
    of parity P the condition rows, indexed by a module basis pair
    (r, s), a right factor a, and a value coordinate k, read

      [j == r] (-1)^{|c||j| + (|c|+|a|)|s|} G_is (ca)_k
        + [j == s] (-1)^{|c||j| + P(|r|+|a|) + |a|(|i|+|c|)} G_ri (ca)_k  =  0.
    """
    size = m + n
    dA = A.dim
    apar = A.basis.parities

    def pos_par(i):
        return 0 if i < m else 1

    def coord(i, j, t):
        return (i * size + j) * dA + t

    out = []
    for P in (0, 1):
        unknowns = []
        for i in range(size):
            for j in range(size):
                for t in range(dA):
                    if (pos_par(i) + pos_par(j) + apar[t]) & 1 == P:
                        unknowns.append((i, j, t))
        col_of = {u: c for c, u in enumerate(unknowns)}
        rows: dict = {}
        for (i, j, t) in unknowns:
            cu = col_of[(i, j, t)]
            for ta in range(dA):
                prod = A.table[t][ta]
                if not prod:
                    continue
                for s in range(size):
                    g = G[i][s]
                    if g:
                        e1 = ((apar[t] + apar[ta]) & 1) * pos_par(s) + apar[t] * pos_par(j)
                        s1 = -ONE if e1 & 1 else ONE
                        for k, x in prod.items():
                            key = (j, s, ta, k)
                            row = rows.setdefault(key, {})
                            y = row.get(cu, ZERO) + s1 * g * x
                            if y:
                                row[cu] = y
                            else:
                                row.pop(cu, None)
                for r in range(size):
                    g = G[r][i]
                    if g:
                        e = (P * ((pos_par(r) + apar[ta]) & 1)
                             + apar[ta] * ((pos_par(i) + apar[t]) & 1)
                             + apar[t] * pos_par(j))
                        s2 = -ONE if e & 1 else ONE
                        for k, x in prod.items():
                            key = (r, j, ta, k)
                            row = rows.setdefault(key, {})
                            y = row.get(cu, ZERO) + s2 * g * x
                            if y:
                                row[cu] = y
                            else:
                                row.pop(cu, None)
        row_list = [rows[key] for key in sorted(rows) if rows[key]]
        if trace_row and P == 0:
            tr: Vector = {}
            for c, (i, j, t) in enumerate(unknowns):
                if i == j:
                    tr[c] = ONE if pos_par(i) == 0 else -ONE
            if tr:
                row_list.append(tr)
        mat = SparseMatrix(row_list, len(unknowns))
        for vec in kernel_basis(mat):
            out.append({coord(*unknowns[c]): x for c, x in vec.items()})
    return out


def _sq_vectors(m: int) -> list:
    size = 2 * m

    def coord(i, j):
        return i * size + j

    rows = []
    for i in range(m):
        for j in range(m):
            rows.append({coord(i, j): ONE, coord(m + i, m + j): -ONE})
            rows.append({coord(i, m + j): ONE, coord(m + i, j): -ONE})
    rows.append({coord(i, m + i): ONE for i in range(m)})
    mat = SparseMatrix(rows, size * size)
    return kernel_basis(mat)


def build_family(kind: str, m: int, n: int, coeff: AssocSuperalgebra,
                 validate: bool = True) -> MatrixFamily:
    """Construct gl, sl, osp, p, or sq inside gl(m,n;coeff)."""
    if kind not in ("gl", "sl", "osp", "p", "sq"):
        raise ValueError(f"unknown family kind {kind!r}")
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    if kind == "osp" and n % 2:
        raise ValueError("osp needs an even number of odd indices")
    if kind in ("p", "sq"):
        if n != m:
            raise ValueError(f"{kind}(m) lives in gl(m,m); pass n == m")
        if coeff.dim != 1 or coeff.basis.parities != (0,):
            raise ValueError(f"{kind}(m) is defined over Q only")
    if kind == "osp" and not coeff.is_supercommutative():
        raise ValueError("osp needs a supercommutative coefficient algebra")

    gl_assoc = matrix_superalgebra(m, n, coeff, validate=validate)
    gl = lie_from_assoc(gl_assoc, validate=validate)
    if kind == "gl":
        fam_alg = gl
        embedding = GradedLinearMap.identity(gl.basis)
    else:
        if kind == "sl":
            vectors, labels = _sl_vectors(m, n, coeff)
        elif kind == "osp":
            vectors = _stabilizer_vectors(m, n, coeff, _gram_osp(m, n))
            labels = [f"osp{i}" for i in range(len(vectors))]
        elif kind == "p":
            vectors = _stabilizer_vectors(m, n, coeff, _gram_p(m), trace_row=True)
            labels = [f"p{i}" for i in range(len(vectors))]
        else:
            vectors = _sq_vectors(m)
            labels = [f"sq{i}" for i in range(len(vectors))]
        fam_alg, embedding = subalgebra_from_vectors(gl, vectors, labels, validate=validate)
    return MatrixFamily(kind, m, n, coeff, gl_assoc, gl, fam_alg, embedding)


def bracket_Eij(fam: MatrixFamily, i: int, j: int, a: Vector,
                p: int, q: int, b: Vector) -> Vector:
    """[E_ij(a), E_pq(b)] among matrix units, as a gl vector.

    [E_ij(a), E_pq(b)] = [j == p] (-1)^{|a|(|p|+|q|)} E_iq(ab)
      - (-1)^{|E_ij(a)||E_pq(b)|} [i == q] (-1)^{|b|(|i|+|j|)} E_pj(ba).

    Positions are 0-based; a and b must be homogeneous coefficient
    vectors.  Agrees with the supercommutator bracket of gl; the graded
    tensor product signs vanish for even entries, where this is the
    familiar matrix-unit bracket.
    """
    A = fam.coeff
    pa = vector_parity(a, A.basis) or 0
    pb = vector_parity(b, A.basis) or 0
    out: Vector = {}
    if j == p:
        s1 = -ONE if pa and ((fam.index_parity(p) + fam.index_parity(q)) & 1) else ONE
        vec_add_scaled(out, fam.E(i, q, A.product(a, b)), s1)
    if i == q:
        px = (fam.index_parity(i) + fam.index_parity(j) + pa) & 1
        py = (fam.index_parity(p) + fam.index_parity(q) + pb) & 1
        sign = -ONE if px and py else ONE
        s2 = -ONE if pb and ((fam.index_parity(i) + fam.index_parity(j)) & 1) else ONE
        vec_add_scaled(out, fam.E(p, j, A.product(b, a)), -sign * s2)
    return out


# ------------------------------------------------------------------ the cocycle

def tau_cocycle(m: int, n: int, A: AssocSuperalgebra,
                fam: Optional[MatrixFamily] = None,
                pairs: Optional[CyclicPairs] = None) -> Cocycle2:
    """Supertrace-weighted pairing cocycle on sl(m,n;A), A supercommutative.

    tau(x, y) = sum_{i, j} sigma_i (-1)^{|x_ij|(|i|+|j|)} <<x_ij, y_ji>>
    with sigma_i = +1 on the first m row indices and -1 on the rest;
    values in the pairing space of A (all of which is HC_1(A) since the
    commutator map vanishes).  The entry parity factor matches the
    graded tensor product sign of Mat and is +1 for even entries.
    """
    if not A.is_supercommutative():
        raise ValueError("the supertrace cocycle needs a supercommutative coefficient algebra")
    if fam is None:
        fam = build_family("sl", m, n, A)
    if fam.kind != "sl" or fam.m != m or fam.n != n or fam.coeff is not A:
        raise ValueError("family does not match the requested sl(m,n;A)")
    if pairs is None:
        pairs = cyclic_pairs(A)
    sl = fam.algebra
    d = sl.dim
    size = m + n
    dA = A.dim

    entries = []
    for col in fam.embedding.columns:
        by_pos: dict = {}
        for cgl, x in col.items():
            pos, t = divmod(cgl, dA)
            i, j = divmod(pos, size)
            by_pos.setdefault((i, j), {})[t] = x
        entries.append(by_pos)

    pair_class: dict = {}

    def pclass(t: int, s: int) -> Vector:
        got = pair_class.get((t, s))
        if got is None:
            got = pairs.pair({t: ONE}, {s: ONE})
            pair_class[(t, s)] = got
        return got

    apar = A.basis.parities
    values = []
    for bi in range(d):
        row = []
        exi = entries[bi]
        for bj in range(d):
            exj = entries[bj]
            acc: Vector = {}
            for (i, j), av in exi.items():
                bv = exj.get((j, i))
                if not bv:
                    continue
                sign = ONE if i < m else -ONE
                odd_pos = ((0 if i < m else 1) + (0 if j < m else 1)) & 1
                for t, x in av.items():
                    tsign = -sign if (apar[t] and odd_pos) else sign
                    for s, y in bv.items():
                        cls = pclass(t, s)
                        if cls:
                            vec_add_scaled(acc, cls, tsign * x * y)
            row.append(acc)
        values.append(row)
    return Cocycle2(sl, pairs.basis, values)


# ------------------------------------------------------------------ big checks

@dataclass
class HIsoReport:
    m: int
    n: int
    dim_sl: int
    dim_uce: int
    dim_extension: int
    dim_h2: int
    dim_hc1: int
    is_morphism: bool
    commutes_with_projections: bool
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.is_morphism and self.commutes_with_projections and self.bijective


def h_iso_check(m: int, n: int, A: AssocSuperalgebra,
                fam: Optional[MatrixFamily] = None,
                ext: Optional[UceAlgebra] = None) -> HIsoReport:
    """Compare the built extension of sl(m,n;A) with sl (+) HC_1(A).

    The comparison map sends the class of a (x) b to [a,b] (+) tau(a,b).
    Needs m + n >= 5 and supercommutative A.
    """
    if m + n < 5:
        raise ValueError("the comparison map is an isomorphism claim for m + n >= 5 only")
    if fam is None:
        fam = build_family("sl", m, n, A)
    sl = fam.algebra
    if ext is None:
        ext = build_uce(sl)
    pairs = cyclic_pairs(A)
    tau = tau_cocycle(m, n, A, fam=fam, pairs=pairs)
    central = extension_from_cocycle(sl, tau)
    K = central.total
    dsl = sl.dim

    free = ext.presentation.free_columns
    cols = []
    for col in free:
        a, b = divmod(col, dsl)
        kcol = dict(sl.table[a][b])
        for k, x in tau.values[a][b].items():
            kcol[dsl + k] = x
        cols.append(kcol)
    hmap = GradedLinearMap(ext.lie.basis, K.basis, cols)

    from .algebra import check_morphism

    is_morphism = check_morphism(hmap, ext.lie, K)
    commutes = central.projection.compose(hmap) == ext.u
    bijective = hmap.is_bijective()
    dim_h2 = ext.dim - ext.u.rank()
    return HIsoReport(
        m=m, n=n, dim_sl=dsl, dim_uce=ext.dim, dim_extension=K.dim,
        dim_h2=dim_h2, dim_hc1=pairs.dim,
        is_morphism=is_morphism, commutes_with_projections=commutes,
        bijective=bijective,
    )


@dataclass
class SteinbergReport:
    m: int
    n: int
    dim_uce: int
    generators: int
    independence_of_k: bool
    linearity: bool
    relations: bool
    generation: bool

    @property
    def ok(self) -> bool:
        return self.independence_of_k and self.linearity and self.relations and self.generation


def steinberg_check(m: int, n: int, A: AssocSuperalgebra,
                    fam: Optional[MatrixFamily] = None,
                    ext: Optional[UceAlgebra] = None,
                    seed: int = 0) -> SteinbergReport:
    """Steinberg presentation checks inside the built extension of sl(m,n;A)."""
    if m + n < 3:
        raise ValueError("the Steinberg comparison needs m + n >= 3")
    if fam is None:
        fam = build_family("sl", m, n, A)
    sl = fam.algebra
    if ext is None:
        ext = build_uce(sl)
    A_ = fam.coeff
    dA = A_.dim
    size = m + n
    sl_solver = Echelon(track=True)
    for idx, col in enumerate(fam.embedding.columns):
        sl_solver.insert(col, tag=idx)

    def sl_coords(glvec: Vector) -> Vector:
        residue, cert = sl_solver.reduce(glvec)
        assert not residue, "vector is not in sl"
        return {t: x for t, x in cert.items() if x}

    apar = A_.basis.parities

    def ehat_via(i: int, j: int, a: Vector, k: int) -> Vector:
        # [E_ik(a'), E_kj(1)] = E_ij(a) needs a' twisted by the graded
        # tensor product sign, a'_t = (-1)^{|t|(|k|+|j|)} a_t
        kj = (fam.index_parity(k) + fam.index_parity(j)) & 1
        a2 = {t: (-x if (apar[t] and kj) else x) for t, x in a.items()}
        x = sl_coords(fam.E(i, k, a2))
        y = sl_coords(fam.E(k, j, dict(A_.unit)))
        return ext.class_of(x, y)

    def middle(i: int, j: int) -> int:
        for k in range(size):
            if k != i and k != j:
                return k
        raise ValueError("no admissible middle index")

    independence = True
    ehat: dict = {}
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            for t in range(dA):
                a = {t: ONE}
                k0 = middle(i, j)
                base = ehat_via(i, j, a, k0)
                ehat[(i, j, t)] = base
                for k in range(size):
                    if k in (i, j) or k == k0:
                        continue
                    if ehat_via(i, j, a, k) != base:
                        independence = False
                # the canonical map returns the plain matrix unit
                expect = sl_coords(fam.E(i, j, a))
                if ext.u.apply(base) != expect:
                    independence = False

    def ehat_lin(i: int, j: int, a: Vector) -> Vector:
        out: Vector = {}
        for t, x in a.items():
            vec_add_scaled(out, ehat[(i, j, t)], x)
        return out

    rng = Random(seed)
    linearity = True
    offdiag = [(i, j) for i in range(size) for j in range(size) if i != j]
    for _ in range(10):
        i, j = offdiag[rng.randrange(len(offdiag))]
        a = {t: Fraction(rng.randint(-3, 3)) for t in range(dA)}
        a = {t: x for t, x in a.items() if x}
        if not a:
            continue
        k0 = middle(i, j)
        if ehat_via(i, j, a, k0) != ehat_lin(i, j, a):
            linearity = False

    relations = True
    uce_lie = ext.lie
    for (i, j, t) in ehat:
        for (p, q, s) in ehat:
            if j == p and i == q:
                continue  # not a presentation relation
            lhs = uce_lie.bracket(ehat[(i, j, t)], ehat[(p, q, s)])
            # the generator bracket, lifted coefficient-for-coefficient
            expected = bracket_Eij(fam, i, j, {t: ONE}, p, q, {s: ONE})
            rhs: Vector = {}
            if j == p:
                rhs = ehat_lin(i, q, fam.entry(expected, i, q))
            elif i == q:
                rhs = ehat_lin(p, j, fam.entry(expected, p, j))
            if lhs != rhs:
                relations = False

    gen = Echelon()
    frontier = []
    for v in ehat.values():
        if gen.insert(dict(v)) is not None:
            frontier.append(v)
    basis_now = list(ehat.values())
    while True:
        added = []
        for v in basis_now:
            for w in frontier:
                z = uce_lie.bracket(v, w)
                if z and gen.insert(dict(z)) is not None:
                    added.append(z)
        if not added:
            break
        basis_now.extend(frontier)
        frontier = added
    generation = gen.rank == ext.dim

    return SteinbergReport(
        m=m, n=n, dim_uce=ext.dim, generators=len(ehat),
        independence_of_k=independence, linearity=linearity,
        relations=relations, generation=generation,
    )


# ------------------------------------------------------------------ embeddings

def corner_embedding(src: MatrixFamily, dst: MatrixFamily) -> GradedLinearMap:
    """Corner inclusion sl(m,n;A) -> sl(m',n';A) (or gl into gl).

    Even positions map to the first even block, odd positions to the
    first odd block; entries are preserved.
    """
    if src.kind != dst.kind or src.kind not in ("sl", "gl"):
        raise ValueError("corner embeddings are provided for sl and gl families")
    if src.coeff is not dst.coeff:
        raise ValueError("coefficient algebras must be the same object")
    if src.m > dst.m or src.n > dst.n:
        raise ValueError("target must be at least as large in both blocks")
    dA = src.coeff.dim
    ssize, dsize = src.size, dst.size

    def posmap(i: int) -> int:
        return i if i < src.m else dst.m + (i - src.m)

    solver = Echelon(track=True)
    for idx, col in enumerate(dst.embedding.columns):
        solver.insert(col, tag=idx)
    cols = []
    for col in src.embedding.columns:
        big: Vector = {}
        for cgl, x in col.items():
            pos, t = divmod(cgl, dA)
            i, j = divmod(pos, ssize)
            big[(posmap(i) * dsize + posmap(j)) * dA + t] = x
        residue, cert = solver.reduce(big)
        if residue:
            raise ValueError("corner image does not land in the target family")
        cols.append({t: x for t, x in cert.items() if x})
    return GradedLinearMap(src.algebra.basis, dst.algebra.basis, cols)
