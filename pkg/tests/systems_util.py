"""Shared builders for the test suite: small algebras, direct sums,
block maps between sums of named parts, and seeded random directed
systems of bounded dimension."""

from fractions import Fraction

from superuce import (
    DirectedPoset,
    DirectedSystem,
    GradedBasis,
    GradedLinearMap,
    LieSuperalgebra,
    build_family,
    coefficient_algebra,
)

ONE = Fraction(1)
TWO = Fraction(2)


def sl2():
    """Basis e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    basis = GradedBasis(["e", "h", "f"], [0, 0, 0])
    E, H, F = 0, 1, 2
    table = [[{} for _ in range(3)] for _ in range(3)]
    table[H][E] = {E: TWO}
    table[E][H] = {E: -TWO}
    table[H][F] = {F: -TWO}
    table[F][H] = {F: TWO}
    table[E][F] = {H: ONE}
    table[F][E] = {H: -ONE}
    return LieSuperalgebra(basis, table)


def heisenberg():
    """[x, y] = z, z central; nilpotent, not perfect."""
    basis = GradedBasis(["x", "y", "z"], [0, 0, 0])
    table = [[{} for _ in range(3)] for _ in range(3)]
    table[0][1] = {2: ONE}
    table[1][0] = {2: -ONE}
    return LieSuperalgebra(basis, table)


def abelian(k, parity=0):
    basis = GradedBasis([f"a{i}" for i in range(k)], [parity] * k)
    return LieSuperalgebra(basis, [[{} for _ in range(k)] for _ in range(k)])


def odd_line():
    """One odd generator with [x, x] = 0."""
    return abelian(1, parity=1)


def osp12():
    return build_family("osp", 1, 2, coefficient_algebra("Q")).algebra


def gl2_assoc():
    """2x2 matrix units as an associative algebra, all even."""
    from superuce import AssocSuperalgebra

    basis = GradedBasis(["E11", "E12", "E21", "E22"], [0, 0, 0, 0])
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    table = [[{} for _ in range(4)] for _ in range(4)]
    for (i, j), a in idx.items():
        for (p, q), b in idx.items():
            if j == p:
                table[a][b] = {idx[(i, q)]: ONE}
    return AssocSuperalgebra(basis, table, {0: ONE, 3: ONE})


PARTS = {
    "sl2": sl2,
    "heis": heisenberg,
    "ab2": lambda: abelian(2),
    "odd": odd_line,
    "osp12": osp12,
}

PART_DIMS = {"sl2": 3, "heis": 3, "ab2": 2, "odd": 1, "osp12": 5}


def direct_sum(*parts):
    """Direct sum with componentwise bracket; labels suffixed by slot."""
    labels, parities = [], []
    offsets = []
    off = 0
    for k, P in enumerate(parts):
        offsets.append(off)
        for lbl, par in zip(P.basis.labels, P.basis.parities):
            labels.append(f"{lbl}.{k}")
            parities.append(par)
        off += P.dim
    d = off
    table = [[{} for _ in range(d)] for _ in range(d)]
    for k, P in enumerate(parts):
        o = offsets[k]
        for i in range(P.dim):
            for j in range(P.dim):
                cell = P.table[i][j]
                if cell:
                    table[o + i][o + j] = {o + c: x for c, x in cell.items()}
    return LieSuperalgebra(GradedBasis(labels, parities), table), offsets


def member(names):
    """Algebra for a tuple of part names, with its slot offsets."""
    return direct_sum(*[PARTS[n]() for n in names])


def block_map(src_names, dst_names, assignment):
    """Map sending slot k of the source identically onto slot
    assignment[k] of the destination (None means zero).

    A valid morphism requires matching part names and an assignment
    injective on its non-None entries; both are asserted.
    """
    src, src_off = member(src_names)
    dst, dst_off = member(dst_names)
    used = [a for a in assignment if a is not None]
    assert len(used) == len(set(used)), "assignment must be injective"
    cols = [dict() for _ in range(src.dim)]
    for k, a in enumerate(assignment):
        if a is None:
            continue
        assert src_names[k] == dst_names[a], "parts must match"
        for i in range(PART_DIMS[src_names[k]]):
            cols[src_off[k] + i] = {dst_off[a] + i: ONE}
    return src, dst, GradedLinearMap(src.basis, dst.basis, cols)


def random_member(rng, max_dim=12):
    names = []
    total = 0
    for _ in range(rng.randint(1, 4)):
        n = rng.choice(sorted(PARTS))
        if total + PART_DIMS[n] > max_dim:
            break
        names.append(n)
        total += PART_DIMS[n]
    if not names:
        names = ["sl2"]
    return tuple(names)


def random_chain_system(rng, length=None, max_dim=12):
    """Seeded chain of block inclusions; members mix perfect and
    non-perfect parts.  Built backward so every map is a valid
    block map into the next member."""
    length = length or rng.randint(2, 3)
    members = [random_member(rng, max_dim)]
    for _ in range(length - 1):
        prev = members[0]
        keep = [k for k in range(len(prev)) if rng.random() < 0.8]
        if not keep:
            keep = [0]
        members.insert(0, tuple(prev[k] for k in keep))
    algebras, maps = [], []
    for idx, names in enumerate(members):
        alg, _ = member(names)
        algebras.append(alg)
    for idx in range(len(members) - 1):
        src_names, dst_names = members[idx], members[idx + 1]
        assignment = _match_slots(rng, src_names, dst_names)
        _, _, f = block_map(src_names, dst_names, assignment)
        maps.append(GradedLinearMap(algebras[idx].basis, algebras[idx + 1].basis, f.columns))
    from superuce import chain_system

    return chain_system(algebras, maps), members


def _match_slots(rng, src_names, dst_names):
    """Assign each source slot a distinct destination slot with the same
    part name (greedy over a shuffled destination order), or None."""
    order = list(range(len(dst_names)))
    rng.shuffle(order)
    taken = set()
    assignment = []
    for name in src_names:
        pick = None
        for a in order:
            if a not in taken and dst_names[a] == name:
                pick = a
                break
        if pick is None:
            assignment.append(None)
        else:
            taken.add(pick)
            assignment.append(pick)
    return assignment


def vee_system(rng, max_dim=12):
    """Poset 0 <= 2 >= 1 with block maps into the top member."""
    top = random_member(rng, max_dim)
    legs = []
    for _ in range(2):
        keep = [k for k in range(len(top)) if rng.random() < 0.7]
        if not keep:
            keep = [0]
        legs.append(tuple(top[k] for k in keep))
    algebras = {}
    morphisms = {}
    top_alg, _ = member(top)
    algebras[2] = top_alg
    for e, names in enumerate(legs):
        alg, _ = member(names)
        algebras[e] = alg
        assignment = _match_slots(rng, names, top)
        _, _, f = block_map(names, top, assignment)
        morphisms[(e, 2)] = GradedLinearMap(alg.basis, top_alg.basis, f.columns)
    poset = DirectedPoset([0, 1, 2], [(0, 2), (1, 2)])
    return DirectedSystem(poset, algebras, morphisms)


def random_system_morphism(rng, surjective=False, max_dim=12):
    """A commuting morphism between two random chain systems.

    The big chain is a nested family of slot subsets of one top member;
    the small chain keeps only the slots inside a fixed subset C.  All
    maps act slot-by-slot, so each square commutes: both composites
    keep exactly the slots of C.  Returns (source system, target
    system, components); components are all injective when the small
    chain is the source, all surjective the other way around."""
    from superuce import chain_system

    length = rng.randint(2, 3)
    top = random_member(rng, max_dim)
    subsets = [list(range(len(top)))]
    for _ in range(length - 1):
        prev = subsets[0]
        keep = [k for k in prev if rng.random() < 0.8] or [prev[0]]
        subsets.insert(0, keep)
    C = {k for k in range(len(top)) if rng.random() < 0.7}
    C.add(subsets[0][0])

    big_names = [tuple(top[k] for k in sub) for sub in subsets]
    small_slots = [[k for k in sub if k in C] for sub in subsets]
    small_names = [tuple(top[k] for k in kept) for kept in small_slots]
    big_algs = [member(names)[0] for names in big_names]
    small_algs = [member(names)[0] for names in small_names]

    def rewrap(f, src, dst):
        return GradedLinearMap(src.basis, dst.basis, f.columns)

    big_maps, small_maps, comps = [], [], {}
    for i in range(length - 1):
        assignment = [subsets[i + 1].index(k) for k in subsets[i]]
        _, _, f = block_map(big_names[i], big_names[i + 1], assignment)
        big_maps.append(rewrap(f, big_algs[i], big_algs[i + 1]))
        assignment = [small_slots[i + 1].index(k) for k in small_slots[i]]
        _, _, f = block_map(small_names[i], small_names[i + 1], assignment)
        small_maps.append(rewrap(f, small_algs[i], small_algs[i + 1]))
    for i in range(length):
        if surjective:
            assignment = [small_slots[i].index(k) if k in C else None
                          for k in subsets[i]]
            _, _, f = block_map(big_names[i], small_names[i], assignment)
            comps[i] = rewrap(f, big_algs[i], small_algs[i])
        else:
            assignment = [subsets[i].index(k) for k in small_slots[i]]
            _, _, f = block_map(small_names[i], big_names[i], assignment)
            comps[i] = rewrap(f, small_algs[i], big_algs[i])
    big = chain_system(big_algs, big_maps)
    small = chain_system(small_algs, small_maps)
    if surjective:
        return big, small, comps
    return small, big, comps
