import random

import pytest
from hypothesis import given, strategies as st

from z2contract.exactpoly import BiDegree, Part
from z2contract.liealg import (
    ADJOINT,
    LieAlgebra,
    abelian,
    adjoint_derivation,
    build_classical,
    build_symmetric_pair,
    check_jacobi,
    coadjoint_derivation,
    contract,
    dim_stab_formula_check,
    heisenberg,
    index_estimate,
    is_invariant,
    parse_structure_constants,
    poisson_matrix,
    stabilizer_dim_at,
)
from z2contract.reports import Status


def test_gl1_is_abelian():
    L = build_classical("gl", 1)
    assert L.dim == 1 and not L.brackets


def test_gl2_elementary_commutator():
    L = build_classical("gl", 2)
    i, j = L.labels.index("E1_1"), L.labels.index("E1_2")
    assert L.bracket(i, j) == ((j, 1),)


def test_so3_structure():
    L = build_classical("so", 3)
    assert L.dim == 3 and check_jacobi(L)
    # every bracket of two distinct basis vectors is +-(the third one)
    for (i, j), comps in L.brackets.items():
        (k, c), = comps
        assert {i, j, k} == {0, 1, 2} and abs(c) == 1


def test_size_cap():
    with pytest.raises(ValueError):
        build_classical("gl", 11)
    assert build_classical("gl", 11, cap=11).dim == 121
    with pytest.raises(ValueError):
        build_classical("sp", 4)


def _constants(L):
    return {(i, j): dict(c) for (i, j), c in L.brackets.items() if i < j}


def test_corrupted_sign_breaks_jacobi():
    # in dimension 3 every sign pattern is a Lie algebra, so flip one sign of so(4)
    L = build_classical("so", 4)
    consts = _constants(L)
    key = min(consts)
    k = next(iter(consts[key]))
    consts[key][k] = -consts[key][k]
    assert not check_jacobi(LieAlgebra.from_constants(L.labels, consts))


def test_spurious_component_breaks_jacobi():
    L = build_classical("so", 3)
    consts = _constants(L)
    consts[(0, 1)][0] = 1
    assert not check_jacobi(LieAlgebra.from_constants(L.labels, consts))


def test_antisymmetry_enforced():
    with pytest.raises(ValueError):
        LieAlgebra.from_constants(("a", "b"), {(0, 1): {0: 1}, (1, 0): {0: 1}})


def test_abelian_jacobi():
    assert check_jacobi(abelian(4))


@pytest.mark.parametrize("family,N", [("gl", 3), ("so", 5), ("so", 4)])
def test_classical_jacobi(family, N):
    assert check_jacobi(build_classical(family, N))


def test_gl_pair_counts():
    P = build_symmetric_pair("GL", 1, 1)
    assert (P.dim, P.dim0, P.dim1, P.rank_k, P.rank_l) == (4, 2, 2, 1, 2)
    assert P.check_grading()


def test_so_pair_counts_and_slice():
    P = build_symmetric_pair("SO", 4, 1)
    assert (P.dim, P.dim0, P.dim1, P.rank_k, P.rank_l) == (10, 6, 4, 1, 2)
    sl = P.slice
    assert sl.c_names == ("d1",)
    assert len(sl.s_names) == 3  # entries of a 3x3 skew block
    assert sl.matrix.is_skew()


def test_unsupported_pair():
    with pytest.raises(ValueError):
        build_symmetric_pair("SP", 2, 1)
    with pytest.raises(ValueError):
        build_symmetric_pair("GL", 1, 2)


def test_contraction_kills_g1_brackets():
    P = build_symmetric_pair("GL", 1, 1)
    C = contract(P)
    L = C.algebra
    g1 = L.indices(Part.ONE)
    assert all(not L.bracket(i, j) for i in g1 for j in g1)
    i, j = L.labels.index("E1_1"), L.labels.index("E1_2")
    assert L.bracket(i, j) == P.algebra.bracket(i, j) != ()
    assert C.dim == P.dim


@pytest.mark.parametrize("fam,n,m", [("SO", 4, 1), ("GL", 2, 1), ("SO", 3, 2)])
def test_contraction_jacobi(fam, n, m):
    assert check_jacobi(contract(build_symmetric_pair(fam, n, m)).algebra)


def test_heisenberg_derivations():
    H = heisenberg()
    vs = H.varspace
    a, b, h = vs.vars()
    assert not coadjoint_derivation(H, 0, h)
    assert coadjoint_derivation(H, 0, b) in (h, -h)
    assert is_invariant(H, h)
    assert not is_invariant(H, a)


def test_abelian_derivations_vanish():
    L = abelian(3)
    p = L.varspace.vars()[0] ** 2 * L.varspace.vars()[1]
    assert all(not coadjoint_derivation(L, i, p) and not adjoint_derivation(L, i, p) for i in range(3))


def test_trace_is_adjoint_invariant():
    L = build_classical("gl", 2)
    vs = L.varspace
    tr = vs.var("E1_1") + vs.var("E2_2")
    assert is_invariant(L, tr, ADJOINT)


def test_quadratic_invariants_of_contracted_so5():
    P = build_symmetric_pair("SO", 4, 1)
    C = contract(P)
    f = (P.dual_matrix() * P.dual_matrix()).trace()
    assert is_invariant(C.algebra, f.top_component())
    g = (P.generic_matrix() * P.generic_matrix()).trace()
    assert is_invariant(C.algebra, g.bottom_component(), ADJOINT)
    assert not is_invariant(C.algebra, f)


def test_derivation_rejects_foreign_polynomial():
    H = heisenberg()
    with pytest.raises(ValueError):
        coadjoint_derivation(H, 0, abelian(3).varspace.var("t1"))


def test_poisson_matrix_heisenberg():
    H = heisenberg()
    h = H.varspace.var("h")
    P = poisson_matrix(H)
    z = H.varspace.zero()
    assert P.entries == [[z, h, z], [-h, z, z], [z, z, z]]
    assert not poisson_matrix(abelian(2)).entries[0][1]


def test_poisson_matrix_is_skew():
    assert poisson_matrix(contract(build_symmetric_pair("GL", 2, 1)).algebra).is_skew()


def test_index_examples():
    assert index_estimate(heisenberg()) == 1
    assert index_estimate(abelian(4)) == 4
    assert index_estimate(contract(build_symmetric_pair("SO", 4, 1)).algebra) == 2


def test_stabilizer_dims():
    H = heisenberg()
    assert stabilizer_dim_at(H, {"a": 3, "b": -1, "h": 2}) == 1
    assert stabilizer_dim_at(H, [5, 7, 0]) == 3
    C = contract(build_symmetric_pair("SO", 4, 1))
    pt = dict(zip(C.algebra.labels, (random.Random(3).randint(-99, 99) for _ in range(10))))
    assert stabilizer_dim_at(C.algebra, pt) == 2


@pytest.mark.parametrize("fam,n,m", [("GL", 1, 1), ("SO", 4, 1)])
def test_dimstab_random_point(fam, n, m):
    r = dim_stab_formula_check(contract(build_symmetric_pair(fam, n, m)), seed=5)
    assert r.status is Status.PASS and r.computed["g0_regular"]


def test_dimstab_at_origin():
    C = contract(build_symmetric_pair("SO", 4, 1))
    rng = random.Random(1)
    parts = C.algebra.parts
    point = {l: (rng.randint(-50, 50) if p is Part.ZERO else 0) for l, p in zip(C.algebra.labels, parts)}
    r = dim_stab_formula_check(C, point=point)
    assert r.status is Status.PASS
    # g1 stabilises xi = 0, and g0 = so(4) + so(1) has index 2
    assert r.computed["lhs"] == C.pair.dim1 + 2


def test_structure_constant_roundtrip():
    P = build_symmetric_pair("GL", 2, 1)
    L = contract(P).algebra
    back = parse_structure_constants(L.labels, L.structure_constant_lines())
    assert dict(back.brackets) == dict(L.brackets)


def test_dual_substitution_gl_is_transpose():
    P = build_symmetric_pair("GL", 1, 1)
    sub = P.dual_substitution
    assert sub["E1_2"] == P.varspace.var("E2_1")


def test_slice_sides_agree_on_invariants():
    P = build_symmetric_pair("SO", 3, 2)
    f = (P.generic_matrix() ** 2).trace()
    on_g = f.subs(P.slice_assignment("g"), P.slice.varspace)
    on_dual = P.to_dual(f).subs(P.slice_assignment("dual"), P.slice.varspace)
    assert on_g == on_dual


# -- bi-degree shift laws ------------------------------------------------------

PAIR = build_symmetric_pair("GL", 2, 1)
CON = contract(PAIR).algebra
VS = CON.varspace
G0 = CON.indices(Part.ZERO)
G1 = CON.indices(Part.ONE)


@st.composite
def bihomogeneous(draw):
    a, b = draw(st.integers(0, 2)), draw(st.integers(0, 2))
    z0 = [VS.vars()[i] for i in G0]
    z1 = [VS.vars()[i] for i in G1]
    p = VS.zero()
    for _ in range(draw(st.integers(1, 4))):
        t = VS.const(draw(st.integers(-3, 3)))
        for _ in range(a):
            t = t * draw(st.sampled_from(z0))
        for _ in range(b):
            t = t * draw(st.sampled_from(z1))
        p = p + t
    return p, BiDegree(a, b)


@given(bihomogeneous(), st.sampled_from(G1))
def test_coadjoint_g1_shifts_bidegree(pb, i):
    p, (a, b) = pb
    q = coadjoint_derivation(CON, i, p)
    assert not q or q.bidegrees() == {BiDegree(a - 1, b + 1)}


@given(bihomogeneous(), st.sampled_from(G1))
def test_adjoint_g1_shifts_bidegree(pb, i):
    p, (a, b) = pb
    q = adjoint_derivation(CON, i, p)
    assert not q or q.bidegrees() == {BiDegree(a + 1, b - 1)}


@given(bihomogeneous(), st.sampled_from(G0))
def test_g0_preserves_bidegree(pb, i):
    p, bd = pb
    for der in (coadjoint_derivation, adjoint_derivation):
        q = der(CON, i, p)
        assert not q or q.bidegrees() == {bd}
