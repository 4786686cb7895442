from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, random_complexes, square_two_blocks, two_points
from maqc.dga import (
    build_R,
    check_leibniz,
    cohomology_ring,
    combinatorial_cup,
    f_transport,
    multiply_R,
    simplicial_cohomology_basis,
    tor_bidegree,
    tor_dimensions,
    transport_psi,
    truncated_koszul,
)
from maqc.errors import ValidationError
from maqc.graded import CellLabel
from maqc.hochster import hochster, hochster_torus
from maqc.homology import Ring
from maqc.simplicial import complex_from_facets, is_nondegenerate, restricted_faces

ONE = CellLabel(0, 0)


def vmask(cc, *names):
    return sum(1 << cc.names.index(n) for n in names)


def trivial(cc):
    return complex_from_facets(cc.names, [cc.vertex_names(f) for f in cc.facets()])


def test_two_points_one_block():
    cc = two_points([["v1", "v2"]])
    rc = build_R(cc, Ring.Z2)
    assert set(rc.labels) == {ONE, CellLabel(0, 1), CellLabel(1, 0), CellLabel(2, 0)}
    assert rc.d({CellLabel(0, 1): 1}) == {CellLabel(1, 0): 1, CellLabel(2, 0): 1}
    assert rc.cohomology().ranks() == (1, 0, 1)


def test_mdeg_example():
    cc = square_two_blocks()
    rc = build_R(cc, Ring.Z2)
    v2 = vmask(cc, "v2")
    assert rc.mdeg(CellLabel(v2, 0b01)) == (-1, 0b11)


def test_t_differential_hits_block_vertices():
    cc = square_two_blocks()
    rc = build_R(cc, Ring.Z2)
    for i in range(cc.k):
        assert rc.d({CellLabel(0, 1 << i): 1}) == {CellLabel(1 << v, 0): 1 for v in range(cc.m) if cc.block_of[v] == i}


def test_products():
    cc = square_two_blocks()
    v1, v2, v3 = (vmask(cc, n) for n in ("v1", "v2", "v3"))
    assert multiply_R(CellLabel(0, 1), CellLabel(0, 1), cc) is None
    assert multiply_R(CellLabel(v1, 0), CellLabel(v3, 0), cc) is None
    assert multiply_R(CellLabel(v1, 0), CellLabel(v2, 0), cc) == CellLabel(v1 | v2, 0)
    block_of_v1 = 1 << cc.block_of[cc.names.index("v1")]
    assert multiply_R(CellLabel(0, block_of_v1), CellLabel(v1, 0), cc) is None
    with pytest.raises(ValidationError):
        multiply_R(CellLabel(v1 | v3, 0), ONE, cc)


def test_ring_of_two_points():
    pres = cohomology_ring(build_R(two_points([["v1", "v2"]]), Ring.Z2))
    assert sorted(c.dim for c in pres.classes) == [0, 2]
    top = next(n for n, c in enumerate(pres.classes) if c.dim == 2)
    assert pres.mul(1 << top, 1 << top) == 0


def test_ring_of_square():
    pres = cohomology_ring(build_R(square_two_blocks(), Ring.Z2))
    assert pres.check_axioms() == []
    assert pres.dims_by_degree() == {0: 1, 2: 2, 4: 1}
    a, b = (n for n, c in enumerate(pres.classes) if c.dim == 2)
    top = next(n for n, c in enumerate(pres.classes) if c.dim == 4)
    assert pres.mul(1 << a, 1 << b) == 1 << top
    assert pres.mul(1 << a, 1 << a) == 0
    assert pres.classes[pres.unit].rep == (ONE,)


def test_ring_needs_z2():
    with pytest.raises(ValidationError):
        cohomology_ring(build_R(square_two_blocks(), Ring.Q))


def test_tor_examples():
    single = complex_from_facets(["v"], [["v"]])
    assert tor_dimensions(single).total_ranks() == (1,)
    table = tor_dimensions(square_two_blocks())
    assert table.total_ranks() == (1, 0, 2, 0, 1)
    for (q, L), g in table.entries.items():
        assert tor_bidegree(q, L, table.dims) == 0
    with pytest.raises(ValidationError):
        tor_dimensions(cycle(4, [["v1", "v2"], ["v3", "v4"]]))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_tor_matches_classical_bigraded_betti(seed):
    cc = trivial(random_complexes(seed, 1, max_vertices=5)[0])
    tor = tor_dimensions(cc)
    assert tor.entries == hochster_torus(cc, Ring.Z2).entries
    for (q, L), g in tor.entries.items():
        # classical grading: Tor_{-i, 2|W|} with H̃^{|W|-i-1}(K_W)
        i = -tor_bidegree(q, L, tor.dims)
        assert q == 2 * bin(L).count("1") - i


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_dga_is_a_graded_complex(seed):
    cc = random_complexes(seed, 1)[0]
    for ring in Ring:
        for dims in ((0,) * cc.k, (1,) * cc.k, tuple((seed + i) % 3 for i in range(cc.k))):
            rc = build_R(cc, ring, dims)
            assert rc.square_defect() == []
            rc.check_grading()
            assert rc.cohomology().groups == hochster(cc, "spheres", ring, dims).totals()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_leibniz_and_transport(seed):
    cc = random_complexes(seed, 1, max_vertices=5)[0]
    assert check_leibniz(build_R(cc, Ring.Z2)) == []
    for model in ("real", "torus"):
        psi = transport_psi(cc, model)
        assert psi.is_bijection() and psi.commutes()
    assert transport_psi(cc, "torus").product_defects() == []


def test_psi_examples():
    cc = two_points([["v1", "v2"]])
    psi = transport_psi(cc, "torus")
    assert psi({ONE: 1}) == {ONE: 1}
    t1 = CellLabel(0, 1)
    assert psi(psi.source.d({t1: 1})) == psi.target.d(psi({t1: 1})) == {CellLabel(1, 0): 1, CellLabel(2, 0): 1}
    with pytest.raises(ValidationError):
        transport_psi(cc, "torus", Ring.Q)


def test_psi_product_on_square():
    from maqc.cellular import cup_cellular

    cc = square_two_blocks()
    psi = transport_psi(cc, "torus")
    v1, v2 = vmask(cc, "v1"), vmask(cc, "v2")
    prod = multiply_R(CellLabel(v1, 0), CellLabel(v2, 0), cc)
    assert psi({prod: 1}) == cup_cellular(psi.target, {CellLabel(v1, 0): 1}, {CellLabel(v2, 0): 1})


def test_combinatorial_cup_on_square():
    cc = square_two_blocks()
    v1, v2 = vmask(cc, "v1"), vmask(cc, "v2")
    L1, L2 = 1 << cc.block_of[cc.names.index("v1")], 1 << cc.block_of[cc.names.index("v2")]
    assert combinatorial_cup(cc, frozenset({v1}), L1, frozenset({v1}), L1) == (frozenset(), L1)
    prod, L = combinatorial_cup(cc, frozenset({v1}), L1, frozenset({v2}), L2)
    assert prod == frozenset({v1 | v2}) and L == 0b11
    pres = cohomology_ring(build_R(cc, Ring.Z2))
    assert pres.classify(f_transport(cc, prod, L)) != 0
    unit = frozenset({0})
    assert combinatorial_cup(cc, unit, 0, frozenset({v1}), L1) == (frozenset({v1}), L1)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_combinatorial_cup_matches_transport(seed):
    cc = random_complexes(seed, 1, max_vertices=5)[0]
    pres = cohomology_ring(build_R(cc, Ring.Z2))
    basis = [(L, z) for L in range(1 << cc.k) for z in simplicial_cohomology_basis(cc, L)]
    assert sum(1 for _ in basis) == len(pres.classes)
    for L, a in basis:
        for Lp, b in basis:
            prod, LL = combinatorial_cup(cc, a, L, b, Lp)
            lhs = pres.classify(f_transport(cc, prod, LL))
            rhs = pres.mul(pres.classify(f_transport(cc, a, L)), pres.classify(f_transport(cc, b, Lp)))
            assert lhs == rhs


def test_simplicial_basis_is_reduced():
    cc = square_two_blocks()
    L1 = 1 << cc.block_of[cc.names.index("v1")]
    basis = simplicial_cohomology_basis(cc, L1)
    assert len(basis) == 1
    (z,) = basis
    assert len(z) == 1 and z <= restricted_faces(cc, L1)


def test_literal_signs_fail_over_z_inside_a_block():
    # an edge inside one block: the literal sign rule does not square to zero over Z
    cc = complex_from_facets(["v", "a", "u"], [["v", "a", "u"]], [["v"], ["a", "u"]])
    for dims in ((0, 0), (1, 1)):
        assert build_R(cc, Ring.Z, dims, sign_rule="koszul").square_defect() != []
        assert build_R(cc, Ring.Z, dims, sign_rule="cellular").square_defect() == []
    assert build_R(cc, Ring.Z2, sign_rule="koszul").boundary == build_R(cc, Ring.Z2, sign_rule="cellular").boundary


def test_koszul_examples():
    cc = square_two_blocks()
    kz = truncated_koszul(cc, 3)
    zero = (0,) * cc.m
    for i in range(cc.k):
        want = {(0, tuple(int(v == j) for v in range(cc.m))): 1 for j in range(cc.m) if cc.block_of[j] == i}
        assert kz.d({(1 << i, zero): 1}) == want
    assert kz.face_ring_part_vanishes()
    edge = complex_from_facets(["v1", "v2"], [["v1", "v2"]], [["v1", "v2"]])
    assert truncated_koszul(edge, 2).d_alpha((1, 0)) == {(1, 1): 1}
    with pytest.raises(ValidationError):
        truncated_koszul(cc, 0)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_koszul_truncation_on_nondegenerate_partitions(seed):
    base = random_complexes(seed, 1, max_vertices=5)[0]
    cc = base if is_nondegenerate(base) else trivial(base)
    for N in range(1, 5):
        kz = truncated_koszul(cc, N)
        assert kz.face_ring_part_vanishes()
        assert kz.square_defects() == []
        assert kz.rho_defects() == []
        assert kz.rho_surjective()


def test_koszul_truncation_inside_a_block_is_not_a_complex():
    # one edge in one block: d(d(v1)) = v1v2² + v1²v2 and ρ(d(t₁⊗v₁)) = v̄₁₂ while d̄ρ(t₁⊗v₁) = 0
    cc = complex_from_facets(["v1", "v2"], [["v1", "v2"]], [["v1", "v2"]])
    kz = truncated_koszul(cc, 4)
    assert (0, (1, 0)) in kz.square_defects()
    assert (1, (1, 0)) in kz.rho_defects()
