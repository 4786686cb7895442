from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, random_complexes, square_two_blocks
from maqc.errors import ValidationError
from maqc.simplicial import (
    boundary_sign,
    color_support,
    complex_from_facets,
    is_nondegenerate,
    join_meet,
    kappa,
    kappa_simplex,
    mask_of,
    popcount,
    restricted_faces,
    restricted_subcomplex,
)


def names_to_mask(cc, names):
    return mask_of(cc.names.index(n) for n in names)


def test_downward_closure_of_two_edges():
    cc = complex_from_facets(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    got = {tuple(cc.vertex_names(s)) for s in cc.faces}
    assert got == {(), ("a",), ("b",), ("c",), ("a", "b"), ("b", "c")}


def test_full_triangle_has_eight_faces():
    assert len(complex_from_facets(["a", "b", "c"], [["a", "b", "c"]]).faces) == 8


def test_ghost_vertex_spans_nothing_but_keeps_its_block():
    cc = complex_from_facets(["a", "b"], [["a"]])
    assert {tuple(cc.vertex_names(s)) for s in cc.faces} == {(), ("a",)}
    assert cc.k == 2


def test_vertices_are_reindexed_block_major():
    cc = complex_from_facets(["x", "y", "z", "w"], [["x", "y"]], [["y", "w"], ["z", "x"]])
    assert cc.names == ("y", "w", "x", "z")
    assert cc.block_of == (0, 0, 1, 1)


@pytest.mark.parametrize(
    "facets, partition, fragment",
    [
        ([["a", "v9"]], None, "v9"),
        ([["a", "a"]], None, "repeats"),
        ([["a"]], [["a"], ["a", "b"]], "appears in blocks"),
        ([["a"]], [["a"]], "not covered"),
        ([["a"]], [["a", "b"], []], "empty"),
    ],
)
def test_construction_errors(facets, partition, fragment):
    with pytest.raises(ValidationError, match=fragment):
        complex_from_facets(["a", "b"], facets, partition)


def test_color_support_examples():
    cc = square_two_blocks()
    assert color_support(0, cc) == 0
    assert color_support(names_to_mask(cc, ["v1", "v2"]), cc) == 0b11
    assert color_support(names_to_mask(cc, ["v1"]), cc) == 0b01
    with pytest.raises(ValidationError):
        color_support(names_to_mask(cc, ["v1", "v3"]), cc)


def test_restricted_subcomplex_examples():
    cc = square_two_blocks()
    assert restricted_faces(cc, 0) == {0}
    sub = restricted_subcomplex(cc, 0b01)
    assert {tuple(sub.vertex_names(s)) for s in sub.faces} == {(), ("v1",), ("v3",)}
    pent = cycle(5)
    sub = restricted_subcomplex(pent, 0b00101)
    assert {tuple(sub.vertex_names(s)) for s in sub.faces} == {(), ("v1",), ("v3",)}


def test_nondegeneracy_examples():
    assert is_nondegenerate(square_two_blocks())
    assert not is_nondegenerate(cycle(4, [["v1", "v2"], ["v3", "v4"]]))
    for cc in random_complexes(3, 20):
        trivial = complex_from_facets(cc.names, [cc.vertex_names(f) for f in cc.facets()])
        assert is_nondegenerate(trivial)


def test_boundary_sign_examples():
    assert boundary_sign(0b010, 0b011) == 1
    assert boundary_sign(0b001, 0b011) == -1
    assert boundary_sign(0b101, 0b111) == -1
    assert boundary_sign(0, 0b100) == 1
    with pytest.raises(ValidationError):
        boundary_sign(0b001, 0b111)


def test_kappa_examples():
    assert kappa(2, 0b10101) == -1
    assert kappa(0, 0b1011) == 1
    assert kappa(2, 0b101, dims=(2, 3, 4)) == 1
    with pytest.raises(ValidationError):
        kappa(1, 0b101)


def test_join_meet_examples():
    cc = cycle(4)
    v1, v2, v3 = (names_to_mask(cc, [n]) for n in ("v1", "v2", "v3"))
    assert join_meet(v1, v2, cc) == (0, v1 | v2)
    assert join_meet(v1, v3, cc) == (0, None)
    assert join_meet(v1, v1, cc) == (v1, v1)


@pytest.mark.parametrize("n", range(1, 6))
def test_two_step_signs_cancel_on_full_simplex(n):
    full = (1 << n) - 1
    for omega in range(1, full + 1):
        if popcount(omega) < 2:
            continue
        for sigma in range(omega + 1):
            if sigma & ~omega or popcount(sigma) != popcount(omega) - 2:
                continue
            mids = [sigma | (1 << v) for v in range(n) if (omega & ~sigma) >> v & 1]
            assert sum(boundary_sign(sigma, t) * boundary_sign(t, omega) for t in mids) == 0


def full_subcomplex_oracle(vertices, facets, chosen):
    """Faces of the full subcomplex on ``chosen``, by brute force over vertex subsets."""
    faces = set()
    for f in facets:
        for r in range(len(f) + 1):
            for sub in combinations(f, r):
                if set(sub) <= chosen:
                    faces.add(frozenset(sub))
    return faces


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_complex_invariants(seed):
    cc = random_complexes(seed, 1)[0]
    for s in cc.faces:
        assert popcount(cc.support(s)) <= popcount(s)
        for v in range(cc.m):
            if s >> v & 1:
                assert s & ~(1 << v) in cc.faces
    assert restricted_faces(cc, cc.all_blocks) == cc.faces
    for L in range(1 << cc.k):
        for Lp in range(1 << cc.k):
            if L & ~Lp == 0:
                assert restricted_faces(cc, L) <= restricted_faces(cc, Lp)
    for s in cc.faces:
        for v, omega in cc.cofaces(s):
            L = cc.support(omega) | cc.all_blocks
            assert kappa_simplex(cc, omega, L) == kappa_simplex(cc, s, L) * kappa(cc.block_of[v], L)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_trivial_partition_gives_full_subcomplexes(seed):
    base = random_complexes(seed, 1)[0]
    facets = [base.vertex_names(f) for f in base.facets()]
    cc = complex_from_facets(base.names, facets)
    for L in range(1 << cc.k):
        chosen = {cc.names[i] for i in range(cc.m) if L >> cc.block_of[i] & 1}
        want = full_subcomplex_oracle(cc.names, facets, chosen)
        got = {frozenset(cc.vertex_names(s)) for s in restricted_faces(cc, L)}
        assert got == want
