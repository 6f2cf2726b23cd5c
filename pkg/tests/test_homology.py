from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ripsbetti.complexes import SimplicialComplex, build_rips, flag_skeleton
from ripsbetti.constructions import s1_gadget
from ripsbetti.errors import DimensionOutOfRange, InputError, NotASubcomplex
from ripsbetti.graphs import Graph
from ripsbetti.homology import (FieldSpec, betti_numbers, boundary_matrix, euler_poincare_check,
                                induced_image_dim)


def complete(n, cap=2):
    return flag_skeleton(Graph.from_edges(n, combinations(range(n), 2)), cap)


def cycle(n, cap=2):
    return flag_skeleton(Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)]), cap)


def test_boundary_of_edge():
    cx = flag_skeleton(Graph.from_edges(2, [(0, 1)]), 1)
    for p in (2, 3, 5):
        assert boundary_matrix(cx, 1, p).to_dense().tolist() == [[p - 1], [1]]


def test_augmentation_row():
    cx = flag_skeleton(Graph.from_edges(3, []), 1)
    m = boundary_matrix(cx, 0)
    assert (m.n_rows, m.n_cols) == (1, 3) and m.to_dense().tolist() == [[1, 1, 1]]


def test_boundary_of_triangle_alternates():
    col = [row[0] for row in boundary_matrix(complete(3), 2, 5).to_dense()]
    assert col == [1, 4, 1]


def test_boundary_out_of_range():
    with pytest.raises(DimensionOutOfRange):
        boundary_matrix(complete(3), 3)


@pytest.mark.parametrize("field", [2, 3, 7])
def test_named_betti(field):
    assert betti_numbers(cycle(4), 1, field).betti == (0, 1)
    assert betti_numbers(complete(4, 3), 2, field).betti == (0, 0, 0)
    boundary = SimplicialComplex.from_faces(4, combinations(range(4), 3), dim_cap=3)
    assert betti_numbers(boundary, 2, field).betti == (0, 0, 1)
    two = flag_skeleton(Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]), 3)
    assert betti_numbers(two, 2, field).betti == (1, 0, 0)


def test_flag_k4_capped_at_two_is_sphere():
    assert betti_numbers(complete(4, 2), 2, allow_top=True).betti == (0, 0, 1)


def test_s1_gadget_with_five_pairs():
    cx = build_rips(s1_gadget(5, 3e-3), dim_cap=2)
    assert betti_numbers(cx, 1).betti[1] == 4


def test_pmax_needs_next_dimension():
    with pytest.raises(DimensionOutOfRange):
        betti_numbers(cycle(4, 2), 2)


def test_field_must_be_prime():
    with pytest.raises(InputError):
        FieldSpec(4)


def test_large_prime_field():
    assert betti_numbers(cycle(5), 1, 2_147_483_647).betti == (0, 1)


@pytest.mark.parametrize("cx, chi", [(complete(3), 0), (cycle(4), -1)])
def test_euler_poincare(cx, chi):
    ok, report = euler_poincare_check(cx)
    assert ok and report["chi_from_faces"] == chi


def test_euler_poincare_sphere():
    ok, report = euler_poincare_check(complete(4, 2))
    assert ok and report["chi_from_faces"] == 1 and not report["fully_enumerated"]


def test_image_dims():
    c4 = cycle(4, 1)
    cone = flag_skeleton(Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 3)] + [(i, 4) for i in range(4)]), 2)
    assert induced_image_dim(c4, cone, 1) == 0
    assert induced_image_dim(c4, cycle(4, 2), 1) == 1


def test_image_of_one_hole():
    two = flag_skeleton(Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]), 2)
    hole = induced_image_dim(cycle(4, 1), two, 1, vertex_map=[0, 1, 2, 3])
    assert hole == 1
    assert induced_image_dim(two, two, 1) == 2


def test_image_respects_orientation():
    c4 = cycle(4, 1)
    assert induced_image_dim(c4, cycle(4, 2), 1, 3, vertex_map=[3, 2, 1, 0]) == 1


def test_image_needs_subcomplex():
    with pytest.raises(NotASubcomplex):
        induced_image_dim(complete(3, 1), cycle(4, 2), 1)


graphs = st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20)))


@settings(max_examples=80, deadline=None)
@given(graphs, st.sampled_from([2, 3, 5]))
def test_matches_dense_oracle(data, p):
    n, pairs = data
    edges = {(min(a, b), max(a, b)) for a, b in pairs if a != b}
    cx = flag_skeleton(Graph.from_edges(n, edges), 3)
    ours = betti_numbers(cx, 3, p, allow_top=True).betti
    faces = oracles.clique_faces(n, edges, 3)
    assert list(ours) == oracles.reduced_betti(faces, 3, p)
    assert euler_poincare_check(cx, field_=p)[0]
