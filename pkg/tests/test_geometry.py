import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ripsbetti.errors import AmbiguousDistance, DimensionMismatch
from ripsbetti.geometry import (PointCloud, ThresholdPolicy, apply_plane_rotation, cube_index,
                                embed_plane_in_r5, proximity_graph)


def cloud(*pts):
    return PointCloud.from_points(pts)


def test_collinear_points_form_triangle():
    g = proximity_graph(cloud((0.0,), (0.5,), (1.0,)))
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 2)]


def test_unit_square_is_four_cycle():
    g = proximity_graph(cloud((0, 0), (1, 0), (0, 1), (1, 1)))
    assert g.sorted_edges() == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_distance_inside_band_is_ambiguous():
    with pytest.raises(AmbiguousDistance):
        proximity_graph(cloud((0.0,), (1 + 1e-7,)))


def test_tolerance_accepts_rounding_noise():
    g = proximity_graph(cloud((0.0,), (1 + 1e-12,)))
    assert g.has_edge(0, 1)


def test_threshold_scales():
    g = proximity_graph(cloud((0.0,), (1.5,)), ThresholdPolicy(threshold=2.0))
    assert g.has_edge(0, 1)


def test_points_are_read_only():
    c = cloud((0, 0), (1, 1))
    with pytest.raises(ValueError):
        c.points[0, 0] = 5


def test_mixed_dimensions_rejected():
    with pytest.raises(DimensionMismatch):
        cloud((0, 0), (1, 1, 1))


@pytest.mark.parametrize("pts, eps, expected", [
    ([(0.1, 0.1), (0.4, 0.2)], 0.5, [(0, 0), (0, 0)]),
    ([(0.5, 0.0)], 0.5, [(1, 0)]),
    ([(0.1,), (0.6,)], 0.5, [(0,), (1,)]),
])
def test_cube_index(pts, eps, expected):
    assert [c.coords for c in cube_index(PointCloud.from_points(pts), eps)] == expected


def test_same_cube_within_unit_distance():
    rng = np.random.default_rng(7)
    for trial in range(1000):
        d = int(rng.integers(1, 5))
        pts = rng.uniform(-2, 2, size=(int(rng.integers(2, 12)), d))
        eps = d ** -0.5
        idx = [c.coords for c in cube_index(PointCloud.from_points(pts), eps)]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if idx[i] == idx[j]:
                    assert np.linalg.norm(pts[i] - pts[j]) <= 1 + 1e-12


def test_rotation_quarter_turn():
    out = apply_plane_rotation(cloud((1.0, 0.0)), math.pi / 2)
    np.testing.assert_allclose(out.points[0], (0.0, 1.0), atol=1e-12)


def test_rotation_by_zero_is_identity():
    c = cloud((0.3, -0.2), (1.5, 2.0))
    np.testing.assert_array_equal(apply_plane_rotation(c, 0.0).points, c.points)


def test_rotation_needs_plane():
    with pytest.raises(DimensionMismatch):
        apply_plane_rotation(cloud((1.0,)), 1.0)


def test_embedding_of_origin():
    out = embed_plane_in_r5(cloud((0.0, 0.0)))
    np.testing.assert_allclose(out.points[0], (math.sqrt(2) / 4, 0, math.sqrt(2) / 4, 0, math.sqrt(3) / 6),
                               atol=1e-15)


def test_embedding_is_isometric():
    out = embed_plane_in_r5(cloud((0.0, 0.0), (3.0, 4.0)))
    assert abs(np.linalg.norm(out.points[0] - out.points[1]) - 5) < 1e-12


def test_embedding_of_empty_cloud():
    out = embed_plane_in_r5(PointCloud.from_points([], dim=2))
    assert out.dim == 5 and len(out) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=2, max_size=8),
       st.floats(0, 2 * math.pi))
def test_rotation_preserves_distances(pts, angle):
    c = cloud(*pts)
    r = apply_plane_rotation(c, angle)
    np.testing.assert_allclose(r.squared_distances(), c.squared_distances(), atol=1e-9)
