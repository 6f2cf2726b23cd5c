import json

import numpy as np
import pytest

from ripsbetti import io as rio
from ripsbetti.complexes import build_rips, complex_from_json, complex_to_json, flag_skeleton
from ripsbetti.errors import InputError
from ripsbetti.geometry import PointCloud
from ripsbetti.graphs import Graph


def test_csv_with_and_without_header():
    a = rio.parse_cloud_csv("x,y\n0,0\n1,0.5\n")
    b = rio.parse_cloud_csv("0,0\n1,0.5\n")
    np.testing.assert_array_equal(a.points, b.points)
    assert a.dim == 2


def test_csv_rejects_ragged_rows():
    with pytest.raises(InputError):
        rio.parse_cloud_csv("0,0\n1,2,3\n")


def test_cloud_roundtrip(tmp_path):
    c = PointCloud.from_points([(0.1, 0.2), (1 / 3, 2.5)])
    for name in ("c.csv", "c.json"):
        rio.write_cloud(c, tmp_path / name)
        np.testing.assert_array_equal(rio.read_cloud(tmp_path / name).points, c.points)


def test_missing_file_is_input_error(tmp_path):
    with pytest.raises(InputError):
        rio.read_cloud(tmp_path / "absent.csv")


def test_complex_json_lists_maximal_faces():
    cx = flag_skeleton(Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), 2)
    data = complex_to_json(cx)
    assert sorted(data["faces"]) == [[0, 1, 2], [2, 3]]
    back = complex_from_json(json.loads(rio.dumps(data)))
    assert back.f_vector == cx.f_vector


def test_complex_json_flag_check():
    data = {"version": 1, "n_vertices": 3, "dim_cap": 2, "flag": True, "faces": [[0, 1], [1, 2], [0, 2]]}
    with pytest.raises(InputError):
        complex_from_json(data)


def test_dumps_is_canonical():
    assert rio.dumps({"b": 1, "a": [1, 2]}) == rio.dumps({"a": [1, 2], "b": 1})


def test_rips_json_roundtrip():
    c = PointCloud.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    cx = build_rips(c, dim_cap=2)
    assert complex_from_json(complex_to_json(cx)).f_vector == [4, 4, 0]
