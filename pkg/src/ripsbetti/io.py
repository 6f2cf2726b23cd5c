"""Readers and writers for point clouds, complexes, and matching families."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import InputError
from .geometry import PointCloud

FORMAT_VERSION = 1


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_cloud_csv(text: str) -> PointCloud:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    if not rows:
        raise InputError("CSV contains no points")
    dim = len(rows[0])
    pts = []
    for lineno, row in enumerate(rows, 1):
        if len(row) != dim:
            raise InputError(f"row {lineno} has {len(row)} columns, expected {dim}")
        try:
            pts.append([float(c) for c in row])
        except ValueError as exc:
            raise InputError(f"row {lineno}: {exc}") from None
    return PointCloud(dim, np.array(pts))


def parse_cloud_json(text: str) -> PointCloud:
    try:
        data = json.loads(text)
        dim = int(data["dim"])
        points = data["points"]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad point-cloud JSON: {exc}") from None
    for i, p in enumerate(points):
        if len(p) != dim:
            raise InputError(f"point {i} has {len(p)} coordinates, expected {dim}")
    return PointCloud(dim, np.array(points, dtype=float).reshape(len(points), dim), data.get("labels"))


def read_cloud(path: str | Path) -> PointCloud:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_cloud_json(text)
    return parse_cloud_csv(text)


def cloud_to_csv(cloud: PointCloud) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i}" for i in range(cloud.dim)])
    for p in cloud.points:
        w.writerow([repr(float(c)) for c in p])
    return buf.getvalue()


def cloud_to_json(cloud: PointCloud) -> dict:
    out = {"dim": cloud.dim, "points": cloud.points.tolist()}
    if cloud.labels is not None:
        out["labels"] = list(cloud.labels)
    return out


def write_cloud(cloud: PointCloud, path: str | Path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(cloud_to_json(cloud)) + "\n")
    else:
        path.write_text(cloud_to_csv(cloud))


def dumps(obj) -> str:
    """Canonical JSON used for all CLI output."""
    return json.dumps(obj, sort_keys=True)
