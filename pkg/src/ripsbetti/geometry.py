"""Point clouds, threshold classification, the epsilon-cube grid, and isometries."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AmbiguousDistance, DimensionMismatch, InputError
from .graphs import Graph


@dataclass(frozen=True)
class PointCloud:
    dim: int
    points: np.ndarray = field(repr=False)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise InputError(f"dim must be positive, got {self.dim}")
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, self.dim)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise DimensionMismatch(f"expected points of dimension {self.dim}, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InputError("point coordinates must be finite")
        if self.labels is not None and len(self.labels) != len(pts):
            raise InputError("labels must match the number of points")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]], labels=None, dim: int | None = None) -> "PointCloud":
        try:
            pts = np.asarray(points, dtype=float)
        except ValueError:
            raise DimensionMismatch("points have differing dimensions") from None
        if dim is None:
            if pts.ndim != 2 or pts.shape[0] == 0:
                raise InputError("cannot infer dimension; pass dim explicitly")
            dim = pts.shape[1]
        return cls(dim, pts, None if labels is None else tuple(labels))

    def __len__(self) -> int:
        return len(self.points)

    def subcloud(self, indices: Sequence[int]) -> "PointCloud":
        idx = list(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return PointCloud(self.dim, self.points[idx].reshape(len(idx), self.dim), labels)

    def union(self, other: "PointCloud") -> "PointCloud":
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot join clouds of dimension {self.dim} and {other.dim}")
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = self.labels + other.labels
        return PointCloud(self.dim, np.vstack([self.points, other.points]), labels)

    def squared_distances(self) -> np.ndarray:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.einsum("ijk,ijk->ij", diff, diff)


@dataclass(frozen=True)
class ThresholdPolicy:
    threshold: float = 1.0
    relative_tolerance: float = 1e-9
    ambiguity_band: float = 1e-6

    def __post_init__(self):
        if not self.threshold > 0:
            raise InputError("threshold must be positive")
        if self.relative_tolerance < 0 or self.ambiguity_band < 0:
            raise InputError("tolerances must be non-negative")
        if not self.relative_tolerance < self.ambiguity_band:
            raise InputError("relative_tolerance must be smaller than ambiguity_band")

    def scaled(self, threshold: float) -> "ThresholdPolicy":
        return ThresholdPolicy(threshold, self.relative_tolerance, self.ambiguity_band)

    def classify(self, sq: np.ndarray) -> np.ndarray:
        """Boolean mask of accepted squared distances; raises on band hits."""
        t2 = self.threshold**2
        accept = sq <= t2 * (1 + self.relative_tolerance)
        band = (sq > t2 * (1 - self.ambiguity_band)) & (sq < t2 * (1 + self.ambiguity_band)) & ~accept
        if np.any(band):
            i, j = map(int, np.argwhere(band)[0])
            raise AmbiguousDistance(
                f"pair ({i}, {j}) at distance {math.sqrt(sq[i, j])!r} is within the ambiguity band of {self.threshold}"
            )
        return accept


def proximity_graph(cloud: PointCloud, policy: ThresholdPolicy | None = None) -> Graph:
    policy = policy or ThresholdPolicy()
    n = len(cloud)
    if n == 0:
        raise InputError("point cloud is empty")
    sq = cloud.squared_distances()
    accept = policy.classify(sq)
    iu, ju = np.nonzero(np.triu(accept, k=1))
    return Graph.from_edges(n, zip(iu.tolist(), ju.tolist()))


@dataclass(frozen=True)
class CubeIndex:
    coords: tuple[int, ...]
    epsilon: float


def cube_index(cloud: PointCloud, epsilon: float) -> list[CubeIndex]:
    if not epsilon > 0:
        raise InputError("epsilon must be positive")
    grid = np.floor(cloud.points / epsilon).astype(np.int64)
    return [CubeIndex(tuple(int(c) for c in row), float(epsilon)) for row in grid]


def apply_plane_rotation(cloud: PointCloud, angle: float) -> PointCloud:
    if cloud.dim != 2:
        raise DimensionMismatch(f"plane rotation needs a cloud in R^2, got R^{cloud.dim}")
    if angle == 0:
        return cloud
    c, s = math.cos(angle), math.sin(angle)
    rot = np.array([[c, -s], [s, c]])
    return PointCloud(2, cloud.points @ rot.T, cloud.labels)


SQRT2_4 = math.sqrt(2) / 4
SQRT3_6 = math.sqrt(3) / 6


def embed_plane_in_r5(cloud: PointCloud) -> PointCloud:
    """Isometric copy of a planar cloud in R^5: (x, y) -> (s, x, s, y, t)."""
    if cloud.dim != 2:
        raise DimensionMismatch(f"embedding needs a cloud in R^2, got R^{cloud.dim}")
    n = len(cloud)
    out = np.empty((n, 5))
    out[:, 0] = SQRT2_4
    out[:, 1] = cloud.points[:, 0]
    out[:, 2] = SQRT2_4
    out[:, 3] = cloud.points[:, 1]
    out[:, 4] = SQRT3_6
    return PointCloud(5, out, cloud.labels)


def pair_dot_products(cloud: PointCloud, direction: Sequence[float]) -> dict[tuple[int, int], float]:
    """|w . (q - p)/|q - p|| for every pair, with w normalized."""
    w = np.asarray(direction, dtype=float)
    w = w / np.linalg.norm(w)
    out = {}
    pts = cloud.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[j] - pts[i]
            norm = np.linalg.norm(d)
            if norm > 0:
                out[(i, j)] = float(abs(w @ d) / norm)
    return out
