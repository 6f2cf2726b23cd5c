"""Flag complexes with a dimension cap, Rips and quasi-Rips builders, links, joins."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, FaceNotPresent, InputError, PolicyViolation, UnknownVertex
from .geometry import PointCloud, ThresholdPolicy, proximity_graph
from .graphs import Graph

DEFAULT_BUDGET = 50_000_000

Face = tuple[int, ...]


def face_budget() -> int:
    env = os.environ.get("RIPS_BUDGET")
    if env:
        try:
            return int(float(env))
        except ValueError:
            raise InputError(f"RIPS_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Explicit face lists ``faces[p]`` for ``p <= dim_cap``, canonically sorted.

    Accepts arbitrary (non-flag) face sets; the homology code only looks at
    ``faces``. ``vertex_map[i]`` is the parent index of local vertex ``i`` for
    complexes derived from another one.
    """

    n_vertices: int
    dim_cap: int
    faces: tuple[tuple[Face, ...], ...]
    vertex_map: tuple[int, ...] | None = field(default=None)

    @classmethod
    def from_faces(cls, n_vertices: int, faces: Iterable[Sequence[int]], dim_cap: int | None = None,
                   vertex_map=None) -> "SimplicialComplex":
        """Downward closure of ``faces`` (plus all vertices), truncated at ``dim_cap``."""
        tops = [tuple(sorted(set(int(v) for v in f))) for f in faces]
        for f in tops:
            for v in f:
                if not 0 <= v < n_vertices:
                    raise UnknownVertex(f"face {f} uses vertex {v} outside 0..{n_vertices - 1}")
        if dim_cap is None:
            dim_cap = max([len(f) - 1 for f in tops] + [0])
        by_dim = [set() for _ in range(dim_cap + 1)]
        by_dim[0].update((v,) for v in range(n_vertices))
        for f in tops:
            for k in range(2, min(len(f), dim_cap + 1) + 1):
                by_dim[k - 1].update(combinations(f, k))
        return cls(n_vertices, dim_cap, tuple(tuple(sorted(s)) for s in by_dim), vertex_map)

    @cached_property
    def _index(self) -> tuple[dict, ...]:
        return tuple({f: i for i, f in enumerate(fs)} for fs in self.faces)

    def face_index(self, p: int) -> dict:
        return self._index[p]

    def n_faces(self, p: int) -> int:
        if p < 0:
            return 1
        return len(self.faces[p]) if p <= self.dim_cap else 0

    @property
    def f_vector(self) -> list[int]:
        return [len(fs) for fs in self.faces]

    def __contains__(self, face) -> bool:
        f = tuple(sorted(face))
        if not f:
            return True
        p = len(f) - 1
        return p <= self.dim_cap and f in self._index[p]

    def face_sets(self) -> list[set]:
        return [set(fs) for fs in self.faces]

    def maximal_faces(self) -> list[Face]:
        out = []
        for p, fs in enumerate(self.faces):
            higher = self._index[p + 1] if p + 1 <= self.dim_cap else {}
            covered = set()
            for g in higher:
                for i in range(len(g)):
                    covered.add(g[:i] + g[i + 1:])
            out.extend(f for f in fs if f not in covered)
        return sorted(out, key=lambda f: (len(f), f))

    def induced(self, vertices: Iterable[int]) -> "SimplicialComplex":
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n_vertices:
                raise UnknownVertex(f"vertex {v} not in complex of {self.n_vertices} vertices")
        index = {v: i for i, v in enumerate(keep)}
        faces = tuple(
            tuple(tuple(index[v] for v in f) for f in fs if all(v in index for v in f)) for fs in self.faces
        )
        return SimplicialComplex(len(keep), self.dim_cap, faces, tuple(keep))

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.n_vertices, self.dim_cap, self.faces) == (other.n_vertices, other.dim_cap, other.faces)

    def __hash__(self):
        return hash((self.n_vertices, self.dim_cap, self.faces))

    def __repr__(self):
        return f"{type(self).__name__}(n_vertices={self.n_vertices}, dim_cap={self.dim_cap}, f={self.f_vector})"


@dataclass(frozen=True, eq=False, repr=False)
class FlagComplex(SimplicialComplex):
    graph: Graph | None = None


def _enumerate_cliques(graph: Graph, max_size: int, budget: int) -> list[list[Face]]:
    masks = graph.neighbor_masks
    out: list[list[Face]] = [[] for _ in range(max_size)]
    count = 0

    def extend(clique: Face, cand: int):
        nonlocal count
        level = out[len(clique)]
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            face = clique + (w,)
            level.append(face)
            count += 1
            if count > budget:
                raise BudgetExceeded(f"face enumeration exceeded budget of {budget} faces")
            if len(face) < max_size:
                extend(face, cand & masks[w])

    for v in range(graph.n_vertices):
        out[0].append((v,))
        count += 1
        if count > budget:
            raise BudgetExceeded(f"face enumeration exceeded budget of {budget} faces")
        if max_size > 1:
            extend((v,), masks[v] >> (v + 1) << (v + 1))
    return out


def flag_skeleton(graph: Graph, dim_cap: int, budget: int | None = None, vertex_map=None) -> FlagComplex:
    """All cliques of ``graph`` with at most ``dim_cap + 1`` vertices."""
    if dim_cap < 0:
        raise InputError("dim_cap must be non-negative")
    budget = face_budget() if budget is None else budget
    levels = _enumerate_cliques(graph, dim_cap + 1, budget)
    faces = tuple(tuple(sorted(level)) for level in levels)
    return FlagComplex(graph.n_vertices, dim_cap, faces, vertex_map, graph)


def build_rips(cloud: PointCloud, policy: ThresholdPolicy | None = None, dim_cap: int = 2,
               budget: int | None = None) -> FlagComplex:
    return flag_skeleton(proximity_graph(cloud, policy), dim_cap, budget)


def common_neighbors(complex_: FlagComplex, face: Sequence[int]) -> list[int]:
    face = tuple(sorted(face))
    if face not in complex_:
        raise FaceNotPresent(f"face {face} is not in the complex")
    masks = complex_.graph.neighbor_masks
    common = (1 << complex_.n_vertices) - 1
    for v in face:
        common &= masks[v]
    return [v for v in range(complex_.n_vertices) if common >> v & 1]


def link_of(complex_: FlagComplex, face: Sequence[int], budget: int | None = None) -> FlagComplex:
    nbrs = common_neighbors(complex_, face)
    sub, vmap = complex_.graph.induced(nbrs)
    return flag_skeleton(sub, max(complex_.dim_cap - len(face), 0), budget, vmap)


def induced_subcomplex(complex_: SimplicialComplex, vertices: Iterable[int],
                       budget: int | None = None) -> SimplicialComplex:
    if isinstance(complex_, FlagComplex) and complex_.graph is not None:
        sub, vmap = complex_.graph.induced(vertices)
        return flag_skeleton(sub, complex_.dim_cap, budget, vmap)
    return complex_.induced(vertices)


def star_of(complex_: FlagComplex, face: Sequence[int], budget: int | None = None) -> FlagComplex:
    nbrs = common_neighbors(complex_, face)
    return induced_subcomplex(complex_, set(nbrs) | set(face), budget)


def join_graph(a: Graph, b: Graph) -> Graph:
    shift = a.n_vertices
    edges = list(a.edges)
    edges += [(u + shift, v + shift) for u, v in b.edges]
    edges += [(u, v + shift) for u in range(a.n_vertices) for v in range(b.n_vertices)]
    return Graph.from_edges(a.n_vertices + b.n_vertices, edges)


def join(a: FlagComplex, b: FlagComplex, dim_cap: int, budget: int | None = None) -> FlagComplex:
    """Simplicial join; the vertices of ``b`` are shifted by ``a.n_vertices``."""
    return flag_skeleton(join_graph(a.graph, b.graph), dim_cap, budget)


# --- quasi-Rips -------------------------------------------------------------

@dataclass(frozen=True)
class OptionalEdgePolicy:
    """How pairs with ``alpha < dist <= 1`` are resolved.

    ``kind`` is one of ``include_all``, ``exclude_all``, ``explicit`` or
    ``seeded_random``.
    """

    kind: str = "include_all"
    edges: frozenset = frozenset()
    probability: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.kind not in {"include_all", "exclude_all", "explicit", "seeded_random"}:
            raise InputError(f"unknown optional-edge policy {self.kind!r}")

    @classmethod
    def explicit(cls, edges: Iterable[tuple[int, int]]) -> "OptionalEdgePolicy":
        return cls("explicit", frozenset((min(u, v), max(u, v)) for u, v in edges))

    @classmethod
    def seeded_random(cls, probability: float, seed: int) -> "OptionalEdgePolicy":
        return cls("seeded_random", probability=probability, seed=seed)


@dataclass(frozen=True)
class QuasiRipsSpec:
    alpha: float
    cloud: PointCloud
    optional_edge_policy: OptionalEdgePolicy = OptionalEdgePolicy()
    policy: ThresholdPolicy = ThresholdPolicy()

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise InputError(f"alpha must lie in (0, 1), got {self.alpha}")

    def edge_classes(self) -> tuple[set, set]:
        """Mandatory and optional pairs (everything else is forbidden)."""
        sq = self.cloud.squared_distances()
        within_one = self.policy.scaled(1.0).classify(sq)
        within_alpha = self.policy.scaled(self.alpha).classify(sq)
        n = len(self.cloud)
        mandatory, optional = set(), set()
        for i in range(n):
            for j in range(i + 1, n):
                if within_alpha[i, j]:
                    mandatory.add((i, j))
                elif within_one[i, j]:
                    optional.add((i, j))
        return mandatory, optional


def build_quasi_rips(spec: QuasiRipsSpec, dim_cap: int, budget: int | None = None) -> FlagComplex:
    mandatory, optional = spec.edge_classes()
    pol = spec.optional_edge_policy
    if pol.kind == "include_all":
        chosen = optional
    elif pol.kind == "exclude_all":
        chosen = set()
    elif pol.kind == "explicit":
        bad = sorted(e for e in pol.edges if e not in optional)
        if bad:
            u, v = bad[0]
            kind = "mandatory" if (u, v) in mandatory else "forbidden"
            raise PolicyViolation(f"explicit optional edge {bad[0]} is {kind}")
        chosen = set(pol.edges)
    else:
        rng = np.random.default_rng(pol.seed)
        ordered = sorted(optional)
        draws = rng.random(len(ordered))
        chosen = {e for e, x in zip(ordered, draws) if x < pol.probability}
    graph = Graph.from_edges(len(spec.cloud), mandatory | chosen)
    return flag_skeleton(graph, dim_cap, budget)


# --- JSON interchange -------------------------------------------------------

def complex_to_json(complex_: SimplicialComplex) -> dict:
    return {
        "version": 1,
        "n_vertices": complex_.n_vertices,
        "dim_cap": complex_.dim_cap,
        "flag": isinstance(complex_, FlagComplex),
        "faces": [list(f) for f in complex_.maximal_faces()],
    }


def complex_from_json(data: dict) -> SimplicialComplex:
    try:
        n = int(data["n_vertices"])
        cap = int(data["dim_cap"])
        faces = [tuple(f) for f in data["faces"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad complex JSON: {exc}") from None
    closure = SimplicialComplex.from_faces(n, faces, cap)
    if not data.get("flag", False):
        return closure
    graph = Graph.from_edges(n, closure.faces[1] if cap >= 1 else [])
    flag = flag_skeleton(graph, cap)
    if flag.faces != closure.faces:
        raise InputError("complex is marked as flag but is not the clique complex of its edges")
    return flag
