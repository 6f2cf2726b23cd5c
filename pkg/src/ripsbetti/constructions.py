"""Point configurations and combinatorial gadgets with high Betti numbers.

Every geometric generator checks its own output: the proximity graph of the
emitted cloud must equal the intended combinatorial edge set, and every pair
must sit clearly away from the distance threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .complexes import FlagComplex, OptionalEdgePolicy, QuasiRipsSpec, SimplicialComplex, flag_skeleton
from .errors import (AmbiguousDistance, CapExceeded, EdgeSetMismatch, InputError, MarginViolation,
                     NotAP3Free, NotTwoClique)
from .geometry import PointCloud, ThresholdPolicy, apply_plane_rotation, embed_plane_in_r5, proximity_graph
from .graphs import Graph

SQRT2_2 = math.sqrt(2) / 2
SQRT3 = math.sqrt(3)


@dataclass(frozen=True)
class ConstructionParams:
    """Knobs shared by the geometric generators.

    ``delta`` (angular step) and ``epsilon_c`` (stacking offset) default to
    values derived per generator from the margin conditions; ``None`` means
    "derive".
    """

    k: int = 1
    n: int = 0
    delta: float | None = None
    epsilon_c: float | None = None
    policy: ThresholdPolicy = ThresholdPolicy()

    @property
    def min_offset(self) -> float:
        # stacking offset whose square clears the ambiguity band ninefold
        return 3.0 * math.sqrt(self.policy.ambiguity_band)


# --- bipartite lemma gadgets ------------------------------------------------

@dataclass(frozen=True)
class TwoCliqueGadget:
    graph: Graph
    U: tuple[int, ...]
    V: tuple[int, ...]
    residual: Graph
    residual_vertices: tuple[int, ...]

    @property
    def components(self) -> list[list[int]]:
        """Residual components in parent vertex labels."""
        return [[self.residual_vertices[v] for v in comp] for comp in self.residual.components()]

    @property
    def q(self) -> int:
        return len(self.components)

    @property
    def expected_beta1(self) -> int:
        return max(0, self.q - 1)

    def quadrilaterals(self) -> list[tuple[int, int, int, int]]:
        """Cycles (u_1, u_i, v_i, v_1) from one representative cross edge per component."""
        uset = set(self.U)
        reps = []
        for comp in self.components:
            cs = set(comp)
            edge = min((u, v) for u, v in self.graph.sorted_edges() if u in cs and v in cs
                       and ((u in uset) != (v in uset)))
            u, v = edge if edge[0] in uset else edge[::-1]
            reps.append((u, v))
        if len(reps) < 2:
            return []
        u1, v1 = reps[0]
        return [(u1, ui, vi, v1) for ui, vi in reps[1:]]


def residual_graph(graph: Graph, U: Iterable[int], V: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Cross edges only, isolated vertices dropped; returns graph and parent labels."""
    U, V = sorted(set(U)), sorted(set(V))
    if set(U) & set(V) or len(U) + len(V) != graph.n_vertices:
        raise InputError("U and V must partition the vertex set")
    for part in (U, V):
        for a, b in combinations(part, 2):
            if not graph.has_edge(a, b):
                raise NotTwoClique(f"intra-part pair ({a}, {b}) is not an edge")
    uset = set(U)
    cross = [(u, v) for u, v in graph.edges if (u in uset) != (v in uset)]
    touched = sorted({x for e in cross for x in e})
    index = {v: i for i, v in enumerate(touched)}
    return Graph.from_edges(len(touched), [(index[u], index[v]) for u, v in cross]), tuple(touched)


def two_clique_gadget(u_size: int, v_size: int, cross_edges: Iterable[tuple[int, int]]) -> TwoCliqueGadget:
    """Complete graphs on U = 0..u_size-1 and V = u_size.., plus cross edges given as (i, j) part-local indices."""
    U = tuple(range(u_size))
    V = tuple(range(u_size, u_size + v_size))
    edges = list(combinations(U, 2)) + list(combinations(V, 2))
    for i, j in cross_edges:
        if not (0 <= i < u_size and 0 <= j < v_size):
            raise InputError(f"cross edge ({i}, {j}) outside the parts")
        edges.append((i, u_size + j))
    graph = Graph.from_edges(u_size + v_size, edges)
    residual, labels = residual_graph(graph, U, V)
    return TwoCliqueGadget(graph, U, V, residual, labels)


# --- margin validation -------------------------------------------------------

def check_margins(cloud: PointCloud, policy: ThresholdPolicy, factor: float = 4.0) -> float:
    """Every squared distance is either (numerically) exactly the threshold or
    at least ``factor`` ambiguity bands away from it. Returns the smallest
    relative gap among the non-exact pairs."""
    t2 = policy.threshold**2
    rel = np.abs(cloud.squared_distances() / t2 - 1.0)
    exact = rel <= policy.relative_tolerance
    np.fill_diagonal(exact, True)
    need = factor * policy.ambiguity_band
    bad = ~exact & (rel < need)
    if np.any(bad):
        i, j = map(int, np.argwhere(bad)[0])
        raise MarginViolation(f"pair ({i}, {j}) has relative squared-distance gap {rel[i, j]:.3g} < {need:.3g}")
    gaps = rel[~exact]
    return float(gaps.min()) if gaps.size else math.inf


def _compare_edges(actual: Graph, expected: set, labels=None) -> None:
    extra = sorted(actual.edges - expected)
    missing = sorted(expected - actual.edges)
    if extra or missing:
        def name(e):
            return tuple(labels[v] for v in e) if labels else e
        raise EdgeSetMismatch(
            f"{len(extra)} unexpected and {len(missing)} missing edges; "
            f"e.g. extra={[name(e) for e in extra[:3]]} missing={[name(e) for e in missing[:3]]}"
        )


def _safe_graph(cloud: PointCloud, policy: ThresholdPolicy) -> Graph:
    try:
        return proximity_graph(cloud, policy)
    except AmbiguousDistance as exc:
        raise MarginViolation(str(exc)) from None


# --- odd spheres in the plane -----------------------------------------------

def s1_gadget(r: int, epsilon_c: float) -> PointCloud:
    """Two stacked columns (+-1/2, i*eps), i = 1..r: two r-cliques joined by a perfect matching."""
    pts = [(0.5, i * epsilon_c) for i in range(1, r + 1)] + [(-0.5, i * epsilon_c) for i in range(1, r + 1)]
    labels = [f"s+{i}" for i in range(1, r + 1)] + [f"s-{i}" for i in range(1, r + 1)]
    return PointCloud(2, np.array(pts), tuple(labels))


def s2km1_parameters(n: int, k: int, params: ConstructionParams | None = None) -> tuple[int, float, float]:
    params = params or ConstructionParams(k=k, n=n)
    r = n // (2 * k)
    eps = params.epsilon_c if params.epsilon_c is not None else params.min_offset
    delta = params.delta if params.delta is not None else 16 * r * eps
    return r, eps, delta


def construct_s2km1(n: int, k: int, params: ConstructionParams | None = None) -> PointCloud:
    """k rotated copies of the S^1 gadget with r = floor(n / 2k) point pairs each.

    Copy c is rotated by c * delta. Within a copy the proximity graph is two
    r-cliques plus the matching s_i^+ s_i^-; across copies every pair is an edge.
    """
    params = params or ConstructionParams(k=k, n=n)
    if k < 1:
        raise InputError("k must be positive")
    r, eps, delta = s2km1_parameters(n, k, params)
    if r < 2:
        raise MarginViolation(f"r = floor(n/(2k)) = {r} must be at least 2")
    if not r * eps < delta / 8 and k > 1:
        raise MarginViolation(f"need r*epsilon_c < delta/8, got {r * eps:.3g} >= {delta / 8:.3g}")
    if not eps**2 > params.policy.ambiguity_band:
        raise MarginViolation(f"epsilon_c^2 = {eps**2:.3g} does not clear the ambiguity band")
    base = s1_gadget(r, eps)
    copies = []
    for c in range(k):
        rotated = apply_plane_rotation(base, c * delta)
        copies.append(PointCloud(2, rotated.points, tuple(f"{lab}@{c}" for lab in base.labels)))
    cloud = copies[0]
    for extra in copies[1:]:
        cloud = cloud.union(extra)
    check_margins(cloud, params.policy)
    expected = set()
    m = 2 * r
    for c in range(k):
        off = c * m
        plus = [off + i for i in range(r)]
        minus = [off + r + i for i in range(r)]
        expected.update(combinations(plus, 2))
        expected.update(combinations(minus, 2))
        expected.update((plus[i], minus[i]) for i in range(r))
        for c2 in range(c + 1, k):
            expected.update((a, b) for a in range(off, off + m) for b in range(c2 * m, (c2 + 1) * m))
    _compare_edges(_safe_graph(cloud, params.policy), expected, cloud.labels)
    return cloud


# --- the R^5 construction with many 2-cycles --------------------------------

def s2_parameters(k: int, params: ConstructionParams | None = None) -> tuple[float, float]:
    """(delta, epsilon) for the R^5 construction.

    epsilon is the smallest offset that clears the ambiguity band; delta is
    twice the smallest angle that separates u_{i,j} from w_{i',j'} (i != i').
    """
    params = params or ConstructionParams(k=k)
    eps = params.epsilon_c if params.epsilon_c is not None else params.min_offset
    if params.delta is not None:
        return params.delta, eps
    c = 1 - 4 * SQRT3 * k * eps
    if c <= -1:
        raise MarginViolation(f"no angular step separates the clusters for k={k}, epsilon={eps}")
    return math.acos(c), eps


def s2_index(k: int) -> dict[str, list[tuple[int, int]]]:
    """Vertex order: u_{i,j} (row-major), then v_{i,j}, then w_{i,j}; 0-based i, j."""
    ij = [(i, j) for i in range(k) for j in range(k)]
    return {"u": ij, "v": ij, "w": ij}


def s2_expected_edges(k: int) -> set:
    """The six edge families, over vertex ids u=0.., v=k^2.., w=2k^2.."""
    kk = k * k

    def u(i, j):
        return i * k + j

    def v(i, j):
        return kk + i * k + j

    def w(i, j):
        return 2 * kk + i * k + j

    rng = range(k)
    edges = set()
    for block in (0, kk, 2 * kk):
        edges.update(combinations(range(block, block + kk), 2))
    edges.update((u(i, j), v(i2, j)) for i in rng for i2 in rng for j in rng)
    edges.update((u(i, j), w(i, j2)) for i in rng for j in rng for j2 in rng)
    edges.update((v(i, j), w(i2, i)) for i in rng for i2 in rng for j in rng)
    return edges


def construct_s2(k: int, params: ConstructionParams | None = None) -> PointCloud:
    """3k^2 points in R^5 whose Rips graph is exactly the six families.

    Angles are centred, i*delta -> (i - (k-1)/2)*delta, which is a rotation in
    the (x1, x2) and (x3, x4) planes applied to all three blocks alike.
    """
    params = params or ConstructionParams(k=k)
    if k < 2:
        raise InputError("k must be at least 2")
    delta, eps = s2_parameters(k, params)
    if not (k - 1) * delta < math.pi / 2:
        raise MarginViolation(f"(k-1)*delta = {(k - 1) * delta:.3g} must stay below pi/2")
    if not eps**2 > params.policy.ambiguity_band:
        raise MarginViolation(f"epsilon^2 = {eps**2:.3g} does not clear the ambiguity band")
    ang = [(i - (k - 1) / 2) * delta for i in range(k)]
    a, h = SQRT2_2, SQRT2_2 / 2
    pts, labels = [], []
    for i in range(k):
        for j in range(k):
            pts.append((a * math.cos(ang[i]), a * math.sin(ang[i]), 0.0, 0.0, (j + 1) * eps))
            labels.append(f"u{i + 1},{j + 1}")
    for i in range(k):
        for j in range(k):
            pts.append((0.0, 0.0, a * math.cos(ang[i]), a * math.sin(ang[i]), (j + 1) * eps))
            labels.append(f"v{i + 1},{j + 1}")
    for i in range(k):
        for j in range(k):
            pts.append((h * math.cos(ang[i]), h * math.sin(ang[i]), h * math.cos(ang[j]), h * math.sin(ang[j]),
                        SQRT3 / 2))
            labels.append(f"w{i + 1},{j + 1}")
    cloud = PointCloud(5, np.array(pts), tuple(labels))
    check_margins(cloud, params.policy)
    _compare_edges(_safe_graph(cloud, params.policy), s2_expected_edges(k), cloud.labels)
    return cloud


def s2_link_matchings(complex_: FlagComplex, k: int) -> list[list[tuple[int, int]]]:
    """For each w vertex, the U-V edges inside its link (should be induced matchings)."""
    kk = k * k
    g = complex_.graph
    out = []
    for w in range(2 * kk, 3 * kk):
        nb = g.neighbors[w]
        us = sorted(x for x in nb if x < kk)
        vs = sorted(x for x in nb if kk <= x < 2 * kk)
        out.append([(u, v) for u in us for v in vs if g.has_edge(u, v)])
    return out


def is_induced_matching(graph: Graph, edges: Sequence[tuple[int, int]]) -> bool:
    ends = [x for e in edges for x in e]
    if len(set(ends)) != len(ends):
        return False
    for (u, v), (u2, v2) in combinations(edges, 2):
        if graph.has_edge(u, v2) or graph.has_edge(u2, v):
            return False
    return True


# --- even p ---------------------------------------------------------------------

@dataclass(frozen=True)
class EvenPConstruction:
    cloud: PointCloud
    n_s2: int
    k_s2: int
    odd_k: int
    r: int
    max_cross_distance: float


def construct_even_p(n: int, p: int, params: ConstructionParams | None = None, *,
                     odd_n: int | None = None) -> EvenPConstruction:
    """Union of the R^5 construction on floor(n/2) points and an embedded
    S^{p-3} construction on ceil(n/2) points; every cross pair is an edge.

    ``odd_n`` overrides the size of the odd-sphere part (the R^5 part still
    uses floor(n/2)), which allows small products such as r = 2.
    """
    params = params or ConstructionParams(n=n)
    if p < 4 or p % 2:
        raise InputError("p must be even and at least 4")
    half = n // 2
    k2 = math.isqrt(half // 3)
    if k2 < 2:
        raise MarginViolation(f"floor(n/2) = {half} leaves fewer than 12 points for the R^5 part")
    odd_k = (p - 2) // 2
    s2 = construct_s2(k2, ConstructionParams(k=k2, policy=params.policy, epsilon_c=params.epsilon_c))
    odd_n = n - half if odd_n is None else odd_n
    odd = construct_s2km1(odd_n, odd_k, ConstructionParams(k=odd_k, n=odd_n, policy=params.policy,
                                                           epsilon_c=params.epsilon_c, delta=params.delta))
    lifted = embed_plane_in_r5(odd)
    cross = np.sqrt(((s2.points[:, None, :] - lifted.points[None, :, :]) ** 2).sum(-1))
    worst = float(cross.max())
    if worst > 1 - 1e-3:
        raise MarginViolation(f"cross distance {worst:.6f} is not safely below 1")
    cloud = s2.union(lifted)
    check_margins(cloud, params.policy)
    return EvenPConstruction(cloud, len(s2), k2, odd_k, odd_n // (2 * odd_k), worst)


# --- progression-free sets and induced matchings ------------------------------

def has_ap3(values: Iterable[int]) -> tuple[int, int, int] | None:
    """A nontrivial 3-term progression inside ``values``, or None."""
    vals = sorted(set(values))
    s = set(vals)
    for i, x in enumerate(vals):
        for z in vals[i + 1:]:
            if (x + z) % 2 == 0 and (x + z) // 2 in s:
                return x, (x + z) // 2, z
    return None


def _greedy_ap3_free(N: int) -> list[int]:
    chosen, forbidden = [], set()
    for x in range(N):
        if x in forbidden:
            continue
        for a in chosen:
            forbidden.add(2 * x - a)
        chosen.append(x)
    return chosen


def _behrend_ap3_free(N: int) -> list[int]:
    """Digit vectors on one sphere shell, with digits small enough that sums never carry."""
    best: list[int] = [0] if N >= 1 else []
    for base in range(3, min(N + 2, 48)):
        top = (base - 1) // 2
        dims = 1
        while base ** dims < N * base:
            dims += 1
        for D in range(1, dims + 1):
            if (top + 1) ** D > 20_000:
                break
            shells: dict[int, list[int]] = {}
            for digits in np.ndindex(*([top + 1] * D)):
                val = 0
                for d in reversed(digits):
                    val = val * base + d
                if val < N:
                    shells.setdefault(sum(d * d for d in digits), []).append(val)
            for vals in shells.values():
                if len(vals) > len(best):
                    best = sorted(vals)
    return best


def ap3_free_set(N: int, method: str = "greedy") -> list[int]:
    if N < 1:
        raise InputError("N must be at least 1")
    if method == "greedy":
        out = _greedy_ap3_free(N)
    elif method == "behrend":
        out = _behrend_ap3_free(N)
    else:
        raise InputError(f"unknown AP3-free method {method!r}")
    if N <= 10_000 and has_ap3(out) is not None:
        raise NotAP3Free(f"{method} produced a 3-term progression {has_ap3(out)}")
    return out


@dataclass(frozen=True)
class MatchingFamily:
    """Bipartite graph on U = 0..n_u-1, V = 0..n_v-1 with disjoint matchings.

    Edges are (u, v) pairs in part-local labels; ``graph`` places V after U.
    """

    n_u: int
    n_v: int
    edges: tuple[tuple[int, int], ...]
    matchings: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def graph(self) -> Graph:
        return Graph.from_edges(self.n_u + self.n_v, [(u, self.n_u + v) for u, v in self.edges])

    @property
    def total(self) -> int:
        return sum(len(m) for m in self.matchings)

    def nonempty(self) -> list[tuple[tuple[int, int], ...]]:
        return [m for m in self.matchings if m]

    def check(self) -> dict:
        """Structural validation: disjointness, matching and inducedness per part."""
        edge_set = set(self.edges)
        seen = set()
        disjoint = True
        for m in self.matchings:
            for e in m:
                if e in seen or e not in edge_set:
                    disjoint = False
                seen.add(e)
        induced = []
        for m in self.matchings:
            us = [u for u, _ in m]
            vs = [v for _, v in m]
            ok = len(set(us)) == len(us) and len(set(vs)) == len(vs)
            if ok:
                for (u, v), (u2, v2) in combinations(m, 2):
                    if (u, v2) in edge_set or (u2, v) in edge_set:
                        ok = False
                        break
            induced.append(ok)
        return {"disjoint": disjoint, "induced": all(induced), "per_matching": induced, "total": self.total}

    def to_json(self) -> dict:
        return {
            "version": 1,
            "U": self.n_u,
            "V": self.n_v,
            "edges": [list(e) for e in self.edges],
            "matchings": [[list(e) for e in m] for m in self.matchings],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MatchingFamily":
        try:
            return cls(int(data["U"]), int(data["V"]), tuple(tuple(e) for e in data["edges"]),
                       tuple(tuple(tuple(e) for e in m) for m in data["matchings"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad matching-family JSON: {exc}") from None


def rs_matching_family(A: Sequence[int], N: int) -> MatchingFamily:
    """U = [0, N), V = [0, 2N), edges (x, x + a); matchings M_z = {(z - 2a, z - a)}, z in [0, 3N)."""
    A = sorted(set(int(a) for a in A))
    if any(not 0 <= a < N for a in A):
        raise InputError("A must be a subset of [0, N)")
    if has_ap3(A) is not None:
        raise NotAP3Free(f"A contains the progression {has_ap3(A)}")
    edges = tuple(sorted((x, x + a) for x in range(N) for a in A))
    matchings = []
    for z in range(3 * N):
        m = tuple(sorted((z - 2 * a, z - a) for a in A if 0 <= z - 2 * a < N and 0 <= z - a < 2 * N))
        matchings.append(m)
    family = MatchingFamily(N, 2 * N, edges, tuple(matchings))
    report = family.check()
    if not (report["disjoint"] and report["induced"]):
        raise NotAP3Free("matching family failed the inducedness check")
    return family


# --- quasi-Rips lower bound --------------------------------------------------

@dataclass
class QuasiRipsConstruction:
    complex: FlagComplex
    U: tuple[int, ...]
    V: tuple[int, ...]
    N: tuple[int, ...]
    matchings: list[list[tuple[int, int]]]
    note: dict = field(default_factory=dict)
    witness: QuasiRipsSpec | None = None

    @property
    def matched_edges(self) -> int:
        return sum(len(m) for m in self.matchings)


def _trim(family: MatchingFamily, cap: int):
    """Keep the ``cap`` largest matchings, then the ``cap`` U- and V-vertices used by most of them."""
    ms = sorted(enumerate(family.matchings), key=lambda t: (-len(t[1]), t[0]))[:cap]
    ms = [list(m) for _, m in sorted(ms)]

    def top_vertices(side: int, size: int) -> set:
        counts: dict[int, int] = {}
        for m in ms:
            for x in {e[side] for e in m}:
                counts[x] = counts.get(x, 0) + 1
        universe = range(family.n_u if side == 0 else family.n_v)
        ranked = sorted(universe, key=lambda x: (-counts.get(x, 0), x))
        return set(ranked[: min(size, len(universe))])

    keep_u = top_vertices(0, cap)
    ms = [[e for e in m if e[0] in keep_u] for m in ms]
    keep_v = top_vertices(1, cap)
    ms = [[e for e in m if e[1] in keep_v] for m in ms]
    return sorted(keep_u), sorted(keep_v), ms


def quasi_rips_from_matchings(family: MatchingFamily, cap_third: int | None = None, *, trim: bool = True,
                              dim_cap: int = 3, witness_alpha: float | None = None,
                              drop_empty: bool = True) -> QuasiRipsConstruction:
    """Flag complex on U' + V' + one vertex per matching.

    U' and V' are cliques, U'-V' edges come from the bipartite graph, the
    matching vertices form a clique and each is joined to the endpoints of its
    own matching. ``cap_third`` bounds |U'|, |V'| and the number of matchings;
    larger inputs are trimmed unless ``trim=False``.
    """
    matchings = list(family.nonempty()) if drop_empty else list(family.matchings)
    sizes = {"U": family.n_u, "V": family.n_v, "matchings": len(matchings)}
    if cap_third is None:
        cap_third = max(sizes.values())
    if cap_third < 1:
        raise CapExceeded("cap_third must be positive")
    over = {k: v for k, v in sizes.items() if v > cap_third}
    if over and not trim:
        raise CapExceeded(f"sizes {over} exceed cap {cap_third}")
    trimmed = MatchingFamily(family.n_u, family.n_v, family.edges, tuple(tuple(m) for m in matchings))
    if over:
        us, vs, ms = _trim(trimmed, cap_third)
    else:
        us, vs, ms = list(range(family.n_u)), list(range(family.n_v)), [list(m) for m in matchings]
    ui = {u: i for i, u in enumerate(us)}
    vi = {v: len(us) + i for i, v in enumerate(vs)}
    n0 = len(us) + len(vs)
    t = len(ms)
    edges = list(combinations(range(len(us)), 2))
    edges += list(combinations(range(len(us), n0), 2))
    edges += list(combinations(range(n0, n0 + t), 2))
    edges += [(ui[u], vi[v]) for u, v in family.edges if u in ui and v in vi]
    local = []
    for i, m in enumerate(ms):
        loc = [(ui[u], vi[v]) for u, v in m]
        local.append(loc)
        for a, b in loc:
            edges += [(a, n0 + i), (b, n0 + i)]
    graph = Graph.from_edges(n0 + t, edges)
    complex_ = flag_skeleton(graph, dim_cap)
    note = {
        "input_sizes": sizes,
        "cap_third": cap_third,
        "trimmed": bool(over),
        "matched_edges_before": sum(len(m) for m in matchings),
        "matched_edges_after": sum(len(m) for m in local),
        "realization": "U', V', N as three clusters near the vertices of a unit equilateral triangle; "
                       "cross-cluster pairs are optional edges for any alpha",
    }
    result = QuasiRipsConstruction(complex_, tuple(range(len(us))), tuple(range(len(us), n0)),
                                   tuple(range(n0, n0 + t)), local, note)
    if witness_alpha is not None:
        result.witness = quasi_rips_witness(result, witness_alpha)
    return result


def quasi_rips_witness(qr: QuasiRipsConstruction, alpha: float) -> QuasiRipsSpec:
    """Planar cloud plus an explicit optional-edge set realizing ``qr.complex`` as a quasi-Rips complex."""
    if not 0 < alpha < 1:
        raise InputError("alpha must lie in (0, 1)")
    gap = 1 - alpha
    shift = gap / 4
    rho = min(alpha, gap) / 8
    centers = np.array([(0.0, 0.0), (0.0, 1.0), (SQRT3 / 2, 0.5)])
    centroid = centers.mean(axis=0)
    n = qr.complex.n_vertices
    pts = np.zeros((n, 2))
    for c, block in enumerate((qr.U, qr.V, qr.N)):
        direction = centroid - centers[c]
        anchor = centers[c] + shift * direction / np.linalg.norm(direction)
        m = len(block)
        for t, v in enumerate(block):
            theta = 2 * math.pi * t / max(m, 1)
            pts[v] = anchor + rho * np.array([math.cos(theta), math.sin(theta)])
    cloud = PointCloud(2, pts)
    cluster = {}
    for c, block in enumerate((qr.U, qr.V, qr.N)):
        for v in block:
            cluster[v] = c
    optional = [e for e in qr.complex.graph.edges if cluster[e[0]] != cluster[e[1]]]
    return QuasiRipsSpec(alpha, cloud, OptionalEdgePolicy.explicit(optional))


def gamma_prime(qr: QuasiRipsConstruction) -> SimplicialComplex:
    """The complex minus every face {N_i, u, v} with u in U', v in V' (a non-flag complex)."""
    cx = qr.complex
    uset, vset, nset = set(qr.U), set(qr.V), set(qr.N)

    def removed(face) -> bool:
        return (len(face) >= 3 and any(x in nset for x in face) and any(x in uset for x in face)
                and any(x in vset for x in face))

    for p in range(3, cx.dim_cap + 1):
        for f in cx.faces[p]:
            if removed(f):
                raise InputError(f"face {f} contains a removed triangle, so the triangles are not maximal")
    faces = tuple(tuple(f for f in fs if not (p == 2 and removed(f))) for p, fs in enumerate(cx.faces))
    return SimplicialComplex(cx.n_vertices, cx.dim_cap, faces)
