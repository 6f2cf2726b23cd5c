"""Property checkers for the link, crossing, perpendicularity and bipartite
lemmas, a packing-constant estimator, and the scaling-experiment harness."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .complexes import build_rips, link_of
from .constructions import (TwoCliqueGadget, ap3_free_set, construct_even_p, construct_s2, construct_s2km1,
                            quasi_rips_from_matchings, rs_matching_family)
from .cycles import basis_status
from .errors import ClusterTooLoose, InputError, PreconditionUnmet
from .geometry import PointCloud, ThresholdPolicy
from .graphs import Graph
from .homology import FieldSpec, _as_field, betti_numbers

# --- link inequality ---------------------------------------------------------


@dataclass(frozen=True)
class LinkInequality:
    holds: bool
    whole: int
    without_vertex: int
    link: int


def check_link_inequality(cloud: PointCloud, v: int, p: int, field_: FieldSpec | int | None = None,
                          policy: ThresholdPolicy | None = None) -> LinkInequality:
    """beta_p(R(S)) <= beta_p(R(S - v)) + beta_{p-1}(lk v)."""
    if p < 1:
        raise InputError("p must be at least 1")
    if not 0 <= v < len(cloud):
        raise InputError(f"vertex {v} not in cloud of {len(cloud)} points")
    f = _as_field(field_)
    whole = build_rips(cloud, policy, p + 1)
    rest = [i for i in range(len(cloud)) if i != v]
    b_whole = betti_numbers(whole, p, f).betti[p]
    if rest:
        b_rest = betti_numbers(build_rips(cloud.subcloud(rest), policy, p + 1), p, f).betti[p]
    else:
        b_rest = 0
    lk = link_of(whole, (v,))
    if lk.n_vertices == 0:
        # empty link: reduced H_{-1} is 1-dimensional, all others vanish
        b_link = 1 if p - 1 == -1 else 0
    else:
        b_link = betti_numbers(lk, p - 1, f).betti[p - 1]
    return LinkInequality(b_whole <= b_rest + b_link, b_whole, b_rest, b_link)


# --- planar crossing lemma -----------------------------------------------------

def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def segments_cross(a, b, c, d) -> bool:
    """Whether the open segments ab and cd meet in a single interior point."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def check_crossing_cone(points: Sequence[Sequence[float]], policy: ThresholdPolicy | None = None) -> bool:
    """Points ordered (u1, v1, u2, v2); True iff some point is adjacent to the other three."""
    pts = np.asarray(points, dtype=float)
    if pts.shape != (4, 2):
        raise InputError("expected four points in the plane")
    cloud = PointCloud(2, pts)
    accept = (policy or ThresholdPolicy()).classify(cloud.squared_distances())
    if not (accept[0, 1] and accept[2, 3]):
        raise PreconditionUnmet("u1v1 and u2v2 must both be edges")
    if not segments_cross(pts[0], pts[1], pts[2], pts[3]):
        raise PreconditionUnmet("segments u1v1 and u2v2 do not cross")
    return any(all(accept[i, j] for j in range(4) if j != i) for i in range(4))


# --- near-perpendicularity -----------------------------------------------------

@dataclass(frozen=True)
class PerpPair:
    pair: tuple[int, int]
    monotone: bool
    dot: float
    violates: bool


def check_perp_disjunction(U: PointCloud, V: PointCloud, eps: float, alpha_threshold: float = 0.25,
                           p_U: Sequence[float] | None = None, p_V: Sequence[float] | None = None,
                           ) -> list[PerpPair]:
    """Per pair of V: does one point stay uniformly closer to all of U, and how
    perpendicular is the pair to p_V - p_U? ``violates`` marks pairs failing both."""
    if U.dim != 2 or V.dim != 2:
        raise InputError("clusters must lie in the plane")
    pu = np.asarray(p_U if p_U is not None else U.points.mean(axis=0), dtype=float)
    pv = np.asarray(p_V if p_V is not None else V.points.mean(axis=0), dtype=float)
    if abs(np.linalg.norm(pv - pu) - 1) > 1e-9:
        raise PreconditionUnmet(f"cluster centres must be at distance 1, got {np.linalg.norm(pv - pu)!r}")
    for name, cl, c in (("U", U, pu), ("V", V, pv)):
        far = np.linalg.norm(cl.points - c, axis=1).max(initial=0.0)
        if far > eps:
            raise ClusterTooLoose(f"{name} reaches {far:.3g} from its centre, above eps={eps}")
    w1 = pv - pu
    out = []
    for i, j in combinations(range(len(V)), 2):
        a, b = V.points[i], V.points[j]
        gap = np.linalg.norm(b - a)
        if gap == 0:
            continue
        da = np.linalg.norm(U.points - a, axis=1)
        db = np.linalg.norm(U.points - b, axis=1)
        monotone = bool(np.all(da <= db) or np.all(da >= db))
        dot = float(abs(w1 @ ((b - a) / gap)))
        out.append(PerpPair((i, j), monotone, dot, not monotone and dot >= alpha_threshold))
    return out


# --- bipartite graphs without K_{2,3} -------------------------------------------

@dataclass(frozen=True)
class K23Report:
    holds: bool
    edge_count: int
    bound: float
    ratio: float


def check_k23_condition(graph: Graph, U: Sequence[int], V: Sequence[int]) -> K23Report:
    """No two vertices of U with three common neighbours; compares |E| with n^{3/2}."""
    uset, vset = set(U), set(V)
    if uset & vset or not all(0 <= x < graph.n_vertices for x in uset | vset):
        raise InputError("U and V must be disjoint vertex sets of the graph")
    if any((a in uset) == (b in uset) for a, b in graph.edges):
        raise InputError("graph is not bipartite with respect to U, V")
    nb = graph.neighbors
    holds = all(len(nb[a] & nb[b]) < 3 for a, b in combinations(sorted(uset), 2))
    n = max(len(uset), len(vset), 1)
    bound = n**1.5
    edges = len(graph.edges)
    return K23Report(holds, edges, bound, edges / bound)


# --- bipartite lemma -------------------------------------------------------------

def check_bipartite_lemma(gadget: TwoCliqueGadget, field_: FieldSpec | int | None = None) -> dict:
    """beta_1 of the clique complex against the residual component count, plus
    the quadrilateral basis check."""
    from .complexes import flag_skeleton

    cx = flag_skeleton(gadget.graph, 2)
    beta1 = betti_numbers(cx, 1, field_).betti[1]
    quads = gadget.quadrilaterals()
    independent, spanning = basis_status(cx, quads, field_)
    return {
        "beta1": beta1,
        "q": gadget.q,
        "expected": gadget.expected_beta1,
        "holds": beta1 == gadget.expected_beta1,
        "basis_independent": independent,
        "basis_spanning": spanning,
    }


# --- packing constant --------------------------------------------------------------

@dataclass(frozen=True)
class PackingEstimate:
    d: int
    constant: int
    witness: np.ndarray

    def verify(self) -> bool:
        pts = self.witness
        if np.any(np.linalg.norm(pts, axis=1) > 1 + 1e-12):
            return False
        for i, j in combinations(range(len(pts)), 2):
            if not np.linalg.norm(pts[i] - pts[j]) > 1:
                return False
        return True


def _spread(m: int, d: int, rng: np.random.Generator, iters: int = 600) -> np.ndarray | None:
    x = rng.normal(size=(m, d))
    x /= np.maximum(np.linalg.norm(x, axis=1, keepdims=True), 1e-12)
    x *= rng.uniform(0.5, 1.0, size=(m, 1))
    target = 1.02
    for _ in range(iters):
        diff = x[:, None, :] - x[None, :, :]
        dist = np.linalg.norm(diff, axis=-1)
        np.fill_diagonal(dist, np.inf)
        if dist.min() > 1 + 1e-9:
            return x
        short = np.clip(target - dist, 0, None)
        push = (short / np.maximum(dist, 1e-12))[..., None] * diff
        x = x + 0.5 * push.sum(axis=1)
        norms = np.linalg.norm(x, axis=1, keepdims=True)
        x = np.where(norms > 1, x / norms, x)
    diff = x[:, None, :] - x[None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    np.fill_diagonal(dist, np.inf)
    return x if dist.min() > 1 + 1e-9 else None


def estimate_packing_constant(d: int, trials: int = 20, seed: int = 0, max_points: int = 64) -> PackingEstimate:
    """Lower estimate of max{|T| : T in the unit d-ball, pairwise distances > 1} - 1.

    Tries m = 2, 3, ... points with ``trials`` repulsion runs each and stops at
    the first m where none succeeds. Run t for size m always uses the same
    random stream, so more trials never lower the estimate.
    """
    if d < 1:
        raise InputError("d must be positive")
    best = np.zeros((1, d))
    for m in range(2, max_points + 1):
        found = None
        for t in range(trials):
            found = _spread(m, d, np.random.default_rng([seed, d, m, t]))
            if found is not None:
                break
        if found is None:
            break
        best = found
    est = PackingEstimate(d, len(best) - 1, best)
    assert est.verify()
    return est


def max_link_components(cloud: PointCloud, policy: ThresholdPolicy | None = None) -> int:
    """max over v of reduced beta_0 of the link of v (0 for empty links)."""
    cx = build_rips(cloud, policy, 1)
    out = 0
    for v in range(len(cloud)):
        nb = sorted(cx.graph.neighbors[v])
        if not nb:
            continue
        sub, _ = cx.graph.induced(nb)
        out = max(out, len(sub.components()) - 1)
    return out


# --- scaling experiments --------------------------------------------------------------

FAMILIES = ("s2", "s2km1", "even_p", "quasi_rips_rs")
CSV_COLUMNS = ("family", "n", "p", "betti", "f0", "f1", "f2", "f3", "wall_time", "seed")


@dataclass(frozen=True)
class ExperimentRecord:
    family: str
    n: int
    p: int
    betti: int
    face_counts: tuple[int, ...]
    wall_time: float
    seed: int
    size: int = 0
    field: int = 2

    def csv_row(self) -> list:
        fc = list(self.face_counts[:4]) + [""] * (4 - min(len(self.face_counts), 4))
        return [self.family, self.n, self.p, self.betti, *fc, f"{self.wall_time:.6f}", self.seed]


def default_p(family: str, k: int = 1) -> int:
    return {"s2": 2, "s2km1": 2 * k - 1, "even_p": 4, "quasi_rips_rs": 2}[family]


def _one_record(args) -> ExperimentRecord:
    family, size, p, field_p, seed, k, timing = args
    start = time.perf_counter()
    if family == "s2km1":
        cx = build_rips(construct_s2km1(size, k), dim_cap=p + 1)
    elif family == "s2":
        kk = math.isqrt(size // 3)
        cx = build_rips(construct_s2(kk), dim_cap=p + 1)
    elif family == "even_p":
        cx = build_rips(construct_even_p(size, p).cloud, dim_cap=p + 1)
    elif family == "quasi_rips_rs":
        fam = rs_matching_family(ap3_free_set(size), size)
        cx = quasi_rips_from_matchings(fam, dim_cap=p + 1).complex
    else:
        raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    beta = betti_numbers(cx, p, field_p).betti[p]
    elapsed = time.perf_counter() - start if timing else 0.0
    return ExperimentRecord(family, cx.n_vertices, p, beta, tuple(cx.f_vector), elapsed, seed, size, field_p)


def fit_exponent(records: Sequence[ExperimentRecord], min_n: int = 12) -> float | None:
    """Least-squares slope of log(betti) against log(n) over records with n >= min_n and betti > 0."""
    pts = [(math.log(r.n), math.log(r.betti)) for r in records if r.n >= min_n and r.betti > 0]
    if len(pts) < 2 or len({x for x, _ in pts}) < 2:
        return None
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def scaling_experiment(family: str, sizes: Sequence[int], p: int | None = None,
                       field_: FieldSpec | int | None = None, seed: int = 0, k: int = 1, jobs: int = 1,
                       timing: bool = True) -> tuple[list[ExperimentRecord], dict]:
    """Build each configuration, compute beta_p, and fit the growth exponent.

    Sizes are point budgets n for the geometric families and the progression
    range N for ``quasi_rips_rs``. Records keep input order regardless of ``jobs``.
    """
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    f = _as_field(field_)
    p = default_p(family, k) if p is None else p
    tasks = [(family, int(s), p, f.p, seed, k, timing) for s in sizes]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_one_record, tasks))
    else:
        records = [_one_record(t) for t in tasks]
    exponent = fit_exponent(records)
    target = {"s2": 1.5, "s2km1": float(k), "even_p": p / 2 + 0.5}.get(family)
    summary = {
        "version": 1,
        "family": family,
        "p": p,
        "field": f.p,
        "seed": seed,
        "exponent": exponent,
        "target_exponent": target,
        "ratios": [
            {"n": r.n, "betti_over_n": r.betti / r.n,
             "betti_over_n_target": (r.betti / r.n**target) if target else None}
            for r in records
        ],
    }
    return records, summary


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()


def records_to_json(records: Sequence[ExperimentRecord]) -> list[dict]:
    out = []
    for r in records:
        d = asdict(r)
        d["face_counts"] = list(r.face_counts)
        out.append(d)
    return out
