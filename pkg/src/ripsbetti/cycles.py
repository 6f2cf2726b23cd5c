"""H1 cycle bases: extraction, simple/chord-free normalization, epsilon-simple refinement."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .complexes import SimplicialComplex
from .errors import DimensionOutOfRange, InvalidBasis
from .geometry import PointCloud, cube_index
from .homology import FieldSpec, _as_field, betti_numbers, homology_quotient
from .linalg import Reducer, make_column

Cycle = tuple[int, ...]


def canonical_cycle(cycle: Sequence[int]) -> Cycle:
    """Rotate so the smallest vertex comes first, then orient toward the smaller neighbor."""
    c = list(cycle)
    k = len(c)
    if k == 0:
        return ()
    i = c.index(min(c))
    fwd = c[i:] + c[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def drop_consecutive_repeats(cycle: Sequence[int]) -> Cycle:
    out = []
    for v in cycle:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return tuple(out)


def is_simple(cycle: Sequence[int]) -> bool:
    return len(set(cycle)) == len(cycle)


def chords(cycle: Sequence[int], edges: set) -> list[tuple[int, int]]:
    """Edges of the host joining non-consecutive positions of ``cycle``."""
    k = len(cycle)
    out = []
    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            a, b = cycle[i], cycle[j]
            if a != b and (min(a, b), max(a, b)) in edges:
                out.append((i, j))
    return out


def is_epsilon_simple(cycle: Sequence[int], cubes: Sequence) -> bool:
    """A 4-cycle whose two opposite sides each stay inside one cube."""
    if len(cycle) != 4 or not is_simple(cycle):
        return False
    a, b, c, d = (cubes[v] for v in cycle)
    return (a == b and c == d) or (b == c and d == a)


@dataclass
class CycleBasis:
    cycles: list[Cycle]
    complex: SimplicialComplex = field(repr=False)
    simple: list[bool] = field(default_factory=list)
    chord_free: list[bool] = field(default_factory=list)
    epsilon_simple: list[bool] | None = None

    def __len__(self):
        return len(self.cycles)

    def to_json(self) -> dict:
        items = []
        for i, c in enumerate(self.cycles):
            item = {"vertices": list(c), "simple": self.simple[i], "chord_free": self.chord_free[i]}
            if self.epsilon_simple is not None:
                item["epsilon_simple"] = self.epsilon_simple[i]
            items.append(item)
        return {"version": 1, "cycles": items}


def _edge_set(complex_: SimplicialComplex) -> set:
    return set(complex_.faces[1]) if complex_.dim_cap >= 1 else set()


def make_basis(cycles: Sequence[Cycle], complex_: SimplicialComplex, cubes=None) -> CycleBasis:
    edges = _edge_set(complex_)
    return CycleBasis(
        list(cycles),
        complex_,
        [is_simple(c) for c in cycles],
        [not chords(c, edges) for c in cycles],
        None if cubes is None else [is_epsilon_simple(c, cubes) for c in cycles],
    )


def cycle_column(cycle: Sequence[int], complex_: SimplicialComplex, p: int):
    """The 1-chain traversing ``cycle`` (closed), as a reducer column."""
    index = complex_.face_index(1)
    entries = []
    k = len(cycle)
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key not in index:
            raise InvalidBasis(f"cycle step {a}-{b} is not an edge")
        entries.append((index[key], 1 if a < b else -1))
    return make_column(entries, p)


def _fork(red: Reducer) -> Reducer:
    clone = Reducer(red.p)
    clone.pivots = dict(red.pivots)
    return clone


def _select(pool: Sequence[Cycle], complex_, quotient: Reducer, p: int) -> list[Cycle]:
    """Greedy subset of ``pool`` (in the given order) independent in H1."""
    red = _fork(quotient)
    out = []
    for c in pool:
        if len(c) < 3:
            continue
        if red.add(cycle_column(c, complex_, p))[0]:
            out.append(c)
    return out


def _length_lex(c: Cycle):
    return (len(c), c)


def spanning_forest_cycles(complex_: SimplicialComplex) -> list[Cycle]:
    """Fundamental cycles of a BFS spanning forest of the 1-skeleton."""
    n = complex_.n_vertices
    adj = [[] for _ in range(n)]
    for u, v in _edge_set(complex_):
        adj[u].append(v)
        adj[v].append(u)
    for a in adj:
        a.sort()
    parent = [-1] * n
    depth = [-1] * n
    tree = set()
    for root in range(n):
        if depth[root] >= 0:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if depth[w] < 0:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    out = []
    for u, v in sorted(_edge_set(complex_) - tree):
        up, vp = [u], [v]
        a, b = u, v
        while depth[a] > depth[b]:
            a = parent[a]
            up.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            vp.append(b)
        while a != b:
            a, b = parent[a], parent[b]
            up.append(a)
            vp.append(b)
        out.append(canonical_cycle(up + vp[:-1][::-1]))
    return out


def _split(cycle: Cycle, edges: set) -> list[Cycle]:
    """One rewriting step: split at a repeated vertex, else at the first chord."""
    seen = {}
    for j, v in enumerate(cycle):
        if v in seen:
            i = seen[v]
            pieces = [cycle[i:j], cycle[:i] + cycle[j:]]
            break
        seen[v] = j
    else:
        i, j = chords(cycle, edges)[0]
        pieces = [cycle[: i + 1] + cycle[j:], cycle[i: j + 1]]
    out = []
    for piece in pieces:
        piece = drop_consecutive_repeats(piece)
        if len(piece) >= 3:
            out.append(canonical_cycle(piece))
    return out


def normalize_cycles(cycles: Sequence[Cycle], complex_: SimplicialComplex, field_=None) -> list[Cycle]:
    """Rewrite a set of H1 classes into simple, chord-free cycles with the same span.

    Each step replaces one offending cycle by two strictly shorter pieces whose
    chains sum to it, then greedily re-selects an independent subset
    preferring shorter cycles. The multiset of lengths decreases at every step,
    so the loop terminates.
    """
    f = _as_field(field_)
    edges = _edge_set(complex_)
    quotient = homology_quotient(complex_, 1, f)
    basis = _select(sorted(set(canonical_cycle(c) for c in cycles), key=_length_lex), complex_, quotient, f.p)
    while True:
        bad = next((c for c in basis if not is_simple(c) or chords(c, edges)), None)
        if bad is None:
            return basis
        pool = [c for c in basis if c != bad] + _split(bad, edges)
        basis = _select(sorted(set(pool), key=_length_lex), complex_, quotient, f.p)


def h1_cycle_basis(complex_: SimplicialComplex, field_: FieldSpec | int | None = None) -> CycleBasis:
    if complex_.dim_cap < 2:
        raise DimensionOutOfRange("an H1 basis needs the 2-faces (dim_cap >= 2)")
    cycles = normalize_cycles(spanning_forest_cycles(complex_), complex_, field_)
    return make_basis(cycles, complex_)


def basis_status(complex_: SimplicialComplex, cycles: Sequence[Cycle], field_=None) -> tuple[bool, bool]:
    """(independent, spanning) for the classes of ``cycles`` in H1."""
    f = _as_field(field_)
    red = _fork(homology_quotient(complex_, 1, f))
    independent = all(red.add(cycle_column(c, complex_, f.p))[0] for c in cycles)
    beta1 = betti_numbers(complex_, 1, f).betti[1]
    return independent, independent and len(cycles) == beta1


def _near_alignment(c: Cycle, d: Cycle, cubes) -> Cycle | None:
    """Relabel ``d`` so its t-th vertex shares a cube with the t-th vertex of ``c``."""
    k = len(c)
    if len(d) != k:
        return None
    target = [cubes[v] for v in c]
    for seq in (list(d), list(d[::-1])):
        for r in range(k):
            cand = seq[r:] + seq[:r]
            if all(cubes[v] == t for v, t in zip(cand, target)):
                return tuple(cand)
    return None


@dataclass
class RefinementResult:
    basis: CycleBasis
    non_epsilon_simple: int
    steps: int


def refine_epsilon_simple(basis: CycleBasis, cloud: PointCloud, epsilon: float,
                          field_: FieldSpec | int | None = None) -> RefinementResult:
    """Trade pairs of near, non-epsilon-simple cycles for epsilon-simple quadrilaterals.

    While two basis cycles C, C' are near (vertex-by-vertex in the same cubes)
    and neither is epsilon-simple, C' is replaced by the quadrilaterals
    (v'_t, v'_{t+1}, v_{t+1}, v_t); C' equals C plus their sum as a chain. The
    untouched cycles are kept and the quadrilaterals fill the freed slot.
    """
    f = _as_field(field_)
    host = basis.complex
    cubes = [ci.coords for ci in cube_index(cloud, epsilon)]
    if len(cubes) != host.n_vertices:
        raise InvalidBasis("cloud and host complex have different vertex counts")
    quotient = homology_quotient(host, 1, f)
    current = [tuple(c) for c in basis.cycles]
    if len(_select(current, host, quotient, f.p)) != len(current):
        raise InvalidBasis("input cycle classes are not linearly independent")
    steps = 0
    while True:
        flagged = [i for i, c in enumerate(current) if not is_epsilon_simple(c, cubes)]
        pair = None
        for a in flagged:
            for b in flagged:
                if b <= a:
                    continue
                aligned = _near_alignment(current[a], current[b], cubes)
                if aligned is not None:
                    pair = (a, b, aligned)
                    break
            if pair:
                break
        if pair is None:
            break
        a, b, aligned = pair
        c = current[a]
        k = len(c)
        quads = set()
        for t in range(k):
            q = drop_consecutive_repeats((aligned[t], aligned[(t + 1) % k], c[(t + 1) % k], c[t]))
            if len(q) >= 3:
                quads.add(canonical_cycle(q))
        keep = [x for i, x in enumerate(current) if i != b]
        current = _select(keep + sorted(quads, key=_length_lex), host, quotient, f.p)
        steps += 1
    refined = make_basis(current, host, cubes)
    return RefinementResult(refined, sum(not e for e in refined.epsilon_simple), steps)
