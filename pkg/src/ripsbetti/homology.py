"""Reduced simplicial homology over GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .complexes import FlagComplex, SimplicialComplex
from .errors import DimensionOutOfRange, InputError, NotASubcomplex
from .linalg import Reducer, SparseColumnMatrix, column_entries, is_prime, make_column


@dataclass(frozen=True)
class FieldSpec:
    p: int = 2

    def __post_init__(self):
        if not (is_prime(self.p) and self.p <= 2**31):
            raise InputError(f"field characteristic must be a prime <= 2^31, got {self.p}")


GF2 = FieldSpec(2)


def _as_field(field_) -> FieldSpec:
    if field_ is None:
        return GF2
    if isinstance(field_, int):
        return FieldSpec(field_)
    return field_


def _boundary_entries(complex_: SimplicialComplex, q: int):
    """Yield, per q-face in canonical order, its ``(row, sign)`` boundary entries."""
    if q == 0:
        for _ in complex_.faces[0]:
            yield ((0, 1),)
        return
    index = complex_.face_index(q - 1)
    for face in complex_.faces[q]:
        entries = []
        for i in range(len(face)):
            entries.append((index[face[:i] + face[i + 1:]], -1 if i % 2 else 1))
        entries.sort()
        yield tuple(entries)


def boundary_matrix(complex_: SimplicialComplex, p: int, field_: FieldSpec | int | None = None) -> SparseColumnMatrix:
    """Matrix of the boundary map from p-chains to (p-1)-chains.

    ``p = 0`` gives the augmentation onto the empty face, a ``1 x n_0`` row of
    ones, so that ranks produce reduced homology.
    """
    f = _as_field(field_)
    if not 0 <= p <= complex_.dim_cap:
        raise DimensionOutOfRange(f"p={p} outside 0..{complex_.dim_cap}")
    cols = tuple(tuple((r, s % f.p) for r, s in col) for col in _boundary_entries(complex_, p))
    return SparseColumnMatrix(complex_.n_faces(p - 1), complex_.n_faces(p), cols, f.p)


def boundary_columns(complex_: SimplicialComplex, q: int, p: int) -> list:
    """Native reducer columns of the q-th boundary map (q <= dim_cap)."""
    return [make_column(col, p) for col in _boundary_entries(complex_, q)]


def coboundary_columns(complex_: SimplicialComplex, q: int, p: int) -> list:
    """Native columns of the coboundary on q-cochains (rows are (q+1)-faces).

    ``q = -1`` is the dual of the augmentation: one column hitting every vertex.
    """
    if q == -1:
        return [make_column(((v, 1) for v in range(complex_.n_faces(0))), p)]
    if q + 1 > complex_.dim_cap:
        return [make_column((), p) for _ in complex_.faces[q]]
    rows: list[list[tuple[int, int]]] = [[] for _ in complex_.faces[q]]
    for j, col in enumerate(_boundary_entries(complex_, q + 1)):
        for r, s in col:
            rows[r].append((j, s))
    return [make_column(entries, p) for entries in rows]


def boundary_ranks(complex_: SimplicialComplex, qmax: int, p: int = 2) -> list[int]:
    """Ranks of the boundary maps of dimensions 0..qmax.

    Works on coboundaries with clearing: a q-face that is the pivot of a
    reduced column one dimension lower has a coboundary column that reduces to
    zero, so it is skipped. Maps above ``dim_cap`` have rank 0.
    """
    ranks = []
    cleared: set[int] = set()
    for q in range(qmax + 1):
        if q > complex_.dim_cap or complex_.n_faces(q) == 0:
            ranks.append(0)
            cleared = set()
            continue
        cols = coboundary_columns(complex_, q - 1, p)
        red = Reducer(p)
        for j, col in enumerate(cols):
            if j in cleared or not col:
                continue
            red.add(col)
        ranks.append(red.rank)
        cleared = set(red.pivots)
    return ranks


@dataclass(frozen=True)
class BettiVector:
    field: FieldSpec
    betti: tuple[int, ...]

    def __getitem__(self, p: int) -> int:
        return self.betti[p]

    def to_json(self) -> dict:
        return {"version": 1, "field": self.field.p, "betti": list(self.betti)}


def betti_numbers(complex_: SimplicialComplex, pmax: int, field_: FieldSpec | int | None = None,
                  *, allow_top: bool = False) -> BettiVector:
    """Reduced Betti numbers 0..pmax.

    ``pmax`` must be at most ``dim_cap - 1`` so that the (pmax+1)-faces are
    available. ``allow_top=True`` lifts this to ``dim_cap`` for complexes known
    to have no faces above their cap (e.g. non-flag complexes built from an
    explicit face list).
    """
    f = _as_field(field_)
    limit = complex_.dim_cap if allow_top else complex_.dim_cap - 1
    if not 0 <= pmax <= limit:
        raise DimensionOutOfRange(f"pmax={pmax} needs faces of dimension {pmax + 1}; dim_cap is {complex_.dim_cap}")
    ranks = boundary_ranks(complex_, pmax + 1, f.p)
    betti = tuple(complex_.n_faces(q) - ranks[q] - ranks[q + 1] for q in range(pmax + 1))
    return BettiVector(f, betti)


def is_fully_enumerated(complex_: SimplicialComplex) -> bool:
    """False if a flag complex has cliques above its cap that were truncated."""
    if not isinstance(complex_, FlagComplex) or complex_.graph is None:
        return True
    masks = complex_.graph.neighbor_masks
    for face in complex_.faces[complex_.dim_cap]:
        common = masks[face[0]]
        for v in face[1:]:
            common &= masks[v]
        if common:
            return False
    return True


def euler_poincare_check(complex_: SimplicialComplex, pmax: int | None = None,
                         field_: FieldSpec | int | None = None) -> tuple[bool, dict]:
    """Compare the reduced Euler characteristic from face counts and from Betti numbers.

    The complex is treated as the complex of its listed faces (the dim_cap
    skeleton), so the top dimension uses a zero boundary from above.
    """
    f = _as_field(field_)
    top = complex_.dim_cap if pmax is None else pmax
    if top != complex_.dim_cap:
        raise DimensionOutOfRange(f"Euler-Poincare needs every dimension up to dim_cap={complex_.dim_cap}")
    betti = betti_numbers(complex_, top, f, allow_top=True).betti
    fv = complex_.f_vector
    from_faces = sum((-1) ** q * n for q, n in enumerate(fv)) - 1
    from_betti = sum((-1) ** q * b for q, b in enumerate(betti))
    report = {
        "f_vector": fv,
        "betti": list(betti),
        "chi_from_faces": from_faces,
        "chi_from_betti": from_betti,
        "fully_enumerated": is_fully_enumerated(complex_),
    }
    return from_faces == from_betti, report


# --- chains and images ------------------------------------------------------

def _oriented_face(face: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort ``face`` and return it with the sign of the sorting permutation."""
    verts = list(face)
    sign = 1
    for i in range(len(verts)):
        for j in range(len(verts) - 1 - i):
            if verts[j] > verts[j + 1]:
                verts[j], verts[j + 1] = verts[j + 1], verts[j]
                sign = -sign
    return tuple(verts), sign


def cycle_space_basis(complex_: SimplicialComplex, p: int, field_: FieldSpec | int | None = None) -> list[list]:
    """Basis of the kernel of the (reduced) boundary on p-chains, as entry lists."""
    f = _as_field(field_)
    red = Reducer(f.p, track=True)
    out = []
    for j, col in enumerate(boundary_columns(complex_, p, f.p)):
        independent, comb = red.add(col, tag=j)
        if not independent:
            out.append(column_entries(comb, f.p))
    return out


def homology_quotient(complex_: SimplicialComplex, p: int, field_: FieldSpec | int | None = None) -> Reducer:
    """Reducer preloaded with the image of the (p+1)-boundary, rows = p-faces."""
    f = _as_field(field_)
    red = Reducer(f.p)
    if p + 1 <= complex_.dim_cap:
        for col in boundary_columns(complex_, p + 1, f.p):
            red.add(col)
    return red


def induced_image_dim(sub: SimplicialComplex, super_: SimplicialComplex, p: int,
                      field_: FieldSpec | int | None = None, vertex_map: Sequence[int] | None = None) -> int:
    """Dimension of the image of H_p(sub) -> H_p(super) under a vertex injection.

    ``vertex_map`` defaults to ``sub.vertex_map``; identity if neither is set.
    """
    f = _as_field(field_)
    if p > sub.dim_cap or p + 1 > super_.dim_cap:
        raise DimensionOutOfRange(f"need sub dim_cap >= {p} and super dim_cap >= {p + 1}")
    vmap = vertex_map if vertex_map is not None else sub.vertex_map
    if vmap is None:
        vmap = tuple(range(sub.n_vertices))
    vmap = [int(v) for v in vmap]
    if len(vmap) != sub.n_vertices or len(set(vmap)) != len(vmap):
        raise NotASubcomplex("vertex map must be an injection defined on every vertex of sub")
    if any(not 0 <= v < super_.n_vertices for v in vmap):
        raise NotASubcomplex("vertex map leaves the vertex set of super")
    super_index = super_.face_index(p)
    mapped_faces = []
    for face in sub.faces[p]:
        image, sign = _oriented_face([vmap[v] for v in face])
        if image not in super_index:
            raise NotASubcomplex(f"face {face} maps to {image}, which is not in super")
        mapped_faces.append((super_index[image], sign))
    quotient = homology_quotient(super_, p, f)
    rank = 0
    for cycle in cycle_space_basis(sub, p, f):
        col = make_column(((mapped_faces[j][0], c * mapped_faces[j][1]) for j, c in cycle), f.p)
        independent, _ = quotient.add(col)
        rank += independent
    return rank
