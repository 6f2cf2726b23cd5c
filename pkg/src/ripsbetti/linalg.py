"""Sparse column reduction over prime fields.

Columns over GF(2) are Python ints used as bitsets (bit ``r`` set iff row ``r``
is nonzero); XOR on ints is the fastest sparse-ish kernel available in pure
Python. Columns over GF(p), p odd, are ``{row: coeff}`` dicts with coefficients
in ``1..p-1``. In both cases the pivot of a column is its largest row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class SparseColumnMatrix:
    n_rows: int
    n_cols: int
    columns: tuple[tuple[tuple[int, int], ...], ...]
    p: int = 2

    def to_dense(self):
        import numpy as np

        out = np.zeros((self.n_rows, self.n_cols), dtype=np.int64)
        for j, col in enumerate(self.columns):
            for r, c in col:
                out[r, j] = c
        return out


def make_column(entries: Iterable[tuple[int, int]], p: int):
    """Build a column from ``(row, coeff)`` pairs; duplicate rows are summed."""
    if p == 2:
        col = 0
        for r, c in entries:
            if c % 2:
                col ^= 1 << r
        return col
    col: dict[int, int] = {}
    for r, c in entries:
        v = (col.get(r, 0) + c) % p
        if v:
            col[r] = v
        else:
            col.pop(r, None)
    return col


def column_entries(col, p: int) -> list[tuple[int, int]]:
    if p == 2:
        out = []
        while col:
            low = col & -col
            out.append((low.bit_length() - 1, 1))
            col ^= low
        return out
    return sorted(col.items())


def _pivot(col, p: int) -> int:
    if p == 2:
        return col.bit_length() - 1
    return max(col)


class Reducer:
    """Incremental lowest-one (here: largest-row) column reduction.

    ``add`` reduces a column against the stored pivots; a column that does not
    vanish becomes a new pivot column. With ``track=True`` every column carries
    the combination of inserted columns (by insertion tag) that produced it, so
    vanishing columns yield kernel vectors.
    """

    def __init__(self, p: int = 2, track: bool = False):
        self.p = p
        self.track = track
        self.pivots: dict[int, tuple] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, col, comb):
        p = self.p
        pivots = self.pivots
        if p == 2:
            while col:
                entry = pivots.get(col.bit_length() - 1)
                if entry is None:
                    break
                col ^= entry[0]
                if comb is not None:
                    comb ^= entry[1]
            return col, comb
        col = dict(col)
        comb = dict(comb) if comb is not None else None
        while col:
            piv = max(col)
            entry = pivots.get(piv)
            if entry is None:
                break
            pcol, pcomb = entry
            c = col[piv]
            for r, v in pcol.items():
                nv = (col.get(r, 0) - c * v) % p
                if nv:
                    col[r] = nv
                else:
                    del col[r]
            if comb is not None:
                for r, v in pcomb.items():
                    nv = (comb.get(r, 0) - c * v) % p
                    if nv:
                        comb[r] = nv
                    else:
                        del comb[r]
        return col, comb

    def reduce(self, col):
        return self._reduce(col, None)[0]

    def contains(self, col) -> bool:
        return not self.reduce(col)

    def add(self, col, tag: int | None = None):
        """Insert a column. Returns ``(independent, combination)``.

        ``combination`` is only meaningful with ``track=True``: when the column
        vanished, it expresses a kernel element in terms of insertion tags.
        """
        comb = None
        if self.track:
            if tag is None:
                raise ValueError("tracked reducers need a tag per column")
            comb = (1 << tag) if self.p == 2 else {tag: 1}
        col, comb = self._reduce(col, comb)
        if not col:
            return False, comb
        piv = _pivot(col, self.p)
        if self.p != 2:
            inv = pow(col[piv], -1, self.p)
            if inv != 1:
                col = {r: v * inv % self.p for r, v in col.items()}
                if comb is not None:
                    comb = {r: v * inv % self.p for r, v in comb.items()}
        self.pivots[piv] = (col, comb)
        return True, comb


def rank_of_columns(columns: Sequence, p: int) -> int:
    red = Reducer(p)
    for col in columns:
        red.add(col)
    return red.rank
