from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import UnknownVertex


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n_vertices-1``.

    Edges are stored as ``(u, v)`` pairs with ``u < v``.
    """

    n_vertices: int
    edges: frozenset

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise UnknownVertex(f"edge ({u}, {v}) outside 0..{n_vertices - 1}")
            norm.add((u, v) if u < v else (v, u))
        return cls(n_vertices, frozenset(norm))

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n_vertices
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph, relabelled in increasing parent order.

        Returns the subgraph and the map from new to parent indices.
        """
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n_vertices:
                raise UnknownVertex(f"vertex {v} not in graph of {self.n_vertices} vertices")
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges), tuple(keep)

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest vertex."""
        seen = [False] * self.n_vertices
        comps = []
        for s in range(self.n_vertices):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.neighbors[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps
