"""Shortest-path precomputation for domain heuristics.

Unreachable pairs are reported as ``UNREACHABLE`` (positive infinity), which
is not an integer and keeps any sum it enters infinite.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

UNREACHABLE = math.inf


@dataclass
class RoadGraph:
    arcs: list[tuple[Hashable, Hashable, int]] = field(default_factory=list)
    extra_nodes: set = field(default_factory=set)

    def __post_init__(self):
        for a, b, w in self.arcs:
            if w <= 0:
                raise ValueError(f"arc {a}->{b} has non-positive length {w}")

    @property
    def nodes(self) -> set:
        ns = set(self.extra_nodes)
        for a, b, _ in self.arcs:
            ns.add(a)
            ns.add(b)
        return ns

    def out_arcs(self) -> dict:
        adj = defaultdict(list)
        for a, b, w in self.arcs:
            adj[a].append((b, w))
        return adj


class DistTable:
    """Immutable all-pairs distance table."""

    def __init__(self, dist: Mapping[tuple, int]):
        self._dist = dict(dist)

    def __call__(self, a, b):
        return self._dist.get((a, b), UNREACHABLE)

    def items(self):
        return self._dist.items()


def all_pairs_shortest(g: RoadGraph) -> DistTable:
    """Exact shortest directed distances, by Dijkstra from every node."""
    adj = g.out_arcs()
    dist = {}
    for src in g.nodes:
        best = {src: 0}
        heap = [(0, 0, src)]
        tie = 0
        while heap:
            d, _, u = heapq.heappop(heap)
            if d > best[u]:
                continue
            for v, w in adj.get(u, ()):
                nd = d + w
                if nd < best.get(v, UNREACHABLE):
                    best[v] = nd
                    tie += 1
                    heapq.heappush(heap, (nd, tie, v))
        for v, d in best.items():
            dist[src, v] = d
    return DistTable(dist)


def grid_cells(rows: int, cols: int) -> list[tuple[int, int]]:
    return [(r, c) for r in range(rows) for c in range(cols)]


def grid_neighbors(cell, rows: int, cols: int):
    r, c = cell
    for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
        if 0 <= nr < rows and 0 <= nc < cols:
            yield (nr, nc)


def grid_distances(rows: int, cols: int, targets: Iterable, blocked: Iterable = ()) -> dict:
    """Multi-source 4-neighbour BFS distance from every cell to ``targets``.

    Pieces on the board are ignored; ``blocked`` cells (holes in the board)
    are not traversable.  Cells that cannot reach a target map to
    ``UNREACHABLE``.
    """
    targets = set(targets)
    if not targets:
        raise ValueError("targets must be nonempty")
    blocked = set(blocked)
    dist = {cell: UNREACHABLE for cell in grid_cells(rows, cols) if cell not in blocked}
    queue = deque()
    for t in targets:
        if t in dist:
            dist[t] = 0
            queue.append(t)
    while queue:
        u = queue.popleft()
        for v in grid_neighbors(u, rows, cols):
            if v in dist and dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist
