"""A domain given as an explicit weighted digraph; handy for small worked examples."""

from __future__ import annotations

import random
from collections import defaultdict

from ..domain import Action, Domain, ForeignStateError, Successor, SuccessorSet
from ..terms import TermStore


class GraphDomain(Domain):
    """Nodes are atoms, edges are tried in the order given, actions are ``move(u,v)``."""

    name = "graph"

    def __init__(self, edges, finals, heuristic: dict | None = None,
                 store: TermStore | None = None):
        super().__init__(store)
        self.out = defaultdict(list)
        for u, v, cost in edges:
            if cost < 0:
                raise ValueError("edge costs must be non-negative")
            self.out[str(u)].append((str(v), cost))
        self.finals = {str(f) for f in finals}
        self.h = {str(k): v for k, v in (heuristic or {}).items()}

    def node(self, name) -> int:
        return self.store.atom(str(name))

    def name_of(self, state) -> str:
        try:
            return self.store.scalar(state)
        except Exception as exc:
            raise ForeignStateError() from exc

    def is_final(self, state) -> bool:
        return self.name_of(state) in self.finals

    def successors(self, state) -> SuccessorSet:
        u = self.name_of(state)
        return SuccessorSet([Successor(self.store.atom(v), Action("move", (u, v)), c)
                             for v, c in self.out.get(u, ())])

    def heuristic(self, state) -> float:
        return self.h.get(self.name_of(state), 0)


def desk_dag(store: TermStore | None = None) -> GraphDomain:
    """Four nodes, two routes from a to d: via b (cost 8) and direct via c (cost 5)."""
    edges = [("a", "b", 4), ("a", "c", 3), ("b", "c", 2), ("c", "d", 2)]
    return GraphDomain(edges, ["d"], store=store)


def layered_dag(depth: int, width: int, rng: random.Random, max_cost: int = 3,
                fanout: int = 3, store: TermStore | None = None) -> GraphDomain:
    """Random layered DAG: ``s`` -> ``depth`` layers of ``width`` nodes -> ``t``."""
    edges = []
    layers = [["s"]] + [[f"n{d}_{i}" for i in range(width)] for d in range(depth)] + [["t"]]
    for a, b in zip(layers, layers[1:]):
        for u in a:
            for v in rng.sample(b, min(fanout, len(b))):
                edges.append((u, v, rng.randint(1, max_cost)))
    return GraphDomain(edges, ["t"], store=store)
