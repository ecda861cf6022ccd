"""Transport: trucks with capacities carry packages over a weighted road graph.

A state is ``transport(Trucks, Packages)``.  ``Trucks`` is a sorted list of
``[Loc, Dests, Cap]`` where ``Dests`` is the sorted list of destinations of
the packages on board; ``Packages`` is the sorted list of ``(Loc, Dest)``
pairs still waiting.  Names of trucks and packages are never stored, so
states that differ only by such names coincide.
"""

from __future__ import annotations

from bisect import insort

from ..domain import INF, Action, Domain, ForeignStateError, Successor, SuccessorSet
from ..graph import DistTable, RoadGraph, all_pairs_shortest
from ..terms import TermError, TermId, TermStore

TAG = "transport"


def _remove_one(seq: tuple, item) -> tuple:
    i = seq.index(item)
    return seq[:i] + seq[i + 1:]


def _insert(seq: tuple, item) -> tuple:
    out = list(seq)
    insort(out, item)
    return tuple(out)


class TransportDomain(Domain):
    name = "transport"

    def __init__(self, roads: RoadGraph, store: TermStore | None = None,
                 dist: DistTable | None = None, knowledge: bool = True):
        super().__init__(store)
        self.roads = roads
        self.adj = {k: sorted(v) for k, v in roads.out_arcs().items()}
        self.dist = dist if dist is not None else all_pairs_shortest(roads)
        # knowledge=False drops the committed unload-at-destination rule
        self.knowledge = knowledge
        self._views: dict[TermId, tuple] = {}
        self._ids: dict[tuple, TermId] = {}
        self._h: dict[TermId, float] = {}

    # encoding ---------------------------------------------------------------

    def encode(self, trucks, packages) -> TermId:
        trucks = tuple(sorted((loc, tuple(sorted(d)), cap) for loc, d, cap in trucks))
        packages = tuple(sorted(tuple(p) for p in packages))
        key = (trucks, packages)
        tid = self._ids.get(key)
        if tid is None:
            store, part = self.store, self.part
            tl = store.list([part(t, [t[0], list(t[1]), t[2]]) for t in trucks])
            pl = store.list([part(p) for p in packages])
            tid = self._ids[key] = store.tuple(TAG, (tl, pl))
            self._views.setdefault(tid, key)
        return tid

    def view(self, state: TermId) -> tuple:
        v = self._views.get(state)
        if v is not None:
            return v
        try:
            tl, pl = self.store.tuple_args(state, TAG)
            lit = (self.store.decode(tl), self.store.decode(pl))
            trucks = tuple((loc, tuple(d), cap) for loc, d, cap in lit[0])
            packages = tuple(tuple(p) for p in lit[1])
        except (TermError, TypeError, ValueError, IndexError) as exc:
            raise ForeignStateError() from exc
        self._views[state] = v = (trucks, packages)
        return v

    # domain interface -------------------------------------------------------

    def is_final(self, state: TermId) -> bool:
        trucks, packages = self.view(state)
        return not packages and all(not d for _, d, _ in trucks)

    def successors(self, state: TermId) -> SuccessorSet:
        trucks, packages = self.view(state)
        out: list[Successor] = []
        seen = set()

        def emit(new_trucks, new_packages, action, cost):
            nxt = self.encode(new_trucks, new_packages)
            key = (nxt, action)
            if key not in seen:
                seen.add(key)
                out.append(Successor(nxt, action, cost))

        # a truck standing at a destination of its cargo unloads, committed
        if self.knowledge:
            for i, (loc, dests, cap) in enumerate(trucks):
                if loc in dests:
                    rest = trucks[:i] + trucks[i + 1:]
                    emit(rest + ((loc, _remove_one(dests, loc), cap),), packages,
                         Action("unload", (loc,)), 1)
                    return SuccessorSet(out, committed=True)

        for i, (loc, dests, cap) in enumerate(trucks):
            rest = trucks[:i] + trucks[i + 1:]
            for dest in sorted(set(dests)):
                new_truck = (loc, _remove_one(dests, dest), cap)
                if dest == loc:
                    emit(rest + (new_truck,), packages, Action("unload", (loc,)), 1)
                else:
                    emit(rest + (new_truck,), _insert(packages, (loc, dest)),
                         Action("unload", (loc,)), 1)

        for i, (loc, dests, cap) in enumerate(trucks):
            if len(dests) >= cap:
                continue
            rest = trucks[:i] + trucks[i + 1:]
            for pkg in sorted(set(packages)):
                if pkg[0] == loc:
                    emit(rest + ((loc, _insert(dests, pkg[1]), cap),),
                         _remove_one(packages, pkg), Action("load", (loc,)), 1)

        for i, (loc, dests, cap) in enumerate(trucks):
            rest = trucks[:i] + trucks[i + 1:]
            for nxt_loc, length in self.adj.get(loc, ()):
                emit(rest + ((nxt_loc, dests, cap),), packages,
                     Action("move", (loc, nxt_loc)), length)
        return SuccessorSet(out)

    def heuristic(self, state: TermId) -> float:
        h = self._h.get(state)
        if h is None:
            trucks, packages = self.view(state)
            h = self._h[state] = estimate(trucks, packages, self.dist)
        return h

    def check_state(self, state: TermId) -> None:
        trucks, packages = self.view(state)
        assert list(trucks) == sorted(trucks), "trucks not sorted"
        assert list(packages) == sorted(packages), "packages not sorted"
        for loc, dests, cap in trucks:
            assert list(dests) == sorted(dests), "dests not sorted"
            assert len(dests) <= cap, "truck over capacity"


def estimate(trucks, packages, dist: DistTable) -> float:
    """Lower bound on the remaining cost.

    The travel part is the largest, over all packages (loaded ones counted
    from the location of the truck carrying them), of the cheapest way for
    any truck to reach the package and then its destination.  Loaded
    packages add 1 (unload) and waiting ones 2 (load and unload).
    """
    truck_locs = [loc for loc, _, _ in trucks]
    loaded = [(loc, d) for loc, dests, _ in trucks for d in dests]
    travel = 0
    for ploc, pdest in loaded + list(packages):
        leg = dist(ploc, pdest)
        c = min((dist(t, ploc) + leg for t in truck_locs), default=INF)
        if c > travel:
            travel = c
    return travel + len(loaded) + 2 * len(packages)
