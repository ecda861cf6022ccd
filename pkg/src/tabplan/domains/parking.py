"""Parking: rearrange double-parked cars along a street of curbs.

A state is ``parking(Config, Goal)``.  Both are ``config(B1, ..., Bn)`` where
each ``Bi`` lists at most two cars, road-side car first, so the clear car of
a curb is always the head of its list.  Carrying the goal inside the state
makes the final test a single id comparison.
"""

from __future__ import annotations

from ..domain import Action, Domain, ForeignStateError, Successor, SuccessorSet
from ..terms import TermError, TermId, TermStore

TAG = "parking"


class ParkingDomain(Domain):
    name = "parking"

    def __init__(self, store: TermStore | None = None, knowledge: bool = True):
        super().__init__(store)
        # knowledge=False keeps only the plain move rule
        self.knowledge = knowledge
        self._views: dict[TermId, tuple] = {}
        self._ids: dict[tuple, TermId] = {}
        self._h: dict[TermId, int] = {}

    def encode(self, config, goal) -> TermId:
        config = tuple(map(tuple, config))
        goal = tuple(map(tuple, goal))
        key = (config, goal)
        tid = self._ids.get(key)
        if tid is None:
            store, part = self.store, self.part
            tid = store.tuple(TAG, (store.tuple("config", [part(c, list(c)) for c in config]),
                                    store.tuple("config", [part(c, list(c)) for c in goal])))
            self._ids[key] = tid
            self._views.setdefault(tid, key)
        return tid

    def view(self, state: TermId) -> tuple:
        v = self._views.get(state)
        if v is None:
            try:
                cfg, goal = self.store.tuple_args(state, TAG)
                v = tuple(tuple(tuple(self.store.decode(b)) for b in self.store.tuple_args(x, "config"))
                          for x in (cfg, goal))
            except (TermError, TypeError, ValueError) as exc:
                raise ForeignStateError() from exc
            self._views[state] = v
        return v

    def is_final(self, state: TermId) -> bool:
        try:
            cfg, goal = self.store.tuple_args(state, TAG)
        except (TermError, IndexError) as exc:
            raise ForeignStateError() from exc
        return cfg == goal

    @staticmethod
    def in_final_spot(config, goal, i: int) -> bool:
        """Whether the clear car of curb ``i`` already sits where it must end."""
        curb = config[i]
        if len(curb) == 1:
            return bool(goal[i]) and goal[i][-1] == curb[0]
        return goal[i] == curb

    @staticmethod
    def lands_in_final_spot(car, config, goal, j: int) -> bool:
        target = config[j]
        if not target:
            return bool(goal[j]) and goal[j][-1] == car
        # road-side spot: only final if the curb-side car is already correct
        return goal[j] == (car,) + target

    def successors(self, state: TermId) -> SuccessorSet:
        config, goal = self.view(state)
        n = len(config)

        def moved(i, j):
            new = list(config)
            new[j] = (config[i][0],) + config[j]
            new[i] = config[i][1:]
            return Successor(self.encode(new, goal), Action("move", (i, j)), 1)

        if self.knowledge:
            for i in range(n):
                if not config[i] or self.in_final_spot(config, goal, i):
                    continue
                car = config[i][0]
                for j in range(n):
                    if j != i and len(config[j]) < 2 and self.lands_in_final_spot(car, config, goal, j):
                        return SuccessorSet([moved(i, j)], committed=True)

        out = []
        for i in range(n):
            if not config[i]:
                continue
            if self.knowledge and self.in_final_spot(config, goal, i):
                continue
            for j in range(n):
                if j != i and len(config[j]) < 2:
                    out.append(moved(i, j))
        return SuccessorSet(out)

    def heuristic(self, state: TermId) -> int:
        h = self._h.get(state)
        if h is None:
            config, goal = self.view(state)
            h = self._h[state] = curb_estimate(config, goal)
        return h

    def check_state(self, state: TermId) -> None:
        config, goal = self.view(state)
        assert len(config) == len(goal)
        assert all(len(c) <= 2 for c in config), "triple parked"
        cars = sorted(c for b in config for c in b)
        assert cars == sorted(c for b in goal for c in b), "car multiset changed"
        assert len(set(cars)) == len(cars), "duplicate car"


def curb_estimate(config, goal) -> int:
    total = 0
    for i, cur in enumerate(config):
        g = goal[i]
        if len(cur) == 2 and len(g) == 2:
            a, b = cur
            if g == (b, a):
                total += 4
                continue
            if (g[1] == a and g[0] not in (a, b)) or (g[0] == b and g[1] not in (a, b)):
                total += 3
                continue
        total += _misplaced(cur, g)
    return total


def _misplaced(cur: tuple, g: tuple) -> int:
    if not cur:
        return 0
    curb_ok = bool(g) and g[-1] == cur[-1]
    n = 0 if curb_ok else 1
    if len(cur) == 2:
        n += 0 if (curb_ok and g == cur) else 1
    return n
