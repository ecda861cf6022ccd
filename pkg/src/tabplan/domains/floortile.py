"""Floortile: robots paint a grid pattern, never standing on painted tiles.

A state is ``floortile(Robots, WTiles, BTiles)``: a sorted list of
``(Color, Cell)`` robots and the sorted lists of cells painted white and
black.  Cells are ``(Row, Col)``; "up" is the next row (``Row + 1``).

Only goal tiles are ever painted, always in their goal color.  Changing the
spray color is folded into the paint action that needs it.
"""

from __future__ import annotations

from ..domain import Action, Domain, ForeignStateError, Successor, SuccessorSet
from ..terms import TermError, TermId, TermStore

TAG = "floortile"
WHITE, BLACK = "white", "black"
COLORS = (WHITE, BLACK)
MOVES = (("up", 1, 0), ("down", -1, 0), ("left", 0, -1), ("right", 0, 1))
DEFAULT_COSTS = {
    "up": 1, "down": 1, "left": 1, "right": 1,
    "paint_up": 1, "paint_down": 1, "change_color": 1,
}


def tile_name(cell) -> str:
    return f"t{cell[0]}_{cell[1]}"


class FloortileDomain(Domain):
    name = "floortile"

    def __init__(self, rows: int, cols: int, goals: dict, store: TermStore | None = None,
                 costs: dict | None = None, knowledge: bool = True):
        super().__init__(store)
        self.rows, self.cols = rows, cols
        self.goals = dict(goals)
        for color in self.goals.values():
            if color not in COLORS:
                raise ValueError(f"unknown color {color!r}")
        self.costs = dict(DEFAULT_COSTS)
        self.costs.update(costs or {})
        # knowledge=False drops the committed paint rules and the color macro
        self.knowledge = knowledge
        self._views: dict[TermId, tuple] = {}
        self._ids: dict[tuple, TermId] = {}

    def encode(self, robots, wtiles, btiles) -> TermId:
        robots = tuple(sorted(robots))
        wtiles = tuple(sorted(wtiles))
        btiles = tuple(sorted(btiles))
        key = (robots, wtiles, btiles)
        tid = self._ids.get(key)
        if tid is None:
            store, part = self.store, self.part
            tid = store.tuple(TAG, (store.list([part(r) for r in robots]),
                                    store.list([part(c) for c in wtiles]),
                                    store.list([part(c) for c in btiles])))
            self._ids[key] = tid
            self._views.setdefault(tid, key)
        return tid

    def view(self, state: TermId) -> tuple:
        v = self._views.get(state)
        if v is None:
            try:
                rb, wt, bt = (self.store.decode(x) for x in self.store.tuple_args(state, TAG))
                v = (tuple((c, tuple(loc)) for c, loc in rb), tuple(map(tuple, wt)), tuple(map(tuple, bt)))
            except (TermError, TypeError, ValueError) as exc:
                raise ForeignStateError() from exc
            self._views[state] = v
        return v

    def is_final(self, state: TermId) -> bool:
        _, wtiles, btiles = self.view(state)
        return len(wtiles) + len(btiles) == len(self.goals)

    def _in_grid(self, cell) -> bool:
        return 0 <= cell[0] < self.rows and 0 <= cell[1] < self.cols

    def successors(self, state: TermId) -> SuccessorSet:
        robots, wtiles, btiles = self.view(state)
        painted = set(wtiles) | set(btiles)
        occupied = {loc for _, loc in robots}
        goals, costs = self.goals, self.costs

        def paintable(cell):
            return cell in goals and cell not in painted and cell not in occupied

        def paint(i, direction, target, out):
            held, loc = robots[i]
            color = goals[target]
            rest = robots[:i] + robots[i + 1:]
            name = f"paint_{direction}"
            w, b = (wtiles + (target,), btiles) if color == WHITE else (wtiles, btiles + (target,))
            if held == color:
                out.append(Successor(self.encode(rest + ((held, loc),), w, b),
                                     Action(name, (tile_name(loc), tile_name(target), color)),
                                     costs[name]))
            elif self.knowledge:
                out.append(Successor(self.encode(rest + ((color, loc),), w, b),
                                     Action(f"change_{name}", (tile_name(loc), tile_name(target), color)),
                                     costs["change_color"] + costs[name]))

        if self.knowledge:
            # a tile whose far neighbour is already painted can only be painted from here
            for direction, dr in (("up", 1), ("down", -1)):
                for i, (_, loc) in enumerate(robots):
                    target = (loc[0] + dr, loc[1])
                    beyond = (loc[0] + 2 * dr, loc[1])
                    if paintable(target) and beyond in painted:
                        out: list[Successor] = []
                        paint(i, direction, target, out)
                        return SuccessorSet(out, committed=True)

        out = []
        for direction, dr in (("up", 1), ("down", -1)):
            for i, (_, loc) in enumerate(robots):
                target = (loc[0] + dr, loc[1])
                if paintable(target):
                    paint(i, direction, target, out)

        if not self.knowledge:
            for i, (held, loc) in enumerate(robots):
                other = BLACK if held == WHITE else WHITE
                rest = robots[:i] + robots[i + 1:]
                out.append(Successor(self.encode(rest + ((other, loc),), wtiles, btiles),
                                     Action("change_color", (tile_name(loc), other)),
                                     costs["change_color"]))

        for i, (held, loc) in enumerate(robots):
            rest = robots[:i] + robots[i + 1:]
            for name, dr, dc in MOVES:
                nxt = (loc[0] + dr, loc[1] + dc)
                if self._in_grid(nxt) and nxt not in painted and nxt not in occupied:
                    out.append(Successor(self.encode(rest + ((held, nxt),), wtiles, btiles),
                                         Action(name, (tile_name(loc), tile_name(nxt))),
                                         costs[name]))
        return SuccessorSet(out)

    def check_state(self, state: TermId) -> None:
        robots, wtiles, btiles = self.view(state)
        assert list(robots) == sorted(robots)
        assert list(wtiles) == sorted(wtiles) and list(btiles) == sorted(btiles)
        painted = set(wtiles) | set(btiles)
        assert not set(wtiles) & set(btiles), "tile painted twice"
        assert all(loc not in painted for _, loc in robots), "robot on a painted tile"
        locs = [loc for _, loc in robots]
        assert len(locs) == len(set(locs)), "robots share a tile"
        assert all(self.goals.get(c) == WHITE for c in wtiles)
        assert all(self.goals.get(c) == BLACK for c in btiles)
