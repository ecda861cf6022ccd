"""Tetris: slide squares, two-cell rectangles and L pieces into a target region.

A state is ``tetris(Squares, Rects, Ls)``, each a sorted list.  Cells are
``(Row, Col)`` pairs.  ``rect(C1, C2)`` is ordered: it moves by rolling to
``rect(C2, C3)`` for a free ``C3`` next to ``C2``, which covers both sliding
and turning, so ``rect(C1, C2)`` and ``rect(C2, C1)`` are different pieces.
L pieces keep their shape and translate by one cell.  Every move costs 1
unless a per-piece cost table is given (e.g. ``{"square": 1, "rect": 2,
"ell": 3}``, the size-proportional table of the competition encoding).
"""

from __future__ import annotations

from ..domain import INF, Action, Domain, ForeignStateError, Successor, SuccessorSet
from ..graph import grid_distances, grid_neighbors
from ..terms import Struct, TermError, TermId, TermStore

TAG = "tetris"
DIRECTIONS = ((-1, 0), (1, 0), (0, -1), (0, 1))
PIECE_KINDS = ("square", "rect", "ell")
UNIT_COSTS = {"square": 1, "rect": 1, "ell": 1}
SIZE_COSTS = {"square": 1, "rect": 2, "ell": 3}


def cell_name(cell) -> str:
    return f"f{cell[0]}_{cell[1]}f"


def piece_name(kind: str, cells) -> str:
    if kind == "square":
        return cell_name(cells[0])
    return f"{kind}({','.join(cell_name(c) for c in cells)})"


def is_ell(c1, c2, c3) -> bool:
    """The one L orientation pieces come in: down from c1, then right."""
    return c2 == (c1[0] + 1, c1[1]) and c3 == (c2[0], c2[1] + 1)


class TetrisDomain(Domain):
    name = "tetris"

    def __init__(self, rows: int, cols: int, goal_clear, store: TermStore | None = None,
                 costs: dict | None = None):
        super().__init__(store)
        self.costs = dict(UNIT_COSTS)
        self.costs.update(costs or {})
        self.rows, self.cols = rows, cols
        self.goal_clear = frozenset(goal_clear)
        self.allowed = frozenset((r, c) for r in range(rows) for c in range(cols)
                                 if (r, c) not in self.goal_clear)
        if not self.allowed:
            raise ValueError("target region is empty")
        self.dfield = grid_distances(rows, cols, self.allowed)
        self._views: dict[TermId, tuple] = {}
        self._ids: dict[tuple, TermId] = {}
        self._h: dict[TermId, float] = {}

    def encode(self, squares, rects, ells) -> TermId:
        squares = tuple(sorted(squares))
        rects = tuple(sorted(rects))
        ells = tuple(sorted(ells))
        key = (squares, rects, ells)
        tid = self._ids.get(key)
        if tid is None:
            store, part = self.store, self.part
            tid = store.tuple(TAG, (store.list([part(c) for c in squares]),
                                    store.list([part(("rect", r), Struct("rect", r)) for r in rects]),
                                    store.list([part(("ell", e), Struct("ell", e)) for e in ells])))
            self._ids[key] = tid
            self._views.setdefault(tid, key)
        return tid

    def view(self, state: TermId) -> tuple:
        v = self._views.get(state)
        if v is None:
            try:
                sq, rc, el = (self.store.decode(x) for x in self.store.tuple_args(state, TAG))
                v = (tuple(sq), tuple(tuple(r.args) for r in rc), tuple(tuple(e.args) for e in el))
            except (TermError, TypeError, ValueError, AttributeError) as exc:
                raise ForeignStateError() from exc
            self._views[state] = v
        return v

    def pieces(self, state: TermId):
        squares, rects, ells = self.view(state)
        for s in squares:
            yield (s,)
        yield from rects
        yield from ells

    def is_final(self, state: TermId) -> bool:
        allowed = self.allowed
        return all(c in allowed for p in self.pieces(state) for c in p)

    def _in_grid(self, cell) -> bool:
        return 0 <= cell[0] < self.rows and 0 <= cell[1] < self.cols

    def successors(self, state: TermId) -> SuccessorSet:
        squares, rects, ells = self.view(state)
        occupied = set(squares)
        for p in rects + ells:
            occupied.update(p)
        rows, cols = self.rows, self.cols
        out = []

        cost = self.costs

        def emit(sq, rc, el, action, kind):
            out.append(Successor(self.encode(sq, rc, el), action, cost[kind]))

        for i, s in enumerate(squares):
            if i and squares[i - 1] == s:
                continue
            rest = squares[:i] + squares[i + 1:]
            for n in grid_neighbors(s, rows, cols):
                if n not in occupied:
                    emit(rest + (n,), rects, ells,
                         Action("move", (cell_name(s), cell_name(n))), "square")

        for i, (c1, c2) in enumerate(rects):
            rest = rects[:i] + rects[i + 1:]
            for c3 in grid_neighbors(c2, rows, cols):
                if c3 not in occupied:
                    emit(squares, rest + ((c2, c3),), ells,
                         Action("move", (piece_name("rect", (c1, c2)), piece_name("rect", (c2, c3)))), "rect")

        for i, ell in enumerate(ells):
            rest = ells[:i] + ells[i + 1:]
            own = set(ell)
            for dr, dc in DIRECTIONS:
                moved = tuple((r + dr, c + dc) for r, c in ell)
                if all(self._in_grid(c) and (c in own or c not in occupied) for c in moved):
                    emit(squares, rects, rest + (moved,),
                         Action("move", (piece_name("ell", ell), piece_name("ell", moved))), "ell")
        return SuccessorSet(out)

    def heuristic(self, state: TermId) -> float:
        h = self._h.get(state)
        if h is None:
            squares, rects, ells = self.view(state)
            c, d = self.costs, self.dfield
            h = (c["square"] * piece_estimate(((s,) for s in squares), d)
                 + c["rect"] * piece_estimate(rects, d)
                 + c["ell"] * piece_estimate(ells, d))
            self._h[state] = h
        return h

    def check_state(self, state: TermId) -> None:
        squares, rects, ells = self.view(state)
        assert list(squares) == sorted(squares)
        assert list(rects) == sorted(rects)
        assert list(ells) == sorted(ells)
        cells = [c for p in self.pieces(state) for c in p]
        assert len(cells) == len(set(cells)), "pieces overlap"
        assert all(self._in_grid(c) for c in cells), "piece off the board"
        for c1, c2 in rects:
            assert abs(c1[0] - c2[0]) + abs(c1[1] - c2[1]) == 1, "rect cells not adjacent"
        for e in ells:
            assert is_ell(*e), "bad L shape"


def piece_estimate(pieces, dfield) -> float:
    """Sum over pieces of the distance from the piece's closest cell to the target."""
    return sum(min(dfield.get(c, INF) for c in p) for p in pieces)
