"""Instance files and plan output.

Instance files are line based.  ``#`` starts a comment, the first real line
is ``domain: <tag>`` and the rest are facts for that domain::

    transport   road <from> <to> <len> | truck <loc> <cap> | package <loc> <dest>
    parking     curbs <n> | curb <i> <curbside> [<roadside>] | goal <i> <curbside> [<roadside>]
    tetris      rows <r> | cols <c> | goal-clear <r> <c> | square <r> <c>
                | rect <r1> <c1> <r2> <c2> | ell <r1> <c1> <r2> <c2> <r3> <c3>
                | cost <square|rect|ell> <int>
    floortile   rows <r> | cols <c> | robot <color> <r> <c> | goal <color> <r> <c>
                | cost <action> <int>
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .domain import Domain, Plan
from .domains.floortile import COLORS, DEFAULT_COSTS, FloortileDomain
from .domains.parking import ParkingDomain
from .domains.tetris import PIECE_KINDS, TetrisDomain, is_ell
from .domains.transport import TransportDomain
from .graph import RoadGraph
from .terms import TermId, TermStore

DOMAIN_TAGS = ("transport", "parking", "tetris", "floortile")


class InstanceError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


@dataclass
class TransportFacts:
    roads: list = field(default_factory=list)
    trucks: list = field(default_factory=list)
    packages: list = field(default_factory=list)


@dataclass
class ParkingFacts:
    curbs: int = 0
    # curb index -> cars, curb-side car first as written in the file
    initial: dict = field(default_factory=dict)
    goal: dict = field(default_factory=dict)


@dataclass
class TetrisFacts:
    rows: int = 0
    cols: int = 0
    goal_clear: set = field(default_factory=set)
    squares: list = field(default_factory=list)
    rects: list = field(default_factory=list)
    ells: list = field(default_factory=list)
    costs: dict = field(default_factory=dict)


@dataclass
class FloortileFacts:
    rows: int = 0
    cols: int = 0
    robots: list = field(default_factory=list)
    goals: dict = field(default_factory=dict)
    costs: dict = field(default_factory=dict)


@dataclass
class Instance:
    domain_tag: str
    facts: object
    source: str | None = None


@dataclass
class Problem:
    domain: Domain
    init: TermId
    instance: Instance


def _ints(words, lineno, n):
    if len(words) != n:
        raise InstanceError(f"expected {n} numbers, got {len(words)}", lineno)
    try:
        return [int(w) for w in words]
    except ValueError:
        raise InstanceError(f"not an integer in {' '.join(words)!r}", lineno) from None


def _cells(words, lineno, n):
    v = _ints(words, lineno, 2 * n)
    return [(v[2 * i], v[2 * i + 1]) for i in range(n)]


def parse_instance(text: str, source: str | None = None) -> Instance:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise InstanceError("missing domain tag")
    lineno, first = lines[0]
    key, sep, tag = first.partition(":")
    if not sep or key.strip() != "domain":
        raise InstanceError("missing domain tag", lineno)
    tag = tag.strip()
    if tag not in DOMAIN_TAGS:
        raise InstanceError(f"unknown domain tag {tag!r}", lineno)
    parser = {"transport": _parse_transport, "parking": _parse_parking,
              "tetris": _parse_tetris, "floortile": _parse_floortile}[tag]
    return Instance(tag, parser(lines[1:]), source)


def read_instance(path) -> Instance:
    path = Path(path)
    return parse_instance(path.read_text(encoding="utf-8"), str(path))


def _parse_transport(lines) -> TransportFacts:
    f = TransportFacts()
    seen_roads = set()
    for lineno, line in lines:
        kw, *rest = line.split()
        if kw == "road":
            if len(rest) != 3:
                raise InstanceError("road needs <from> <to> <len>", lineno)
            (length,) = _ints(rest[2:], lineno, 1)
            if length <= 0:
                raise InstanceError("road length must be positive", lineno)
            if (rest[0], rest[1]) in seen_roads:
                raise InstanceError(f"duplicate road {rest[0]} {rest[1]}", lineno)
            seen_roads.add((rest[0], rest[1]))
            f.roads.append((rest[0], rest[1], length))
        elif kw == "truck":
            if len(rest) != 2:
                raise InstanceError("truck needs <loc> <cap>", lineno)
            (cap,) = _ints(rest[1:], lineno, 1)
            if cap < 1:
                raise InstanceError("truck capacity must be at least 1", lineno)
            f.trucks.append((rest[0], cap))
        elif kw == "package":
            if len(rest) != 2:
                raise InstanceError("package needs <loc> <dest>", lineno)
            f.packages.append((rest[0], rest[1]))
        else:
            raise InstanceError(f"unknown transport fact {kw!r}", lineno)
    return f


def _parse_parking(lines) -> ParkingFacts:
    f = ParkingFacts()
    curbs_line = None
    for lineno, line in lines:
        kw, *rest = line.split()
        if kw == "curbs":
            if curbs_line is not None:
                raise InstanceError("curbs declared twice", lineno)
            (f.curbs,) = _ints(rest, lineno, 1)
            curbs_line = lineno
        elif kw in ("curb", "goal"):
            if len(rest) not in (2, 3):
                raise InstanceError(f"{kw} needs <i> <curbside-car> [<roadside-car>]", lineno)
            (i,) = _ints(rest[:1], lineno, 1)
            table = f.initial if kw == "curb" else f.goal
            if i in table:
                raise InstanceError(f"{kw} {i} given twice", lineno)
            table[i] = (tuple(rest[1:]), lineno)
        else:
            raise InstanceError(f"unknown parking fact {kw!r}", lineno)
    if curbs_line is None:
        raise InstanceError("missing curbs <n>")
    for table in (f.initial, f.goal):
        for i, (_, lineno) in table.items():
            if not 0 <= i < f.curbs:
                raise InstanceError(f"curb index {i} out of range 0..{f.curbs - 1}", lineno)
    f.initial = {i: cars for i, (cars, _) in f.initial.items()}
    f.goal = {i: cars for i, (cars, _) in f.goal.items()}
    init_cars = Counter(c for cars in f.initial.values() for c in cars)
    goal_cars = Counter(c for cars in f.goal.values() for c in cars)
    if any(n > 1 for n in init_cars.values()) or any(n > 1 for n in goal_cars.values()):
        raise InstanceError("a car is parked twice")
    if init_cars != goal_cars:
        raise InstanceError("initial and goal cars differ")
    return f


def _parse_tetris(lines) -> TetrisFacts:
    f = TetrisFacts()
    pending = []
    for lineno, line in lines:
        kw, *rest = line.split()
        if kw == "rows":
            (f.rows,) = _ints(rest, lineno, 1)
        elif kw == "cols":
            (f.cols,) = _ints(rest, lineno, 1)
        elif kw in ("goal-clear", "square", "rect", "ell"):
            n = {"goal-clear": 1, "square": 1, "rect": 2, "ell": 3}[kw]
            pending.append((kw, _cells(rest, lineno, n), lineno))
        elif kw == "cost":
            if len(rest) != 2 or rest[0] not in PIECE_KINDS:
                raise InstanceError(f"cost needs a piece kind in {PIECE_KINDS} and an integer", lineno)
            (value,) = _ints(rest[1:], lineno, 1)
            if value < 0:
                raise InstanceError("costs must be non-negative", lineno)
            f.costs[rest[0]] = value
        else:
            raise InstanceError(f"unknown tetris fact {kw!r}", lineno)
    if f.rows <= 0 or f.cols <= 0:
        raise InstanceError("rows and cols must be positive")
    for kw, cells, lineno in pending:
        for r, c in cells:
            if not (0 <= r < f.rows and 0 <= c < f.cols):
                raise InstanceError(f"cell {r} {c} is off the board", lineno)
        if kw == "goal-clear":
            f.goal_clear.add(cells[0])
        elif kw == "square":
            f.squares.append(cells[0])
        elif kw == "rect":
            (r1, c1), (r2, c2) = cells
            if abs(r1 - r2) + abs(c1 - c2) != 1:
                raise InstanceError("rect cells must be adjacent", lineno)
            f.rects.append(tuple(cells))
        else:
            if not is_ell(*cells):
                raise InstanceError("ell cells must be (r,c) (r+1,c) (r+1,c+1)", lineno)
            f.ells.append(tuple(cells))
    return f


def _parse_floortile(lines) -> FloortileFacts:
    f = FloortileFacts()
    pending = []
    for lineno, line in lines:
        kw, *rest = line.split()
        if kw == "rows":
            (f.rows,) = _ints(rest, lineno, 1)
        elif kw == "cols":
            (f.cols,) = _ints(rest, lineno, 1)
        elif kw in ("robot", "goal"):
            if not rest or rest[0] not in COLORS:
                raise InstanceError(f"{kw} needs a color in {COLORS}", lineno)
            pending.append((kw, rest[0], tuple(_ints(rest[1:], lineno, 2)), lineno))
        elif kw == "cost":
            if len(rest) != 2 or rest[0] not in DEFAULT_COSTS:
                raise InstanceError(f"cost needs an action in {sorted(DEFAULT_COSTS)} and an integer", lineno)
            (value,) = _ints(rest[1:], lineno, 1)
            if value < 0:
                raise InstanceError("costs must be non-negative", lineno)
            f.costs[rest[0]] = value
        else:
            raise InstanceError(f"unknown floortile fact {kw!r}", lineno)
    if f.rows <= 0 or f.cols <= 0:
        raise InstanceError("rows and cols must be positive")
    for kw, color, cell, lineno in pending:
        if not (0 <= cell[0] < f.rows and 0 <= cell[1] < f.cols):
            raise InstanceError(f"cell {cell[0]} {cell[1]} is off the board", lineno)
        if kw == "robot":
            f.robots.append((color, cell))
        else:
            if cell in f.goals:
                raise InstanceError(f"tile {cell[0]} {cell[1]} has two goals", lineno)
            f.goals[cell] = color
    return f


def build_initial(inst: Instance, store: TermStore | None = None, knowledge: bool = True) -> Problem:
    """Build the domain and its canonical initial state.

    ``knowledge=False`` leaves out the committed rules and macros of the
    domains that have them, giving the plain action model.
    """
    store = store if store is not None else TermStore()
    f = inst.facts
    if inst.domain_tag == "transport":
        graph = RoadGraph(list(f.roads), extra_nodes={loc for loc, _ in f.trucks})
        domain = TransportDomain(graph, store, knowledge=knowledge)
        # packages already at their destination need nothing done
        packages = [p for p in f.packages if p[0] != p[1]]
        init = domain.encode([(loc, (), cap) for loc, cap in f.trucks], packages)
    elif inst.domain_tag == "parking":
        domain = ParkingDomain(store, knowledge=knowledge)
        # file order is curb-side first; states keep the road-side car first
        config = [tuple(reversed(f.initial.get(i, ()))) for i in range(f.curbs)]
        goal = [tuple(reversed(f.goal.get(i, ()))) for i in range(f.curbs)]
        init = domain.encode(config, goal)
    elif inst.domain_tag == "tetris":
        cells = [c for c in f.squares] + [c for p in f.rects + f.ells for c in p]
        dup = [c for c, n in Counter(cells).items() if n > 1]
        if dup:
            raise InstanceError(f"pieces overlap at {dup[0][0]} {dup[0][1]}")
        domain = TetrisDomain(f.rows, f.cols, f.goal_clear, store, costs=f.costs)
        init = domain.encode(f.squares, f.rects, f.ells)
    elif inst.domain_tag == "floortile":
        locs = [cell for _, cell in f.robots]
        if len(set(locs)) != len(locs):
            raise InstanceError("two robots on one tile")
        domain = FloortileDomain(f.rows, f.cols, f.goals, store, costs=f.costs, knowledge=knowledge)
        init = domain.encode(f.robots, (), ())
    else:
        raise InstanceError(f"unknown domain tag {inst.domain_tag!r}")
    return Problem(domain, init, inst)


def load_problem(path, store: TermStore | None = None, knowledge: bool = True) -> Problem:
    return build_initial(read_instance(path), store, knowledge)


def format_plan(plan: Plan) -> str:
    lines = [f"{i:>3}. {step}" for i, step in enumerate(plan.steps, 1)]
    if lines:
        lines.append("")
    lines.append(f"plan_cost = {plan.total_cost}")
    return "\n".join(lines) + "\n"
