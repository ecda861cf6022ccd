"""Random small instances, written in the instance file format.

Sizes are kept small enough that the reachable state space can be
enumerated, which is what the test oracles need.
"""

from __future__ import annotations

import random


def transport_text(rng: random.Random, nodes: int = 4, trucks: int = 2, packages: int = 3,
                   max_len: int = 20, max_cap: int = 2, chords: int = 1) -> str:
    """A two-way ring of ``nodes`` cities plus a few random one-way chords."""
    names = [f"c{i + 1}" for i in range(nodes)]
    roads = {}
    for i in range(nodes):
        a, b = names[i], names[(i + 1) % nodes]
        if a != b:
            length = rng.randint(1, max_len)
            roads[(a, b)] = length
            roads[(b, a)] = length
    for _ in range(chords):
        a, b = rng.sample(names, 2) if nodes > 1 else (names[0], names[0])
        if a != b:
            roads.setdefault((a, b), rng.randint(1, max_len))
    lines = ["domain: transport"]
    lines += [f"road {a} {b} {n}" for (a, b), n in roads.items()]
    lines += [f"truck {rng.choice(names)} {rng.randint(1, max_cap)}" for _ in range(trucks)]
    for _ in range(packages):
        src = rng.choice(names)
        dst = rng.choice([n for n in names if n != src] or names)
        lines.append(f"package {src} {dst}")
    return "\n".join(lines) + "\n"


def _park(rng: random.Random, cars: list, curbs: int) -> dict:
    slots = [i for i in range(curbs) for _ in range(2)]
    rng.shuffle(slots)
    table: dict[int, list] = {}
    for car, i in zip(cars, slots):
        table.setdefault(i, []).append(car)
    return table


def parking_text(rng: random.Random, curbs: int = 4, cars: int = 5) -> str:
    """At most ``2 * curbs - 2`` cars so there is always room to shuffle."""
    cars = min(cars, 2 * curbs - 2)
    names = [f"car{i}" for i in range(cars)]
    lines = ["domain: parking", f"curbs {curbs}"]
    for kw in ("curb", "goal"):
        for i, parked in sorted(_park(rng, names, curbs).items()):
            lines.append(f"{kw} {i} {' '.join(parked)}")
    return "\n".join(lines) + "\n"


def tetris_text(rng: random.Random, rows: int = 4, cols: int = 3, pieces: int = 3,
                clear_rows: int = 1) -> str:
    """Pieces dropped at random free spots; the top ``clear_rows`` rows must end up empty."""
    occupied: set = set()
    lines = ["domain: tetris", f"rows {rows}", f"cols {cols}"]
    lines += [f"goal-clear {r} {c}" for r in range(clear_rows) for c in range(cols)]
    for _ in range(pieces):
        for _attempt in range(50):
            kind = rng.choice(("square", "rect", "ell"))
            r, c = rng.randrange(rows), rng.randrange(cols)
            if kind == "square":
                cells = [(r, c)]
            elif kind == "rect":
                dr, dc = rng.choice(((0, 1), (1, 0), (0, -1), (-1, 0)))
                cells = [(r, c), (r + dr, c + dc)]
            else:
                cells = [(r, c), (r + 1, c), (r + 1, c + 1)]
            if all(0 <= a < rows and 0 <= b < cols and (a, b) not in occupied for a, b in cells):
                occupied.update(cells)
                lines.append(f"{kind} " + " ".join(f"{a} {b}" for a, b in cells))
                break
    return "\n".join(lines) + "\n"


def floortile_text(rng: random.Random, rows: int = 3, cols: int = 3, robots: int = 1,
                   goals: int = 4) -> str:
    """Goal tiles are drawn from the rows above the bottom one, as in the usual layouts."""
    cells = [(r, c) for r in range(rows) for c in range(cols)]
    upper = [cell for cell in cells if cell[0] > 0]
    goal_cells = rng.sample(upper, min(goals, len(upper)))
    free = [cell for cell in cells if cell not in goal_cells]
    starts = rng.sample(free, min(robots, len(free)))
    lines = ["domain: floortile", f"rows {rows}", f"cols {cols}"]
    lines += [f"robot {rng.choice(('white', 'black'))} {r} {c}" for r, c in starts]
    lines += [f"goal {rng.choice(('white', 'black'))} {r} {c}" for r, c in goal_cells]
    return "\n".join(lines) + "\n"


GENERATORS = {
    "transport": transport_text,
    "parking": parking_text,
    "tetris": tetris_text,
    "floortile": floortile_text,
}
