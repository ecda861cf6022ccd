"""The contract every planning domain implements, plus a plan validator."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .terms import TermId, TermStore

INF = math.inf


class ForeignStateError(ValueError):
    def __init__(self, msg: str = "foreign state"):
        super().__init__(msg)


@dataclass(frozen=True)
class Action:
    name: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"

    @classmethod
    def parse(cls, text: str) -> "Action":
        """Inverse of ``str`` for flat actions; nested args stay as text."""
        text = text.strip()
        if "(" not in text:
            return cls(text)
        name, _, rest = text.partition("(")
        if not rest.endswith(")"):
            raise ValueError(f"malformed action {text!r}")
        body, args, depth, cur = rest[:-1], [], 0, ""
        for ch in body:
            if ch == "," and depth == 0:
                args.append(cur)
                cur = ""
                continue
            depth += ch == "("
            depth -= ch == ")"
            cur += ch
        args.append(cur)
        return cls(name, tuple(args))


class Successor(NamedTuple):
    next_state: TermId
    action: Action
    cost: int


@dataclass
class SuccessorSet:
    """Successors in rule order.

    ``committed`` means a non-backtrackable rule fired: ``items`` holds only
    that rule's successors and no later rule may contribute.
    """

    items: list[Successor] = field(default_factory=list)
    committed: bool = False

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass
class Plan:
    steps: list[Action] = field(default_factory=list)
    total_cost: int = 0

    def __len__(self) -> int:
        return len(self.steps)


class Domain:
    """Base class for domains.

    Subclasses provide ``is_final``, ``successors`` and optionally
    ``heuristic`` (admissible; 0 by default) and ``check_state`` (raises
    ``AssertionError`` when a state breaks the domain's invariants).
    """

    name = "domain"

    def __init__(self, store: TermStore | None = None):
        self.store = store if store is not None else TermStore()
        self._parts: dict = {}

    def part(self, key, literal=None) -> TermId:
        """Interned id of a state component, memoised on ``key``.

        ``literal`` (default: ``key`` itself) is what gets interned; hash
        consing makes the result the same id a whole-state intern would give.
        """
        tid = self._parts.get(key)
        if tid is None:
            tid = self._parts[key] = self.store.intern(key if literal is None else literal)
        return tid

    def is_final(self, state: TermId) -> bool:
        raise NotImplementedError

    def successors(self, state: TermId) -> SuccessorSet:
        raise NotImplementedError

    def heuristic(self, state: TermId) -> float:
        return 0

    def check_state(self, state: TermId) -> None:
        pass


@dataclass
class Validation:
    valid: bool
    recomputed_cost: int
    failed_index: int | None = None
    reason: str = ""


def validate_plan(domain: Domain, init: TermId, plan: Plan | Sequence) -> Validation:
    """Replay ``plan`` through ``domain.successors``.

    Steps are matched on their rendered form.  When one rendering is offered
    by several successors all of them are followed, so the result does not
    depend on which one the planner happened to take.  ``failed_index`` is
    0-based.
    """
    steps: Iterable = plan.steps if isinstance(plan, Plan) else plan
    frontier: dict[TermId, int] = {init: 0}
    for i, step in enumerate(steps):
        want = str(step)
        nxt: dict[TermId, int] = {}
        for state, cost in frontier.items():
            for succ in domain.successors(state):
                if str(succ.action) != want:
                    continue
                c = cost + succ.cost
                if c < nxt.get(succ.next_state, INF):
                    nxt[succ.next_state] = c
        if not nxt:
            best = min(frontier.values())
            return Validation(False, best, i, f"step {i} {want} is not applicable")
        frontier = nxt
    finals = [c for s, c in frontier.items() if domain.is_final(s)]
    if not finals:
        return Validation(False, min(frontier.values()), None, "plan does not reach a final state")
    return Validation(True, min(finals))
