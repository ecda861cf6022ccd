"""Tabled search strategies.

``plan`` is a resource-bounded depth-first search that remembers, for every
state that failed, the largest remaining budget it failed with, and only
expands such a state again when it is reached with strictly more budget.
``best_plan`` repeats it with growing budgets while keeping that table,
``best_plan_bb`` tightens the budget below each plan it finds, and
``best_plan_unbounded`` computes optimal costs-to-go for every reachable state.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Callable

from .domain import Action, Domain, Plan
from .terms import TermId

INF = math.inf


class Outcome(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    TIMEOUT = "timeout"


@dataclass
class SearchStats:
    expansions: int = 0
    table_hits: int = 0
    re_expansions: int = 0
    rounds: int = 0
    tabled_states: int = 0
    elapsed_ms: int = 0

    def lines(self) -> list[str]:
        return [
            f"expansions={self.expansions}",
            f"table_hits={self.table_hits}",
            f"re_expansions={self.re_expansions}",
            f"rounds={self.rounds}",
            f"tabled_states={self.tabled_states}",
            f"time_ms={self.elapsed_ms}",
        ]


@dataclass
class SearchOptions:
    use_table: bool = True
    use_heuristic: bool = True
    timeout: float | None = None
    #: budget increment between iterative-deepening rounds
    step: int = 1
    #: keep the failure table between rounds; False gives the IDA*-style baseline
    reuse_table: bool = True
    #: called as ``trace(event, state, budget, previous_limit)`` for
    #: "expand", "table_hit" and "fail" events
    trace: Callable | None = None


class ResourceTable:
    """Highest budget at which each state is known to have failed."""

    def __init__(self) -> None:
        self.failed_limit: dict[TermId, int] = {}

    def get(self, state: TermId) -> int | None:
        return self.failed_limit.get(state)

    def record(self, state: TermId, limit: int) -> None:
        old = self.failed_limit.get(state)
        if old is None or limit > old:
            self.failed_limit[state] = limit

    def clear(self) -> None:
        self.failed_limit.clear()

    def __contains__(self, state) -> bool:
        return state in self.failed_limit

    def __len__(self) -> int:
        return len(self.failed_limit)


class AnswerTable:
    """Completed answers of unbounded search.

    Each entry is ``(cost, action, next_state)``; dead ends have cost ``inf``
    and final states ``(0, None, None)``.
    """

    def __init__(self) -> None:
        self._answers: dict[TermId, tuple] = {}

    def __contains__(self, state) -> bool:
        return state in self._answers

    def __len__(self) -> int:
        return len(self._answers)

    def set(self, state: TermId, cost, action: Action | None, nxt: TermId | None) -> None:
        self._answers[state] = (cost, action, nxt)

    def cost(self, state: TermId):
        return self._answers[state][0]

    def is_dead_end(self, state: TermId) -> bool:
        return self._answers[state][0] == INF

    def plan(self, state: TermId) -> Plan | None:
        cost = self._answers[state][0]
        if cost == INF:
            return None
        steps, seen = [], set()
        while True:
            _, action, nxt = self._answers[state]
            if action is None:
                break
            if state in seen:
                raise RuntimeError("cyclic answer pointers")
            seen.add(state)
            steps.append(action)
            state = nxt
        return Plan(steps, cost)


@dataclass
class PlanResult:
    outcome: Outcome
    plan: Plan | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    table: ResourceTable | AnswerTable | None = None

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND

    @property
    def cost(self) -> int | None:
        return self.plan.total_cost if self.plan is not None else None


class SearchTimeout(Exception):
    pass


class _Search:
    def __init__(self, domain: Domain, options: SearchOptions | None):
        self.domain = domain
        self.opts = options or SearchOptions()
        self.stats = SearchStats()
        self.start = time.monotonic()
        t = self.opts.timeout
        self.deadline = None if t is None else self.start + t
        self.seen: set[TermId] = set()

    def finish(self, outcome: Outcome, plan: Plan | None, table) -> PlanResult:
        self.stats.elapsed_ms = int((time.monotonic() - self.start) * 1000)
        if isinstance(table, AnswerTable):
            self.stats.tabled_states = len(table)
        elif self.opts.use_table:
            self.stats.tabled_states = len(self.seen)
        return PlanResult(outcome, plan, self.stats, table)

    def tick(self) -> None:
        self.stats.expansions += 1
        self.check_deadline()

    def check_deadline(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout

    def goal_reachable(self, init: TermId) -> bool:
        """Plain visited-set search for any final state; not counted as expansions."""
        domain = self.domain
        visited = {init}
        todo = [init]
        while todo:
            state = todo.pop()
            if domain.is_final(state):
                return True
            self.check_deadline()
            for nxt, _, _ in domain.successors(state).items:
                if nxt not in visited:
                    visited.add(nxt)
                    todo.append(nxt)
        return False

    def expand(self, state: TermId, budget: int, table: ResourceTable) -> list:
        self.tick()
        prev = None
        if self.opts.use_table:
            prev = table.get(state)
            if prev is not None:
                self.stats.re_expansions += 1
        self.seen.add(state)
        if self.opts.trace is not None:
            self.opts.trace("expand", state, budget, prev)
        return self.domain.successors(state).items

    def bounded(self, init: TermId, limit: int, table: ResourceTable) -> Plan | None:
        """One resource-bounded round.  Returns the first plan found."""
        domain, stats, trace = self.domain, self.stats, self.opts.trace
        use_table, use_h = self.opts.use_table, self.opts.use_heuristic
        if domain.is_final(init):
            return Plan([], 0)
        if use_table:
            prev = table.get(init)
            if prev is not None and prev >= limit:
                stats.table_hits += 1
                return None
        # frames are [state, budget, successors, next index]
        stack = [[init, limit, self.expand(init, limit, table), 0]]
        on_path = {init}
        actions: list[Action] = []
        while stack:
            frame = stack[-1]
            items = frame[2]
            i = frame[3]
            if i < len(items):
                frame[3] = i + 1
                nxt, action, cost = items[i]
                budget = frame[1] - cost
                if budget < 0 or nxt in on_path:
                    continue
                if domain.is_final(nxt):
                    actions.append(action)
                    return Plan(actions, limit - budget)
                if use_h and domain.heuristic(nxt) > budget:
                    continue
                if use_table:
                    prev = table.get(nxt)
                    if prev is not None and prev >= budget:
                        stats.table_hits += 1
                        if trace is not None:
                            trace("table_hit", nxt, budget, prev)
                        continue
                stack.append([nxt, budget, self.expand(nxt, budget, table), 0])
                on_path.add(nxt)
                actions.append(action)
            else:
                stack.pop()
                state, budget = frame[0], frame[1]
                on_path.discard(state)
                if stack:
                    actions.pop()
                if use_table:
                    table.record(state, budget)
                if trace is not None:
                    trace("fail", state, budget, None)
        return None

    def unbounded(self, init: TermId, answers: AnswerTable) -> None:
        """Fill ``answers`` for every state reachable from ``init``.

        Depth-first over strongly connected components; a component whose
        states reach each other is re-evaluated until no cost improves.
        """
        domain, stats = self.domain, self.stats
        if init in answers:
            return
        if domain.is_final(init):
            answers.set(init, 0, None, None)
            return
        index: dict[TermId, int] = {}
        low: dict[TermId, int] = {}
        items_of: dict[TermId, list] = {}
        scc_stack: list[TermId] = []
        on_stack: set[TermId] = set()

        def visit(v: TermId) -> list:
            self.tick()
            index[v] = low[v] = len(index)
            scc_stack.append(v)
            on_stack.add(v)
            items = domain.successors(v).items
            items_of[v] = items
            return [v, items, 0]

        stack = [visit(init)]
        while stack:
            frame = stack[-1]
            v, items, i = frame
            if i < len(items):
                frame[2] = i + 1
                w = items[i][0]
                if w in answers:
                    continue
                if w in index:
                    if w in on_stack and index[w] < low[v]:
                        low[v] = index[w]
                    continue
                if domain.is_final(w):
                    answers.set(w, 0, None, None)
                    continue
                stack.append(visit(w))
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] != index[v]:
                continue
            members = []
            while True:
                w = scc_stack.pop()
                on_stack.discard(w)
                members.append(w)
                if w == v:
                    break
            self._settle(members, items_of, answers)
            for w in members:
                del items_of[w]
        stats.tabled_states = len(answers)

    def _settle(self, members: list, items_of: dict, answers: AnswerTable) -> None:
        value = {m: INF for m in members}
        best: dict = {m: (None, None) for m in members}
        looping = len(members) > 1 or any(s[0] == members[0] for s in items_of[members[0]])
        passes = 0
        while True:
            passes += 1
            if passes > 1:
                for _ in members:
                    self.tick()
                self.stats.re_expansions += len(members)
            changed = False
            for m in members:
                for nxt, action, cost in items_of[m]:
                    sub = value[nxt] if nxt in value else answers.cost(nxt)
                    if cost + sub < value[m]:
                        value[m] = cost + sub
                        best[m] = (action, nxt)
                        changed = True
            if not looping or not changed:
                break
        for m in members:
            answers.set(m, value[m], *best[m])


def _run(search: _Search, body: Callable[[], tuple]) -> PlanResult:
    try:
        outcome, plan, table = body()
    except SearchTimeout:
        return search.finish(Outcome.TIMEOUT, None, getattr(search, "table", None))
    return search.finish(outcome, plan, table)


def _check_limit(limit: int) -> None:
    if limit < 0:
        raise ValueError(f"limit must be non-negative, got {limit}")


def plan(domain: Domain, init: TermId, limit: int, options: SearchOptions | None = None,
         table: ResourceTable | None = None) -> PlanResult:
    """Find any plan of cost at most ``limit`` (the first one in rule order)."""
    _check_limit(limit)
    search = _Search(domain, options)
    search.table = table if table is not None else ResourceTable()

    def body():
        search.stats.rounds = 1
        p = search.bounded(init, limit, search.table)
        return (Outcome.EXHAUSTED if p is None else Outcome.FOUND), p, search.table

    return _run(search, body)


def best_plan(domain: Domain, init: TermId, limit_cap: int = 2 ** 20,
              options: SearchOptions | None = None,
              table: ResourceTable | None = None) -> PlanResult:
    """Iterative deepening on the budget: 0, step, 2*step, ... up to ``limit_cap``.

    With ``step == 1`` and an admissible heuristic the plan is optimal.  The
    first time a failed round reaches no state the previous one had not, a
    plain reachability check runs once; if no final state is reachable at all
    the search stops there instead of raising the limit up to the cap.
    """
    _check_limit(limit_cap)
    search = _Search(domain, options)
    search.table = table if table is not None else ResourceTable()
    step = search.opts.step
    if step < 1:
        raise ValueError("step must be positive")

    def body():
        limit = 0
        seen_before = -1
        checked = False
        while True:
            search.stats.rounds += 1
            if not search.opts.reuse_table:
                search.table.clear()
            p = search.bounded(init, limit, search.table)
            if p is not None:
                return Outcome.FOUND, p, search.table
            if limit >= limit_cap:
                return Outcome.EXHAUSTED, None, search.table
            if not checked and len(search.seen) == seen_before:
                checked = True
                if not search.goal_reachable(init):
                    return Outcome.EXHAUSTED, None, search.table
            seen_before = len(search.seen)
            limit = min(limit + step, limit_cap)

    return _run(search, body)


def best_plan_bb(domain: Domain, init: TermId, limit: int = 2 ** 20,
                 options: SearchOptions | None = None) -> PlanResult:
    """Branch and bound: after a plan of cost C, search again below C."""
    _check_limit(limit)
    search = _Search(domain, options)
    search.table = None

    def body():
        best = None
        bound = limit
        while bound >= 0:
            search.stats.rounds += 1
            search.table = ResourceTable()
            p = search.bounded(init, bound, search.table)
            if p is None:
                break
            best = p
            bound = p.total_cost - 1
        return (Outcome.EXHAUSTED if best is None else Outcome.FOUND), best, search.table

    return _run(search, body)


def best_plan_unbounded(domain: Domain, init: TermId, limit: int = 2 ** 20,
                        options: SearchOptions | None = None,
                        answers: AnswerTable | None = None) -> PlanResult:
    """Optimal plan by exhaustive memoized search; ``limit`` is checked afterwards.

    Only terminates on finite reachable state spaces.
    """
    _check_limit(limit)
    search = _Search(domain, options)
    search.table = answers if answers is not None else AnswerTable()

    def body():
        search.stats.rounds = 1
        search.unbounded(init, search.table)
        cost = search.table.cost(init)
        if cost == INF or cost > limit:
            return Outcome.EXHAUSTED, None, search.table
        return Outcome.FOUND, search.table.plan(init), search.table

    return _run(search, body)


def search_stats(result: PlanResult) -> SearchStats:
    return result.stats
