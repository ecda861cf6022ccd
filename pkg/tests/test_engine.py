import random

import pytest

from oracles import cost_to_go, domain_edges, domain_optimum, reachable
from tabplan.domain import validate_plan
from tabplan.domains import GraphDomain, desk_dag, layered_dag
from tabplan.engine import (Outcome, ResourceTable, SearchOptions, best_plan, best_plan_bb,
                            best_plan_unbounded, plan, search_stats)
from tabplan.instance_io import load_problem

from conftest import INSTANCES


def random_graph(seed, n=None, zero_costs=True):
    rng = random.Random(seed)
    n = n or rng.randint(3, 12)
    nodes = [f"v{i}" for i in range(n)]
    edges = []
    for u in nodes:
        for v in rng.sample(nodes, rng.randint(0, min(4, n))):
            edges.append((u, v, rng.randint(0 if zero_costs else 1, 5)))
    finals = rng.sample(nodes[1:], rng.randint(1, 2))
    return GraphDomain(edges, finals)


def rendered(p):
    return [str(a) for a in p.steps]


# plan -----------------------------------------------------------------------

def test_d1_first_plan_follows_rule_order():
    d = desk_dag()
    r = plan(d, d.node("a"), 8)
    assert r.outcome is Outcome.FOUND
    assert rendered(r.plan) == ["move(a,b)", "move(b,c)", "move(c,d)"]
    assert r.plan.total_cost == 8


def test_d1_limit_4_exhausts_and_records_failures():
    d = desk_dag()
    r = plan(d, d.node("a"), 4)
    assert r.outcome is Outcome.EXHAUSTED
    assert r.table.get(d.node("c")) == 1
    assert r.table.get(d.node("b")) == 0
    assert r.table.get(d.node("a")) == 4


def test_plan_on_final_state_is_empty():
    d = desk_dag()
    for limit in (0, 3):
        r = plan(d, d.node("d"), limit)
        assert r.found and r.plan.steps == [] and r.cost == 0


def test_negative_limit_rejected():
    d = desk_dag()
    with pytest.raises(ValueError):
        plan(d, d.node("a"), -1)
    with pytest.raises(ValueError):
        best_plan(d, d.node("a"), -1)


def test_single_round_stats():
    d = desk_dag()
    r = plan(d, d.node("a"), 4)
    s = search_stats(r)
    assert s.rounds == 1
    assert s.re_expansions == 0
    assert s.re_expansions <= s.expansions


def test_resource_table_keeps_maximum():
    t = ResourceTable()
    t.record(7, 3)
    t.record(7, 1)
    assert t.get(7) == 3
    t.record(7, 5)
    assert t.get(7) == 5


# best_plan ------------------------------------------------------------------

def test_d1_best_plan():
    d = desk_dag()
    r = best_plan(d, d.node("a"), 20)
    assert r.cost == 5 and r.stats.rounds == 6
    assert rendered(r.plan) == ["move(a,c)", "move(c,d)"]


def test_best_plan_on_final_init():
    d = desk_dag()
    r = best_plan(d, d.node("d"))
    assert r.cost == 0 and r.stats.rounds == 1


def test_best_plan_cap_is_inclusive():
    d = desk_dag()
    assert best_plan(d, d.node("a"), 5).cost == 5
    assert best_plan(d, d.node("a"), 4).outcome is Outcome.EXHAUSTED


def test_table_never_costs_expansions_on_d1():
    d = desk_dag()
    on = best_plan(d, d.node("a"), 20)
    off = best_plan(d, d.node("a"), 20, SearchOptions(use_table=False))
    assert on.stats.expansions <= off.stats.expansions
    assert on.cost == off.cost == 5


def test_larger_step_still_finds_a_plan():
    d = desk_dag()
    r = best_plan(d, d.node("a"), 20, SearchOptions(step=4))
    assert r.found and r.cost <= 8


@pytest.mark.parametrize("opts", [SearchOptions(), SearchOptions(use_table=False),
                                  SearchOptions(reuse_table=False)])
def test_unsolvable_problem_stops_without_reaching_the_cap(opts):
    d = GraphDomain([("a", "b", 3), ("b", "a", 2), ("b", "c", 4), ("goal", "a", 1)], ["goal"])
    r = best_plan(d, d.node("a"), options=opts)
    assert r.outcome is Outcome.EXHAUSTED
    assert r.stats.rounds < 20


def test_reachability_check_does_not_change_solvable_searches():
    # the state set stops growing for a few rounds before the long edge fits
    d = GraphDomain([("a", "b", 1), ("b", "goal", 30)], ["goal"])
    r = best_plan(d, d.node("a"))
    assert r.cost == 31 and r.stats.rounds == 32


# branch and bound -----------------------------------------------------------

def test_d1_branch_and_bound():
    d = desk_dag()
    r = best_plan_bb(d, d.node("a"), 20)
    assert r.cost == 5
    # the first plan (cost 8) is tightened to 7, then 5 is found, then 4 exhausts
    assert r.stats.rounds == 3


def test_bb_limit_zero_on_final():
    d = desk_dag()
    assert best_plan_bb(d, d.node("d"), 0).cost == 0


def test_bb_exhausts_below_optimum():
    d = desk_dag()
    assert best_plan_bb(d, d.node("a"), 4).outcome is Outcome.EXHAUSTED


# unbounded ------------------------------------------------------------------

def test_d1_unbounded():
    d = desk_dag()
    r = best_plan_unbounded(d, d.node("a"))
    assert r.cost == 5 and rendered(r.plan) == ["move(a,c)", "move(c,d)"]


def test_unbounded_limit_checked_after_the_fact():
    d = desk_dag()
    r = best_plan_unbounded(d, d.node("a"), 4)
    assert r.outcome is Outcome.EXHAUSTED
    assert r.table.cost(d.node("a")) == 5


def test_unbounded_cycle_reaches_fixpoint():
    d = GraphDomain([("a", "b", 1), ("b", "a", 1), ("b", "goal", 1)], ["goal"])
    r = best_plan_unbounded(d, d.node("a"))
    assert r.cost == 2
    assert not r.table.is_dead_end(d.node("a"))
    assert r.table.cost(d.node("b")) == 1


def test_unbounded_dead_end():
    d = GraphDomain([("a", "b", 1), ("b", "a", 1), ("c", "goal", 1)], ["goal"])
    r = best_plan_unbounded(d, d.node("a"))
    assert r.outcome is Outcome.EXHAUSTED
    assert r.table.is_dead_end(d.node("a")) and r.table.is_dead_end(d.node("b"))


# properties on random graphs ------------------------------------------------

@pytest.mark.parametrize("seed", range(60))
def test_strategies_agree_with_dijkstra(seed):
    d = random_graph(seed)
    s = d.node("v0")
    want = domain_optimum(d, s)
    ub = best_plan_unbounded(d, s)
    if want == float("inf"):
        assert ub.outcome is Outcome.EXHAUSTED
        assert best_plan(d, s, 60).outcome is Outcome.EXHAUSTED
        return
    results = [best_plan(d, s), best_plan_bb(d, s), ub]
    for r in results:
        assert r.cost == want
        v = validate_plan(d, s, r.plan)
        assert v.valid and v.recomputed_cost == want


@pytest.mark.parametrize("seed", range(40))
def test_unbounded_answers_are_optimal_for_every_state(seed):
    d = random_graph(seed)
    s = d.node("v0")
    truth = cost_to_go(reachable(s, domain_edges(d), stop=d.is_final), d.is_final)
    r = best_plan_unbounded(d, s)
    for state, c in truth.items():
        assert r.table.cost(state) == c


@pytest.mark.parametrize("seed", range(40))
def test_failure_entries_of_failed_rounds_are_sound(seed):
    d = random_graph(seed)
    s = d.node("v0")
    truth = cost_to_go(reachable(s, domain_edges(d)), d.is_final)
    table = ResourceTable()
    limit = 0
    while limit <= 40:
        r = plan(d, s, limit, table=table)
        if r.found:
            break
        # every state recorded as failed at R has no plan of cost <= R
        for state, failed_at in table.failed_limit.items():
            assert truth[state] > failed_at
        limit += 1


@pytest.mark.parametrize("seed", range(30))
def test_re_expansion_only_with_strictly_more_budget(seed):
    d = random_graph(seed)
    events = []
    opts = SearchOptions(trace=lambda ev, state, budget, prev: events.append((ev, budget, prev)))
    best_plan(d, d.node("v0"), 30, opts)
    for ev, budget, prev in events:
        if ev == "expand" and prev is not None:
            assert budget > prev
        if ev == "table_hit":
            assert prev >= budget


@pytest.mark.parametrize("seed", range(30))
def test_heuristic_does_not_change_cost(seed):
    d = random_graph(seed, zero_costs=False)
    s = d.node("v0")
    truth = cost_to_go(reachable(s, domain_edges(d)), d.is_final)
    if truth[s] == float("inf"):
        return
    rng = random.Random(seed)
    # any admissible estimate: a random fraction of the true cost-to-go
    d.h = {d.name_of(st): (0 if c == float("inf") else int(c * rng.random())) for st, c in truth.items()}
    with_h = best_plan(d, s)
    without = best_plan(d, s, options=SearchOptions(use_heuristic=False))
    assert with_h.cost == without.cost == truth[s]
    assert with_h.stats.expansions <= without.stats.expansions


@pytest.mark.parametrize("seed", range(8))
def test_table_reuse_never_costs_more_on_layered_dags(seed):
    d = layered_dag(12, 4, random.Random(seed))
    s = d.node("s")
    reuse = best_plan(d, s)
    scratch = best_plan(d, s, options=SearchOptions(reuse_table=False))
    assert reuse.cost == scratch.cost
    assert reuse.stats.expansions <= scratch.stats.expansions


# timeouts -------------------------------------------------------------------

def test_timeout_reports_partial_stats():
    p = load_problem(INSTANCES / "p01.tp")
    r = best_plan(p.domain, p.init, options=SearchOptions(timeout=0.0))
    assert r.outcome is Outcome.TIMEOUT and r.plan is None
    assert r.stats.expansions >= 1


def test_p01_best_plan():
    p = load_problem(INSTANCES / "p01.tp")
    r = best_plan(p.domain, p.init)
    assert r.cost == 148 and len(r.plan) == 13
    assert validate_plan(p.domain, p.init, r.plan).recomputed_cost == 148
    assert r.stats.rounds == 149
