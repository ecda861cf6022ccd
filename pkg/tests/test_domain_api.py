import pytest

from tabplan.domain import Action, Plan, validate_plan
from tabplan.domains import desk_dag
from tabplan.instance_io import load_problem

from conftest import FIXTURES, INSTANCES


def b3_steps():
    lines = (FIXTURES / "p01_b3_plan.txt").read_text().splitlines()
    return [Action.parse(line.split(".", 1)[1]) for line in lines if line.strip()[:1].isdigit()]


@pytest.fixture(scope="module")
def p01():
    return load_problem(INSTANCES / "p01.tp")


def test_action_rendering_has_no_spaces():
    assert str(Action("move", ("c1", "c3"))) == "move(c1,c3)"
    assert str(Action("unload", ("c2",))) == "unload(c2)"
    assert str(Action("noop")) == "noop"


@pytest.mark.parametrize("text", ["load(c1)", "move(c2,c5)", "move(rect(f0_2f,f1_2f),rect(f1_2f,f2_2f))"])
def test_action_parse_round_trip(text):
    assert str(Action.parse(text)) == text


def test_empty_plan_on_final_state():
    d = desk_dag()
    v = validate_plan(d, d.node("d"), Plan([], 0))
    assert v.valid and v.recomputed_cost == 0


def test_empty_plan_on_non_final_state():
    d = desk_dag()
    v = validate_plan(d, d.node("a"), [])
    assert not v.valid and v.failed_index is None


def test_b3_plan_validates(p01):
    v = validate_plan(p01.domain, p01.init, b3_steps())
    assert v.valid and v.recomputed_cost == 148


def test_b3_plan_with_swapped_steps_fails_at_second_step(p01):
    steps = b3_steps()
    # swap the first and fourth steps: move(c1,c3) now runs first, so the
    # following load(c1) finds no truck at c1.  Indices are 0-based.
    steps[0], steps[3] = steps[3], steps[0]
    v = validate_plan(p01.domain, p01.init, steps)
    assert not v.valid and v.failed_index == 1


def test_truncated_plan_does_not_reach_goal(p01):
    v = validate_plan(p01.domain, p01.init, b3_steps()[:-1])
    assert not v.valid and v.failed_index is None


def test_successors_are_pure(p01):
    d, s = p01.domain, p01.init
    a, b = d.successors(s), d.successors(s)
    assert a.items == b.items and a.committed == b.committed
