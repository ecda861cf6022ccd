"""Tabled, resource-bounded planning over hash-consed states."""

from .domain import Action, Domain, Plan, Successor, SuccessorSet, validate_plan
from .engine import (Outcome, PlanResult, SearchOptions, SearchStats, best_plan,
                     best_plan_bb, best_plan_unbounded, plan)
from .instance_io import format_plan, load_problem, parse_instance
from .terms import Struct, TermStore

__all__ = [
    "Action", "Domain", "Outcome", "Plan", "PlanResult", "SearchOptions", "SearchStats",
    "Struct", "Successor", "SuccessorSet", "TermStore", "best_plan", "best_plan_bb",
    "best_plan_unbounded", "format_plan", "load_problem", "parse_instance", "plan",
    "validate_plan",
]
