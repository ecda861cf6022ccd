import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tabplan.terms import NonGroundTermError, Struct, TermError, TermStore, Var, term_eq

scalars = st.one_of(st.integers(-50, 50), st.sampled_from(["a", "b", "c1", "c2", "nil"]))
terms = st.recursive(
    scalars,
    lambda kids: st.one_of(
        st.lists(kids, max_size=4),
        st.tuples(kids, kids),
        st.builds(Struct, st.sampled_from(["f", "g", "rect"]), st.lists(kids, max_size=3)),
    ),
    max_leaves=12,
)


def deep_equal(a, b):
    """Structural equality written without relying on Python's == for containers."""
    if type(a) is not type(b):
        return False
    if isinstance(a, (int, str)):
        return a == b
    if isinstance(a, Struct):
        return a.tag == b.tag and deep_equal(list(a.args), list(b.args))
    if len(a) != len(b):
        return False
    return all(deep_equal(x, y) for x, y in zip(a, b))


def random_term(rng, depth=3):
    r = rng.random()
    if depth == 0 or r < 0.3:
        return rng.choice([rng.randint(0, 3), rng.choice("ab")])
    if r < 0.65:
        return [random_term(rng, depth - 1) for _ in range(rng.randint(0, 3))]
    if r < 0.8:
        return (random_term(rng, depth - 1), random_term(rng, depth - 1))
    return Struct(rng.choice("fg"), [random_term(rng, depth - 1) for _ in range(rng.randint(0, 2))])


def test_fresh_store_is_empty():
    assert TermStore().stats().node_count == 0


def test_counting_policy_for_small_list():
    s = TermStore()
    s.intern([1, 2, 3])
    # three integers, nil and three cons cells
    assert s.stats().node_count == 7


def test_reintern_is_idempotent_and_counts_a_hit():
    s = TermStore()
    a = s.intern([3])
    before = s.stats()
    b = s.intern([3])
    after = s.stats()
    assert a == b
    assert after.node_count == before.node_count
    assert after.intern_hits > before.intern_hits


def test_suffix_of_interned_list_adds_nothing():
    s = TermStore()
    s.intern([1, 2, 3])
    n = s.stats().node_count
    s.intern([2, 3])
    s.intern([3])
    s.intern([])
    assert s.stats().node_count == n


def test_suffixes_are_literally_shared():
    s = TermStore()
    full = s.intern([1, 2, 3])
    tail = s.node(full)[2]
    assert tail == s.intern([2, 3])


def test_distinct_tags_with_equal_args_differ():
    s = TermStore()
    assert s.intern(Struct("transport", ([], []))) != s.intern(Struct("parking", ([], [])))


def test_term_eq():
    s = TermStore()
    assert term_eq(s.intern(("x", [1])), s.intern(("x", [1])))
    assert not term_eq(s.intern([1, 2]), s.intern([2, 1]))


def test_non_ground_rejected():
    s = TermStore()
    with pytest.raises(NonGroundTermError, match="non-ground term"):
        s.intern([1, Var("X")])


@pytest.mark.parametrize("bad", [1.5, True, None, {1: 2}])
def test_unsupported_literals_rejected(bad):
    with pytest.raises(TermError):
        TermStore().intern(bad)


def test_unknown_ids_rejected():
    s = TermStore()
    s.intern([1])
    with pytest.raises(TermError):
        s.decode(99)
    with pytest.raises(TermError):
        s.tuple_args(-1)


def test_primitive_constructors_agree_with_intern():
    s = TermStore()
    built = s.tuple("f", [s.list([s.int(1), s.atom("a")]), s.int(2)])
    assert built == s.intern(Struct("f", ([1, "a"], 2)))


@settings(max_examples=300, deadline=None)
@given(terms)
def test_decode_inverts_intern(t):
    s = TermStore()
    assert deep_equal(s.decode(s.intern(t)), t)


@settings(max_examples=300, deadline=None)
@given(terms, terms)
def test_canonicity(a, b):
    s = TermStore()
    assert (s.intern(a) == s.intern(b)) == deep_equal(a, b)


@settings(max_examples=200, deadline=None)
@given(st.lists(scalars, max_size=8))
def test_suffix_sharing_property(items):
    s = TermStore()
    s.intern(items)
    n = s.stats().node_count
    for k in range(1, len(items) + 1):
        s.intern(items[k:])
    assert s.stats().node_count == n


@settings(max_examples=100, deadline=None)
@given(st.lists(terms, max_size=6))
def test_node_count_monotone(seq):
    s = TermStore()
    last = 0
    for t in seq:
        s.intern(t)
        n = s.stats().node_count
        assert n >= last
        last = n


def test_canonicity_on_many_random_pairs():
    rng = random.Random(2024)
    s = TermStore()
    pool = [random_term(rng) for _ in range(300)]
    for _ in range(10_000):
        a, b = rng.choice(pool), rng.choice(pool)
        assert (s.intern(a) == s.intern(b)) == deep_equal(a, b)
