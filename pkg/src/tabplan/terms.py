"""Hash-consed store for ground terms.

Every structurally distinct term is stored exactly once and named by a
small integer id, so equality of terms is equality of ids and list suffixes
are shared between all lists that end with them.

Counting policy: atoms, integers, the empty list, cons cells and tagged
tuples are all nodes.  ``intern([1, 2, 3])`` on a fresh store therefore
creates 7 nodes: the integers 1, 2, 3, the empty list and three cons cells.
Every lookup that finds an existing node increments ``intern_hits``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, NewType

TermId = NewType("TermId", int)

ATOM, INT, NIL, CONS, TUPLE = "atom", "int", "nil", "cons", "tuple"

#: tag used for plain Python tuples, mirroring the ``(A,B)`` pair syntax
PAIR = ","


class TermError(ValueError):
    pass


class NonGroundTermError(TermError):
    def __init__(self, msg: str = "non-ground term"):
        super().__init__(msg)


@dataclass(frozen=True)
class Var:
    """An unbound variable.  Only exists so callers can be told no."""

    name: str = "_"


@dataclass(frozen=True)
class Struct:
    """A tagged tuple literal, e.g. ``Struct("rect", (c1, c2))``."""

    tag: str
    args: tuple = ()

    def __init__(self, tag: str, args: Iterable[Any] = ()):
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "args", tuple(args))


@dataclass(frozen=True)
class StoreStats:
    node_count: int
    intern_hits: int


class TermStore:
    """Never evicts; drop the store to reclaim memory.

    Not thread-safe.  One store per search.
    """

    def __init__(self) -> None:
        self._nodes: list[tuple] = []
        self._index: dict[tuple, int] = {}
        self.intern_hits = 0

    @property
    def nil(self) -> TermId:
        return self._node((NIL,))

    def __len__(self) -> int:
        return len(self._nodes)

    def _node(self, key: tuple) -> TermId:
        tid = self._index.get(key)
        if tid is not None:
            self.intern_hits += 1
            return tid
        tid = len(self._nodes)
        self._nodes.append(key)
        self._index[key] = tid
        return TermId(tid)

    # constructors ---------------------------------------------------------

    def atom(self, name: str) -> TermId:
        return self._node((ATOM, name))

    def int(self, value: int) -> TermId:
        return self._node((INT, value))

    def cons(self, head: TermId, tail: TermId) -> TermId:
        return self._node((CONS, head, tail))

    def tuple(self, tag: str, args: Iterable[TermId]) -> TermId:
        return self._node((TUPLE, tag, tuple(args)))

    def list(self, items: Iterable[TermId], tail: TermId | None = None) -> TermId:
        """Build a list from already interned element ids, back to front."""
        t = self.nil if tail is None else tail
        for item in reversed(list(items)):
            t = self._node((CONS, item, t))
        return t

    def intern(self, literal: Any) -> TermId:
        """Intern a ground Python literal.

        ints are integers, strs are atoms, lists are lists, ``Struct`` is a
        tagged tuple and a plain tuple is a ``,``-tagged tuple.
        """
        t = type(literal)
        if t is int:
            return self._node((INT, literal))
        if t is str:
            return self._node((ATOM, literal))
        if t is list:
            tid = self._node((NIL,))
            for item in reversed(literal):
                tid = self._node((CONS, self.intern(item), tid))
            return tid
        if t is Struct:
            return self._node((TUPLE, literal.tag, tuple([self.intern(a) for a in literal.args])))
        if t is tuple:
            return self._node((TUPLE, PAIR, tuple([self.intern(a) for a in literal])))
        if isinstance(literal, Var):
            raise NonGroundTermError()
        raise TermError(f"unsupported literal {literal!r}")

    # accessors ------------------------------------------------------------

    def _get(self, tid: TermId) -> tuple:
        if type(tid) is not int or not 0 <= tid < len(self._nodes):
            raise TermError(f"unknown term id {tid!r}")
        return self._nodes[tid]

    def stats(self) -> StoreStats:
        return StoreStats(node_count=len(self._nodes), intern_hits=self.intern_hits)

    def node(self, tid: TermId) -> tuple:
        """The raw node: ``(kind, ...)`` with child ids in place of children."""
        return self._get(tid)

    def kind(self, tid: TermId) -> str:
        return self._get(tid)[0]

    def contains(self, tid: Any) -> bool:
        return isinstance(tid, int) and 0 <= tid < len(self._nodes)

    def iter_list(self, tid: TermId) -> Iterator[TermId]:
        node = self._get(tid)
        while node[0] == CONS:
            yield node[1]
            node = self._nodes[node[2]]
        if node[0] != NIL:
            raise TermError("improper list")

    def tuple_args(self, tid: TermId, tag: str | None = None) -> tuple:
        node = self._get(tid)
        if node[0] != TUPLE or (tag is not None and node[1] != tag):
            raise TermError(f"expected {tag or 'a'} tuple")
        return node[2]

    def scalar(self, tid: TermId):
        """The Python value of an atom or integer node."""
        node = self._get(tid)
        if node[0] not in (ATOM, INT):
            raise TermError("not an atom or integer")
        return node[1]

    def decode(self, tid: TermId) -> Any:
        """Inverse of ``intern``: rebuild the Python literal."""
        node = self._get(tid)
        kind = node[0]
        if kind in (ATOM, INT):
            return node[1]
        if kind == NIL:
            return []
        if kind == CONS:
            return [self.decode(x) for x in self.iter_list(tid)]
        args = tuple(self.decode(a) for a in node[2])
        return args if node[1] == PAIR else Struct(node[1], args)


def term_eq(a: TermId, b: TermId) -> bool:
    """Structural equality of two terms from the same store.

    Ids from different stores compare meaninglessly; that is a caller error.
    """
    return a == b
