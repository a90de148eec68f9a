"""Hereditarily finite partial functions.

Every :class:`HfFun` is hash-consed into a process-wide table, so two
functions with the same graph are the same Python object and equality is
identity.  Undefined application is ``None``; it never appears inside the
universe.
"""

from __future__ import annotations

import os
import threading
from functools import total_ordering
from typing import Callable, Iterable, Mapping, Optional, Tuple, Union

from .errors import CycleViolation, FunctionalityViolation, NodeCapExceeded

DEFAULT_MAX_NODES = 10_000_000

_lock = threading.RLock()
_table: dict = {}
_next_id = 0
_max_nodes: Optional[int] = None


def max_nodes() -> int:
    global _max_nodes
    if _max_nodes is None:
        raw = os.environ.get("FLTK_MAX_NODES", "")
        _max_nodes = int(raw) if raw.strip() else DEFAULT_MAX_NODES
    return _max_nodes


def set_max_nodes(limit: Optional[int]) -> None:
    """Override the interning cap; ``None`` re-reads FLTK_MAX_NODES."""
    global _max_nodes
    _max_nodes = limit


def table_size() -> int:
    return len(_table)


@total_ordering
class HfFun:
    """A canonical hereditarily finite partial function.

    ``graph`` holds ``(argument, value)`` pairs sorted by the canonical
    order on arguments.  Do not instantiate directly; use :func:`make`.
    """

    __slots__ = ("graph", "id", "rank", "key", "_map", "_field", "__weakref__")

    graph: Tuple[Tuple["HfFun", "HfFun"], ...]

    def __init__(self, graph, ident, rank, key):
        self.graph = graph
        self.id = ident
        self.rank = rank
        self.key = key
        self._map = None
        self._field = None

    @property
    def mapping(self) -> dict:
        if self._map is None:
            self._map = dict(self.graph)
        return self._map

    @property
    def field(self) -> frozenset:
        """Arguments and values together."""
        if self._field is None:
            self._field = frozenset(
                x for pair in self.graph for x in pair)
        return self._field

    def __call__(self, x: "HfFun") -> Optional["HfFun"]:
        return self.mapping.get(x)

    def __len__(self):
        return len(self.graph)

    def __hash__(self):
        return self.id

    def __eq__(self, other):
        return self is other

    def __lt__(self, other):
        if not isinstance(other, HfFun):
            return NotImplemented
        return self.key < other.key

    def __reduce__(self):
        return (make, (self.graph,))

    def __repr__(self):
        return f"HfFun({str(self)!r})"

    def __str__(self):
        from .surface import print_canonical
        return print_canonical(self)


Entries = Union[Iterable[Tuple[HfFun, HfFun]], Mapping[HfFun, HfFun]]


def _intern(graph) -> HfFun:
    global _next_id
    ident_key = tuple((a.id, v.id) for a, v in graph)
    found = _table.get(ident_key)
    if found is not None:
        return found
    with _lock:
        found = _table.get(ident_key)
        if found is not None:
            return found
        if len(_table) >= max_nodes():
            raise NodeCapExceeded(
                f"interning table exceeded FLTK_MAX_NODES={max_nodes()}")
        if graph:
            rank = 1 + max(x.rank for pair in graph for x in pair)
        else:
            rank = 1
        key = (rank, len(graph), tuple((a.key, v.key) for a, v in graph))
        node = HfFun(graph, _next_id, rank, key)
        _next_id += 1
        _table[ident_key] = node
        return node


def make(entries: Entries = ()) -> HfFun:
    """Intern the function with exactly the given graph entries.

    Identical duplicate entries collapse; conflicting ones raise
    :class:`FunctionalityViolation`.
    """
    if isinstance(entries, Mapping):
        entries = entries.items()
    graph: dict = {}
    for a, v in entries:
        if not isinstance(a, HfFun) or not isinstance(v, HfFun):
            raise TypeError("graph entries must be HfFun pairs")
        old = graph.get(a)
        if old is None:
            graph[a] = v
        elif old is not v:
            raise FunctionalityViolation(
                f"argument {a} mapped to both {old} and {v}")
    return _intern(tuple(sorted(graph.items(), key=lambda e: e[0].key)))


def null() -> HfFun:
    """The function with empty graph (printed ``0``)."""
    return _intern(())


def apply(f: HfFun, x: HfFun) -> Optional[HfFun]:
    return f.mapping.get(x)


def field_members(f: HfFun) -> frozenset:
    return f.field


def fun_in(g: HfFun, f: HfFun) -> bool:
    """``g`` lies in the field (domain or range) of ``f``."""
    return g in f.field


def fun_subeq(g: HfFun, f: HfFun) -> bool:
    return g.field <= f.field


def is_funset(f: HfFun) -> bool:
    return all(a is v for a, v in f.graph)


def funset_of(xs: Iterable[HfFun]) -> HfFun:
    """The partial identity whose field is exactly ``xs``."""
    return make((x, x) for x in xs)


def comprehend(support: Iterable[HfFun],
               oracle: Union[Callable[[HfFun], Optional[HfFun]],
                             Mapping[HfFun, HfFun]]) -> HfFun:
    """Turn a partial map with finite support into a function.

    ``oracle`` is consulted on every element of ``support`` (a mapping is
    read with ``.get``); ``None`` means undefined there.  An oracle that
    answers differently for the same argument raises
    :class:`FunctionalityViolation`.
    """
    lookup = oracle.get if isinstance(oracle, Mapping) else oracle
    entries = []
    for x in support:
        y = lookup(x)
        if y is not None:
            entries.append((x, y))
    return make(entries)


def compare(a: HfFun, b: HfFun) -> int:
    """-1, 0 or 1 under the canonical order (rank, size, entries)."""
    if a is b:
        return 0
    return -1 if a.key < b.key else 1


def validate(f: HfFun) -> None:
    """Re-check the structural invariants of ``f`` and everything below it.

    Raises :class:`CycleViolation` on a cycle and ``AssertionError`` when
    canonicity or functionality fails; returns silently otherwise.
    """
    done = set()
    active = set()

    def walk(g):
        if g.id in done:
            return
        if g.id in active:
            raise CycleViolation(f"function {g.id} occurs in its own field")
        active.add(g.id)
        args = [a for a, _ in g.graph]
        assert len(set(args)) == len(args), "duplicate argument"
        assert all(args[i].key < args[i + 1].key
                   for i in range(len(args) - 1)), "graph not canonical"
        for x in g.field:
            walk(x)
        assert all(x.rank < g.rank for x in g.field), "rank not increasing"
        active.discard(g.id)
        done.add(g.id)

    walk(f)
