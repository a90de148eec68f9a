"""Hereditarily finite sets, Kuratowski pairs and the level machinery.

Sets are interned like :class:`~fltk.hf_kernel.HfFun`.  ``rank`` is the von
Neumann rank (the empty set has rank 0), so the sets of rank at most ``r``
are exactly the cumulative stage ``V(r + 1)``.
"""

from __future__ import annotations

import itertools
import threading
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import CapExceeded, NodeCapExceeded
from .hf_kernel import max_nodes

POT_CAP = 100_000
MAX_CUMULATIVE = 4

_lock = threading.RLock()
_table: dict = {}
_next_id = 0


@total_ordering
class HfSet:
    __slots__ = ("elements", "id", "rank", "key", "_members", "__weakref__")

    def __init__(self, elements, ident, rank, key):
        self.elements = elements
        self.id = ident
        self.rank = rank
        self.key = key
        self._members = frozenset(elements)

    @property
    def members(self) -> frozenset:
        return self._members

    def __contains__(self, x):
        return x in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __hash__(self):
        return self.id

    def __eq__(self, other):
        return self is other

    def __lt__(self, other):
        if not isinstance(other, HfSet):
            return NotImplemented
        return self.key < other.key

    def __reduce__(self):
        return (set_of, (self.elements,))

    def __repr__(self):
        return f"HfSet({str(self)!r})"

    def __str__(self):
        from .surface import print_canonical
        return print_canonical(self)


def _intern(elements: Tuple[HfSet, ...]) -> HfSet:
    global _next_id
    ident_key = tuple(e.id for e in elements)
    found = _table.get(ident_key)
    if found is not None:
        return found
    with _lock:
        found = _table.get(ident_key)
        if found is not None:
            return found
        if len(_table) >= max_nodes():
            raise NodeCapExceeded(
                f"set table exceeded FLTK_MAX_NODES={max_nodes()}")
        rank = 1 + max((e.rank for e in elements), default=-1)
        key = (rank, len(elements), tuple(e.key for e in elements))
        node = HfSet(elements, _next_id, rank, key)
        _next_id += 1
        _table[ident_key] = node
        return node


def set_of(xs: Iterable[HfSet] = ()) -> HfSet:
    elems = set()
    for x in xs:
        if not isinstance(x, HfSet):
            raise TypeError("set elements must be HfSet")
        elems.add(x)
    return _intern(tuple(sorted(elems, key=lambda e: e.key)))


def empty() -> HfSet:
    return _intern(())


def member(x: HfSet, a: HfSet) -> bool:
    return x in a.members


def subset(a: HfSet, b: HfSet) -> bool:
    return a.members <= b.members


def intersect(a: HfSet, b: HfSet) -> HfSet:
    return set_of(a.members & b.members)


def union_all(sets: Iterable[HfSet]) -> HfSet:
    out = set()
    for s in sets:
        out |= s.members
    return set_of(out)


def powerset(a: HfSet) -> HfSet:
    if 2 ** len(a) > POT_CAP:
        raise CapExceeded(f"power set of a {len(a)}-element set")
    elems = a.elements
    return set_of(set_of(c) for r in range(len(elems) + 1)
                  for c in itertools.combinations(elems, r))


# Kuratowski pairs and setfunctions

def kpair(a: HfSet, b: HfSet) -> HfSet:
    return set_of([set_of([a]), set_of([a, b])])


def kpair_decode(p: HfSet) -> Optional[Tuple[HfSet, HfSet]]:
    """Return ``(a, b)`` when ``p`` is ``kpair(a, b)``, else ``None``."""
    if len(p) not in (1, 2):
        return None
    for x in p:
        if len(x) != 1:
            continue
        a = x.elements[0]
        rest = [y for y in p if y is not x]
        if not rest:
            return (a, a)
        y = rest[0]
        if len(y) == 2 and a in y:
            b = y.elements[0] if y.elements[1] is a else y.elements[1]
            return (a, b)
    return None


def is_kpair(p: HfSet) -> bool:
    return kpair_decode(p) is not None


def setfunction_graph(f: HfSet) -> Optional[dict]:
    """Decode a setfunction into an argument -> value dict, or ``None``."""
    graph: dict = {}
    for p in f:
        pair = kpair_decode(p)
        if pair is None:
            return None
        a, b = pair
        if graph.get(a, b) is not b:
            return None
        graph[a] = b
    return graph


def is_setfunction(f: HfSet) -> bool:
    return setfunction_graph(f) is not None


# levels

def pot(a: HfSet) -> HfSet:
    """Everything included in some member of ``a``."""
    return union_all(powerset(c) for c in a)


def is_history(h: HfSet) -> bool:
    return all(pot(intersect(x, h)) is x for x in h)


def is_level(s: HfSet) -> bool:
    """Search for a history ``h`` with ``s = pot(h)``.

    ``c`` is a subset of itself, so any witness is a subset of ``s``.
    """
    members = s.elements
    for size in range(len(members) + 1):
        for chosen in itertools.combinations(members, size):
            if any(2 ** len(c) > len(members) for c in chosen):
                continue
            h = set_of(chosen)
            if pot(h) is s and is_history(h):
                return True
    return False


def level_chain() -> Iterator[HfSet]:
    """V(0), V(1), ... built by iterating pot; stops with CapExceeded."""
    found: List[HfSet] = []
    while True:
        nxt = pot(set_of(found))
        found.append(nxt)
        yield nxt


def lev_of(a: HfSet) -> HfSet:
    """The least level including ``a``."""
    for s in level_chain():
        if subset(a, s):
            return s
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def cumulative(k: int) -> HfSet:
    """V(k) by the plain power-set iteration V(k+1) = P(V(k))."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > MAX_CUMULATIVE:
        raise CapExceeded(f"V({k}) is not materialized")
    if k == 0:
        return empty()
    return powerset(cumulative(k - 1))


def sets_of_rank_at_most(r: int) -> Tuple[HfSet, ...]:
    return cumulative(r + 1).elements


# the characteristic-function reading of membership

def zero() -> HfSet:
    return empty()


def one() -> HfSet:
    return set_of([empty()])


def chi_app(y: HfSet, x: HfSet) -> HfSet:
    """``y`` applied to ``x``: one when x is a member of y, zero otherwise."""
    return one() if member(x, y) else zero()
