"""Stages, fevels and the counting recurrence.

Stage ``s`` holds every function whose field is drawn from stage ``s - 1``
(stage 1 holds only the null function).  The ``s``-th fevel is the funset of
stage ``s - 1``, so the first fevel is null itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import CapExceeded
from .hf_kernel import (HfFun, apply, fun_in, fun_subeq, funset_of, is_funset,
                        make)

MAX_STAGE = 3
MAX_COUNT_ALPHA = 4
# hfpot refuses to materialize more partial maps than this for one field.
HFPOT_CAP = 100_000


def partial_maps(domain: Sequence[HfFun],
                 codomain: Sequence[HfFun]) -> Iterator[HfFun]:
    """Every partial function from ``domain`` into ``codomain``."""
    domain = list(domain)
    choices = [None, *codomain]
    for values in itertools.product(choices, repeat=len(domain)):
        yield make((a, v) for a, v in zip(domain, values) if v is not None)


def _map_count(n: int) -> int:
    return (n + 1) ** n


@lru_cache(maxsize=None)
def enumerate_stage(s: int) -> Tuple[HfFun, ...]:
    """All functions found at or before stage ``s``, canonically sorted."""
    if s < 1:
        raise ValueError("stages start at 1")
    if s > MAX_STAGE:
        raise CapExceeded(
            f"stage {s} has {count_p(s) if s <= MAX_COUNT_ALPHA else 'too many'}"
            f" functions; only stages <= {MAX_STAGE} are materialized")
    previous = enumerate_stage(s - 1) if s > 1 else ()
    return tuple(sorted(partial_maps(previous, previous)))


def count_p(alpha: int) -> int:
    """Number of functions in a hierarchy with ``alpha`` fevels."""
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    if alpha > MAX_COUNT_ALPHA:
        # p(5) = (10**9 + 1)**(10**9) has about nine billion digits.
        raise CapExceeded(f"p({alpha}) is too large to write down")
    p = 1
    for _ in range(alpha - 1):
        p = (p + 1) ** p
    return p


def idx(f: HfFun) -> int:
    """Least stage at which ``f`` is found."""
    return f.rank


def hfpot(f: HfFun) -> HfFun:
    """Funset of everything whose field lies inside the field of some g in f."""
    found = set()
    for g in f.field:
        base = sorted(g.field)
        if _map_count(len(base)) > HFPOT_CAP:
            raise CapExceeded(
                f"hfpot needs {_map_count(len(base))} functions over a "
                f"{len(base)}-element field")
        found.update(partial_maps(base, base))
    return funset_of(found)


def _hfpot_fits(h: HfFun, limit: int) -> bool:
    """Cheap necessary condition for ``len(hfpot(h)) <= limit``."""
    return all(_map_count(len(g.field)) <= limit for g in h.field)


def is_history(h: HfFun) -> bool:
    for x in h.field:
        below = funset_of(z for z in h.field if fun_in(z, x))
        if hfpot(below) is not x:
            return False
    return True


def is_fevel(s: HfFun) -> bool:
    """Search for a functional history ``h`` with ``s = hfpot(h)``.

    Any witness satisfies ``g in hfpot(h)`` for each ``g`` in its field, so
    candidate histories are the funsets over subsets of ``s``'s field.
    """
    if not is_funset(s):
        return False
    members = sorted(s.field)
    for size in range(len(members) + 1):
        for chosen in itertools.combinations(members, size):
            h = funset_of(chosen)
            if not _hfpot_fits(h, len(members)):
                continue
            if hfpot(h) is s and is_history(h):
                return True
    return False


_recursive_memo: dict = {}


def is_fevel_recursive(s: HfFun) -> bool:
    """``s`` is hfpot of the funset of the fevels in its own field."""
    known = _recursive_memo.get(s)
    if known is not None:
        return known
    earlier = funset_of(t for t in s.field if is_fevel_recursive(t))
    result = (is_funset(s) and _hfpot_fits(earlier, len(s.field))
              and hfpot(earlier) is s)
    _recursive_memo[s] = result
    return result


def fevel_chain() -> Iterator[HfFun]:
    """The fevels in increasing order, computed by iterating hfpot.

    Raises CapExceeded once the next fevel is too large to build.
    """
    found: List[HfFun] = []
    while True:
        nxt = hfpot(funset_of(found))
        found.append(nxt)
        yield nxt


def fevel_of(f: HfFun) -> HfFun:
    """The least fevel whose field includes ``f``'s field."""
    for s in fevel_chain():
        if fun_subeq(f, s):
            return s
    raise AssertionError("unreachable")


def fevels_within(universe: Iterable[HfFun]) -> List[HfFun]:
    return sorted(f for f in universe if is_fevel_recursive(f))


def diagonal_exists(universe: Iterable[HfFun]) -> bool:
    """Is some member of ``universe`` the naive diagonal function on it?"""
    universe = list(universe)
    for d in universe:
        if all(_diagonal_ok(d, x) for x in universe):
            return True
    return False


def _diagonal_ok(d: HfFun, x: HfFun) -> bool:
    if apply(x, x) is x:
        return apply(d, x) is None
    return apply(d, x) is x


def well_ordering_violation(items: Sequence[HfFun]) -> Optional[str]:
    """Check that ``items`` are linearly and well ordered by field membership.

    Returns a description of the first failure, or ``None``.
    """
    items = list(items)
    for a, b in itertools.combinations(items, 2):
        if not (fun_in(a, b) or fun_in(b, a)):
            return f"{a} and {b} are incomparable"
    for size in range(1, len(items) + 1):
        for subset in itertools.combinations(items, size):
            least = [m for m in subset
                     if not any(fun_in(o, m) for o in subset if o is not m)]
            if len(least) != 1:
                return f"subset {list(map(str, subset))} has no least element"
    return None


@dataclass(frozen=True)
class FevelReport:
    stage: int
    members: Tuple[HfFun, ...]
    fevel_object: HfFun


def stage_report(stage: int) -> FevelReport:
    members = enumerate_stage(stage)
    earlier = enumerate_stage(stage - 1) if stage > 1 else ()
    return FevelReport(stage, members, funset_of(earlier))
