"""Value-level translations between functions and sets.

``to_set`` reads a function as the set of Kuratowski pairs of its graph;
``to_fun`` reads a set as the partial identity on the translations of its
members.  Neither composite is the identity.
"""

from __future__ import annotations

import enum
import itertools
from typing import List

from .errors import CapExceeded
from .hf_kernel import HfFun, funset_of, is_funset, null
from .hf_sets import (HfSet, empty, is_setfunction, kpair,
                      set_of, setfunction_graph)


class Direction(enum.Enum):
    I = "i"
    J = "j"


_to_set: dict = {}
_to_fun: dict = {}


def to_set(f: HfFun) -> HfSet:
    out = _to_set.get(f)
    if out is None:
        out = set_of(kpair(to_set(x), to_set(y)) for x, y in f.graph)
        _to_set[f] = out
    return out


def to_fun(a: HfSet) -> HfFun:
    out = _to_fun.get(a)
    if out is None:
        out = funset_of(to_fun(x) for x in a)
        _to_fun[a] = out
    return out


def is_hereditary_setfunction(a: HfSet) -> bool:
    graph = setfunction_graph(a)
    if graph is None:
        return False
    return all(is_hereditary_setfunction(x)
               for pair in graph.items() for x in pair)


def is_hereditary_funset(f: HfFun) -> bool:
    return is_funset(f) and all(is_hereditary_funset(x) for x in f.field)


def hereditary_funsets(max_idx: int) -> List[HfFun]:
    """Hereditary funsets found by stage ``max_idx``, built funset by funset."""
    if max_idx < 1:
        return []
    if max_idx > 5:
        raise CapExceeded("hereditary funsets beyond stage 5")
    layer = [null()]
    for _ in range(max_idx - 1):
        layer = [funset_of(c) for r in range(len(layer) + 1)
                 for c in itertools.combinations(layer, r)]
    return sorted(layer)


def hereditary_setfunctions(stage: int) -> List[HfSet]:
    """Hereditary setfunctions whose pairs draw on the previous stage.

    Stage 1 is ``{empty}``; stage ``k + 1`` collects the subsets of
    ``{kpair(a, b) : a, b in stage k}`` that are setfunctions.
    """
    if stage < 1:
        return []
    if stage > 3:
        raise CapExceeded("hereditary setfunctions beyond stage 3")
    layer = [empty()]
    for _ in range(stage - 1):
        pairs = [kpair(a, b) for a in layer for b in layer]
        layer = [s for r in range(len(pairs) + 1)
                 for s in map(set_of, itertools.combinations(pairs, r))
                 if is_setfunction(s)]
    return sorted(set(layer))


def translate_value(value, direction: Direction):
    if direction is Direction.I:
        if not isinstance(value, HfFun):
            raise TypeError("direction i expects a function")
        return to_set(value)
    if not isinstance(value, HfSet):
        raise TypeError("direction j expects a set")
    return to_fun(value)
