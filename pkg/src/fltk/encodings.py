"""Curried application, relations, ordered pairs and ordinals as functions."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .errors import CapExceeded, NotAPair
from .hf_kernel import HfFun, apply, funset_of, is_funset, make, null

ORD_CAP = 12


def apply_n(f: HfFun, args: Sequence[HfFun]) -> Optional[HfFun]:
    """``f(x1)(x2)...``; undefined as soon as any step is."""
    out: Optional[HfFun] = f
    for x in args:
        out = apply(out, x)
        if out is None:
            return None
    return out


def rel_holds(f: HfFun, args: Sequence[HfFun], z: HfFun) -> bool:
    return any(apply_n(g, args) is z for g in f.field)


def pair(a: HfFun, b: HfFun) -> HfFun:
    """The function sending ``a`` to the funset ``{b}``."""
    return make([(a, funset_of([b]))])


def _pair_parts(p: HfFun) -> Optional[Tuple[HfFun, HfFun]]:
    if len(p.graph) != 1:
        return None
    a, v = p.graph[0]
    if len(v.graph) != 1 or not is_funset(v):
        return None
    return a, v.graph[0][0]


def is_pair(p: HfFun) -> bool:
    return _pair_parts(p) is not None


def fst(p: HfFun) -> HfFun:
    parts = _pair_parts(p)
    if parts is None:
        raise NotAPair(f"{p} is not an encoded pair")
    return parts[0]


def snd(p: HfFun) -> HfFun:
    parts = _pair_parts(p)
    if parts is None:
        raise NotAPair(f"{p} is not an encoded pair")
    return parts[1]


_ordinals = [null()]


def ord_encode(n: int) -> HfFun:
    """Ordinal ``n`` as the map k -> k - 1 (truncated at 0) for k < n."""
    if n < 0:
        raise ValueError("ordinals are non-negative")
    if n > ORD_CAP:
        raise CapExceeded(f"ordinals above {ORD_CAP} are not encoded")
    while len(_ordinals) <= n:
        k = len(_ordinals)
        _ordinals.append(make((_ordinals[j], _ordinals[max(j - 1, 0)])
                              for j in range(k)))
    return _ordinals[n]


def ord_decode(f: HfFun) -> Optional[int]:
    """Inverse of :func:`ord_encode`; ``None`` for non-ordinals."""
    n = len(f.graph)
    if n > ORD_CAP:
        return None
    return n if ord_encode(n) is f else None
