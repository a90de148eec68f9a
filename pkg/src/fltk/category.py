"""Functions as arrows: domains, codomains, composition and products.

A function is an arrow from the funset of its arguments to the funset of
its values, so every arrow is surjective onto its codomain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .encodings import fst, pair, snd
from .errors import CapExceeded, CompositionMismatch
from .hf_kernel import HfFun, apply, funset_of, is_funset, make

CARTESIAN_CAP = 10_000


def dom(f: HfFun) -> HfFun:
    return funset_of(a for a, _ in f.graph)


def cod(f: HfFun) -> HfFun:
    return funset_of(v for _, v in f.graph)


@dataclass(frozen=True)
class ArrowView:
    arrow: HfFun
    domain: HfFun
    codomain: HfFun


def arrow_view(f: HfFun) -> ArrowView:
    return ArrowView(f, dom(f), cod(f))


def is_arrow(f: HfFun, a: HfFun, b: HfFun) -> bool:
    return dom(f) is a and cod(f) is b


def compose(g: HfFun, f: HfFun) -> HfFun:
    """``g`` after ``f``; needs ``cod(f) == dom(g)``."""
    if cod(f) is not dom(g):
        raise CompositionMismatch(
            f"cod({f}) = {cod(f)} but dom({g}) = {dom(g)}")
    return make((x, apply(g, y)) for x, y in f.graph)


def cartesian_funset(f: HfFun, g: HfFun) -> HfFun:
    """Funset of encoded pairs drawn from the two fields."""
    if len(f.field) * len(g.field) > CARTESIAN_CAP:
        raise CapExceeded("cartesian funset too large")
    return funset_of(pair(x, y) for x in f.field for y in g.field)


def _elements(s: HfFun) -> List[HfFun]:
    return sorted(s.field)


def surjections(src: Sequence[HfFun], dst: Sequence[HfFun]) -> Iterator[HfFun]:
    """Every arrow from funset-field ``src`` onto ``dst``."""
    src, dst = list(src), list(dst)
    if len(dst) > len(src) or (src and not dst):
        return
    for images in itertools.product(dst, repeat=len(src)):
        if len(set(images)) == len(dst):
            yield make(zip(src, images))


def downward_closure(xs: Iterable[HfFun]) -> List[HfFun]:
    seen = set()
    todo = list(xs)
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.extend(x.field)
    return sorted(seen)


def bounded_universe(a: HfFun, b: HfFun) -> List[HfFun]:
    """Elements available to test objects: A, B, A x B and all below them."""
    return downward_closure(
        a.field | b.field | cartesian_funset(a, b).field)


def _funsets_over(universe: Sequence[HfFun], max_size: int) -> Iterator[HfFun]:
    for size in range(max_size + 1):
        for chosen in itertools.combinations(universe, size):
            yield funset_of(chosen)


def is_product(p: HfFun, p1: HfFun, p2: HfFun, a: HfFun, b: HfFun,
               test_universe: Iterable[HfFun],
               max_test_size: Optional[int] = None) -> bool:
    """Bounded check of the universal property of ``a <-p1- p -p2-> b``.

    The projections must be arrows ``p -> a`` and ``p -> b``.  Test objects
    are funsets over ``test_universe`` with at most ``max_test_size``
    elements (default: the largest of |A|, |B| and |A x B|).  For each test
    cone exactly one mediating arrow must exist.
    """
    if not all(map(is_funset, (p, a, b))):
        return False
    if not (is_arrow(p1, p, a) and is_arrow(p2, p, b)):
        return False
    na, nb = len(a.graph), len(b.graph)
    if max_test_size is None:
        max_test_size = max(na, nb, na * nb)
    pe = _elements(p)
    ae, be = _elements(a), _elements(b)
    for q in _funsets_over(sorted(set(test_universe)), max_test_size):
        qe = _elements(q)
        for q1 in surjections(qe, ae):
            for q2 in surjections(qe, be):
                if _count_mediators(qe, pe, p1, p2, q1, q2, limit=2) != 1:
                    return False
    return True


def _count_mediators(qe, pe, p1, p2, q1, q2, limit):
    options = []
    for x in qe:
        fits = [y for y in pe if apply(p1, y) is apply(q1, x)
                and apply(p2, y) is apply(q2, x)]
        if not fits:
            return 0
        options.append(fits)
    target = len(pe)
    count = 0
    for images in itertools.product(*options):
        if len(set(images)) == target:
            count += 1
            if count >= limit:
                break
    return count


@dataclass(frozen=True)
class ProductDiagram:
    apex: HfFun
    proj1: HfFun
    proj2: HfFun


def find_products(a: HfFun, b: HfFun, max_apex: int = 5,
                  universe: Optional[Sequence[HfFun]] = None
                  ) -> List[ProductDiagram]:
    """Every product diagram over ``universe`` with apex of size <= max_apex."""
    if universe is None:
        universe = bounded_universe(a, b)
    ae, be = _elements(a), _elements(b)
    found = []
    for p in _funsets_over(universe, max_apex):
        pe = _elements(p)
        for p1 in surjections(pe, ae):
            for p2 in surjections(pe, be):
                if is_product(p, p1, p2, a, b, universe):
                    found.append(ProductDiagram(p, p1, p2))
    return found


def identity_law_failures(arrows: Iterable[HfFun]) -> List[HfFun]:
    bad = []
    for f in arrows:
        if compose(f, dom(f)) is not f or compose(cod(f), f) is not f:
            bad.append(f)
    return bad


def composable_triples(arrows: Sequence[HfFun]
                       ) -> Iterator[Tuple[HfFun, HfFun, HfFun]]:
    """``(f, g, h)`` with cod f = dom g and cod g = dom h."""
    by_dom: dict = {}
    for x in arrows:
        by_dom.setdefault(dom(x), []).append(x)
    for f in arrows:
        for g in by_dom.get(cod(f), ()):
            for h in by_dom.get(cod(g), ()):
                yield f, g, h


def associativity_failures(arrows: Sequence[HfFun]):
    return [(f, g, h) for f, g, h in composable_triples(arrows)
            if compose(h, compose(g, f)) is not compose(compose(h, g), f)]


def pair_projections(a: HfFun, b: HfFun) -> Tuple[HfFun, HfFun, HfFun]:
    """``A x B`` with its two coordinate arrows."""
    prod = cartesian_funset(a, b)
    return (prod, make((p, fst(p)) for p in prod.field),
            make((p, snd(p)) for p in prod.field))
