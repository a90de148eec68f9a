import itertools

import pytest

from fltk.category import (arrow_view, associativity_failures,
                           bounded_universe, cartesian_funset, cod,
                           composable_triples, compose, dom, find_products,
                           identity_law_failures, is_arrow, is_product,
                           pair_projections, surjections)
from fltk.encodings import pair
from fltk.errors import CompositionMismatch
from fltk.hf_kernel import funset_of, is_funset, make


def funsets_over(elems):
    return [funset_of(c) for r in range(len(elems) + 1)
            for c in itertools.combinations(elems, r)]


def test_dom_cod_examples(z, id0, F3):
    assert dom(z) is z and cod(z) is z
    f = make([(id0, z)])
    assert dom(f) is funset_of([id0])
    assert cod(f) is funset_of([z])
    for s in F3:
        if is_funset(s):
            assert dom(s) is s and cod(s) is s
    v = arrow_view(f)
    assert (v.arrow, v.domain, v.codomain) == (f, dom(f), cod(f))
    assert is_arrow(f, dom(f), cod(f))


def test_identity_laws_on_stage_three(F3):
    assert identity_law_failures(F3) == []
    for f in F3:
        assert compose(f, dom(f)) is f
        assert compose(cod(f), f) is f


def test_associativity_on_stage_three(F3):
    triples = list(composable_triples(F3))
    assert triples
    assert associativity_failures(F3) == []


def test_compose_example(z, id0):
    # cod([{0}->0]) = {0} = dom({0}), so the pair composes
    f = make([(id0, z)])
    assert cod(f) is dom(id0)
    assert compose(id0, f) is f


def test_compose_mismatch(z, id0):
    with pytest.raises(CompositionMismatch):
        compose(make([(id0, z)]), id0)


def test_compose_graph(F3):
    for f, g in itertools.product(F3, repeat=2):
        if cod(f) is dom(g):
            h = compose(g, f)
            assert dom(h) is dom(f)
            assert all(h(x) is g(f(x)) for x in dom(f).field)


def test_cartesian_examples(z, id0, F2):
    assert cartesian_funset(z, id0) is z
    assert cartesian_funset(id0, id0) is funset_of([pair(z, z)])
    for a, b in itertools.product(funsets_over(F2), repeat=2):
        assert len(cartesian_funset(a, b).graph) == \
            len(a.graph) * len(b.graph)


def test_surjections_counts(z, id0):
    assert list(surjections([], [])) == [z]
    assert list(surjections([z], [])) == []
    assert len(list(surjections([z, id0], [z]))) == 1
    assert len(list(surjections([z, id0], [z, id0]))) == 2


def test_empty_product(z, id0):
    assert is_product(z, z, z, z, z, bounded_universe(z, z))
    # with B nonempty the empty cone has no arrow into B
    b = funset_of([z])
    assert not is_product(z, z, z, z, b, bounded_universe(z, b))


def test_singleton_times_anything_is_that_thing(z, id0, F2):
    a = funset_of([z])
    for b in funsets_over(F2):
        if not b.graph:
            continue
        p1 = make((x, z) for x in b.field)
        assert is_product(b, p1, b, a, b, bounded_universe(a, b))


def test_rejects_non_arrows(z, id0):
    a = funset_of([z])
    assert not is_product(a, id0, id0, a, funset_of([id0]),
                          bounded_universe(a, a))


def test_products_on_stage_two_objects(F2):
    objects = funsets_over(F2)
    for a, b in itertools.product(objects, repeat=2):
        na, nb = len(a.graph), len(b.graph)
        found = find_products(a, b)
        assert bool(found) == (max(na, nb) == na * nb)
        for d in found:
            assert len(d.apex.graph) == max(na, nb) == na * nb
            assert min(na, nb) < 2


def test_no_product_for_two_by_two(F2):
    a = b = funset_of(F2)
    assert find_products(a, b, max_apex=5) == []
    prod, p1, p2 = pair_projections(a, b)
    assert not is_product(prod, p1, p2, a, b, bounded_universe(a, b))
