import itertools

import pytest
from hypothesis import given, strategies as st

from fltk.errors import CapExceeded
from fltk.hf_kernel import apply, fun_in, funset_of, null
from fltk.hf_sets import (empty, kpair, kpair_decode, member, set_of,
                          sets_of_rank_at_most)
from fltk.hierarchy import enumerate_stage, idx
from fltk.translate import (Direction, hereditary_funsets,
                            hereditary_setfunctions, is_hereditary_funset,
                            is_hereditary_setfunction, to_fun, to_set,
                            translate_value)

V4 = sets_of_rank_at_most(3)


def test_examples(z, id0):
    assert to_set(z) is empty()
    assert to_set(id0) is set_of([kpair(empty(), empty())])
    assert to_fun(empty()) is z
    assert to_fun(set_of([empty()])) is id0


def test_to_set_injective_with_hereditary_image(F3):
    image = [to_set(f) for f in F3]
    assert len(set(image)) == len(F3)
    assert all(is_hereditary_setfunction(a) for a in image)
    assert sorted(image) == hereditary_setfunctions(3)


def test_application_simulated_by_pairs(F3):
    checked = 0
    for f, x, y in itertools.product(F3, repeat=3):
        inside = kpair(to_set(x), to_set(y)) in to_set(f)
        assert inside == (apply(f, x) is y)
        checked += 1
    assert checked == 729


def test_to_fun_injective_with_hereditary_image():
    image = [to_fun(a) for a in V4]
    assert len(set(image)) == len(V4) == 16
    assert all(is_hereditary_funset(f) for f in image)
    assert sorted(image) == hereditary_funsets(4)


def test_membership_simulated_by_field():
    pairs = list(itertools.product(V4, repeat=2))
    assert len(pairs) == 256
    for a, b in pairs:
        assert member(a, b) == fun_in(to_fun(a), to_fun(b))


def test_round_trip_on_sets():
    # IJ is not the identity: a set comes back as the set of diagonal pairs
    # of its round-tripped members
    for a in V4:
        back = to_set(to_fun(a))
        for x in V4:
            assert member(x, a) == (kpair(to_set(to_fun(x)),
                                          to_set(to_fun(x))) in back)
    assert to_set(to_fun(set_of([empty()]))) is not set_of([empty()])


def test_round_trip_on_functions(F3):
    # JI sends f to a funset; it agrees with f only on funsets built from 0
    for f in F3:
        g = to_fun(to_set(f))
        assert is_hereditary_funset(g)
    assert to_fun(to_set(null())) is null()


@pytest.mark.parametrize("rank,expected", [(0, 1), (1, 2), (2, 3), (3, 4)])
def test_rank_regression(rank, expected):
    for a in V4:
        if a.rank == rank:
            assert idx(to_fun(a)) == expected


def test_hereditary_caps():
    assert hereditary_funsets(0) == []
    assert hereditary_setfunctions(0) == []
    with pytest.raises(CapExceeded):
        hereditary_setfunctions(4)
    with pytest.raises(CapExceeded):
        hereditary_funsets(6)


def test_hereditary_funsets_small():
    assert hereditary_funsets(1) == [null()]
    assert hereditary_funsets(2) == [null(), funset_of([null()])]


def test_translate_value_directions(id0):
    assert translate_value(id0, Direction.I) is to_set(id0)
    assert translate_value(empty(), Direction.J) is null()
    with pytest.raises(TypeError):
        translate_value(empty(), Direction.I)
    with pytest.raises(TypeError):
        translate_value(id0, Direction.J)


@given(st.sampled_from(enumerate_stage(3)), st.sampled_from(enumerate_stage(3)))
def test_to_set_preserves_field_membership(f, g):
    # x in field(f) exactly when I(x) is a coordinate of some pair of I(f)
    coords = {c for p in to_set(f) for c in kpair_decode(p)}
    assert fun_in(g, f) == (to_set(g) in coords)

