import itertools

import pytest

from fltk.errors import CapExceeded, NotAPair
from fltk.hf_kernel import apply, fun_in, funset_of, make
from fltk.encodings import (apply_n, fst, is_pair, ord_decode, ord_encode,
                            pair, rel_holds, snd)


def test_apply_n_examples(z, id0):
    assert apply_n(id0, []) is id0
    assert apply_n(make([(z, id0)]), [z, z]) is z
    assert apply_n(z, [z]) is None
    assert apply_n(id0, [z, z]) is None


def test_rel_holds_examples(z, id0):
    s = funset_of([id0])
    assert not rel_holds(z, [z], z)
    assert rel_holds(s, [z], z)
    assert not rel_holds(s, [id0], z)


def test_pair_examples(z, id0):
    assert pair(z, z) is make([(z, id0)])
    assert str(pair(z, z)) == "[0->{0}]"


def test_pair_injective_and_decodes(F2):
    for a, b, c, d in itertools.product(F2, repeat=4):
        assert (pair(a, b) is pair(c, d)) == (a is c and b is d)
    for a, b in itertools.product(F2, repeat=2):
        p = pair(a, b)
        assert is_pair(p)
        assert fst(p) is a and snd(p) is b


def test_pair_shape_on_stage_three(F3, z, id0):
    shaped = [f for f in F3 if is_pair(f)]
    assert shaped == sorted([pair(z, z), pair(id0, z)])
    for f in F3:
        if f not in shaped:
            with pytest.raises(NotAPair):
                fst(f)
            with pytest.raises(NotAPair):
                snd(f)


def test_ord_examples(z, id0):
    assert ord_encode(0) is z
    assert ord_encode(1) is id0
    assert ord_encode(2) is make([(z, z), (id0, z)])
    assert str(ord_encode(2)) == "[0->0,{0}->0]"


def test_ord_order_embedding():
    for m, n in itertools.product(range(9), repeat=2):
        assert (m < n) == fun_in(ord_encode(m), ord_encode(n))


def test_ord_round_trip(F3):
    for n in range(9):
        assert ord_decode(ord_encode(n)) == n
    ordinals = {ord_encode(n) for n in range(4)}
    for f in F3:
        if f not in ordinals:
            assert ord_decode(f) is None


def test_ord_caps():
    with pytest.raises(CapExceeded):
        ord_encode(13)
    with pytest.raises(ValueError):
        ord_encode(-1)


def test_currying_agrees_on_stage_three(F3):
    for f, x, y in itertools.product(F3, repeat=3):
        step = apply(f, x)
        expected = None if step is None else apply(step, y)
        assert apply_n(f, [x, y]) is expected
