import itertools

import pytest

from fltk.errors import CapExceeded
from fltk.hf_kernel import fun_in, fun_subeq, funset_of, is_funset, make, null
from fltk.hierarchy import (count_p, diagonal_exists, enumerate_stage,
                            fevel_chain, fevel_of, fevels_within, hfpot, idx,
                            is_fevel, is_fevel_recursive, is_history,
                            stage_report, well_ordering_violation)


def brute_partial_maps(dom, cod):
    """Oracle: choose a support, then a value for each supported point."""
    out = set()
    for r in range(len(dom) + 1):
        for support in itertools.combinations(dom, r):
            for values in itertools.product(cod, repeat=r):
                out.add(make(zip(support, values)))
    return out


def brute_stage(s):
    universe = set()
    for _ in range(s):
        universe = brute_partial_maps(sorted(universe), sorted(universe))
    return universe


def test_stage_one(z):
    assert enumerate_stage(1) == (z,)


def test_stage_two(z, id0):
    assert enumerate_stage(2) == (z, id0)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_stages_match_brute_force(s):
    assert set(enumerate_stage(s)) == brute_stage(s)
    assert len(enumerate_stage(s)) == count_p(s)


def test_stage_cap():
    with pytest.raises(CapExceeded):
        enumerate_stage(4)
    with pytest.raises(ValueError):
        enumerate_stage(0)


def test_count_p_values():
    assert count_p(1) == 1
    assert count_p(2) == 2
    assert count_p(3) == (2 + 1) ** 2 == 9
    assert count_p(4) == 1_000_000_000
    with pytest.raises(CapExceeded):
        count_p(5)
    with pytest.raises(ValueError):
        count_p(0)


def test_idx(z, id0, F2):
    assert idx(z) == 1
    assert idx(id0) == 2
    assert idx(funset_of(F2)) == 3


def test_stage_soundness(F3):
    for s in (1, 2, 3):
        for f in enumerate_stage(s):
            assert idx(f) <= s
            assert all(idx(x) < idx(f) for x in f.field)


def hfpot_oracle(f, universe):
    return funset_of(x for x in universe
                     if any(fun_subeq(x, g) for g in f.field))


def test_hfpot_examples(z, id0, F3):
    assert hfpot(z) is z
    assert hfpot(funset_of([z])) is funset_of([z])
    # brute force over stage 3: only 0 and [0->0] have field inside {0}
    expected = hfpot_oracle(funset_of([z, id0]), F3)
    assert expected is funset_of([z, id0])
    assert hfpot(funset_of([z, id0])) is expected


def test_hfpot_against_oracle_on_stage_three(F3):
    for f in F3:
        assert hfpot(f) is hfpot_oracle(f, F3)


def test_is_history_examples(z, id0):
    assert is_history(z)
    assert is_history(funset_of([z]))
    assert not is_history(funset_of([id0]))
    assert is_history(funset_of([z, id0]))


def test_is_fevel_examples(z, id0):
    assert is_fevel(z)
    assert is_fevel(id0)
    assert not is_fevel(make([(id0, z)]))
    assert is_fevel_recursive(z)


def test_fevel_predicates_agree_on_stage_three(F3):
    iterative = {funset_of(enumerate_stage(s - 1)) if s > 1 else null()
                 for s in (1, 2, 3)}
    for f in F3:
        assert is_fevel(f) == is_fevel_recursive(f) == (f in iterative)
    assert fevels_within(F3) == sorted(iterative)
    assert len(fevels_within(F3)) == 3


def test_fevels_are_well_ordered(F3):
    assert well_ordering_violation(fevels_within(F3)) is None


def test_well_ordering_detects_incomparable(z, id0):
    assert well_ordering_violation([make([(z, id0)]), make([(id0, z)])]) is not None


def test_fevel_of_examples(z, id0, F2):
    assert fevel_of(z) is z
    assert fevel_of(id0) is id0
    assert fevel_of(make([(id0, z)])) is funset_of(F2)


def test_fevel_of_is_least_including(F3):
    fevels = list(itertools.islice(fevel_chain(), 4))
    assert fevels[3] is funset_of(F3)
    for f in F3:
        s = fevel_of(f)
        assert fun_subeq(f, s) and is_fevel_recursive(s)
        assert not any(fun_subeq(f, t) for t in fevels if fun_in(t, s))
        assert s is (funset_of(enumerate_stage(idx(f) - 1)) if idx(f) > 1
                     else null())


def test_fevel_of_monotone(F3):
    for f, g in itertools.product(F3, repeat=2):
        if fun_in(g, f):
            assert fun_in(fevel_of(g), fevel_of(f))


def test_fevel_chain_hits_cap():
    with pytest.raises(CapExceeded):
        list(itertools.islice(fevel_chain(), 6))


@pytest.mark.parametrize("s", [1, 2, 3])
def test_no_diagonal_function(s):
    assert not diagonal_exists(enumerate_stage(s))


def test_diagonal_fails_at_its_own_argument(z, id0):
    # [0->0] is the only candidate that maps 0 to 0, but it would also
    # have to send itself to itself
    assert not diagonal_exists([z, id0])
    assert not diagonal_exists([id0])


def test_stage_report(F2, F3):
    rep = stage_report(3)
    assert rep.members == F3
    assert len(rep.members) == count_p(3)
    assert rep.fevel_object is funset_of(F2)
    assert is_funset(rep.fevel_object)
