"""Finite structures for the application language and the axioms on them.

An application structure is a dense table: ``table[f][x]`` is the index of
``f(x)`` or ``None`` when undefined.  Second-order quantifiers range over
every partial (or, for ``Unbounded``, total) map on the finite domain;
maps for which an axiom's antecedent fails are skipped, which leaves the
verdict unchanged.  Defined terms (funset builders, hfpot, pot, lambda
terms) denote only when exactly one element fits the description.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import CapExceeded, DegenerateTokens
from .hf_kernel import HfFun, apply
from .hf_sets import HfSet
from .hierarchy import enumerate_stage, idx

UNDEFINED = None
SECOND_ORDER_CAP = 1_000_000

Row = Tuple[Optional[int], ...]


class AxiomId(enum.Enum):
    FunExt = "FunExt"
    FunOrd = "FunOrd"
    FunStage = "FunStage"
    FunPri = "FunPri"
    FunSpec = "FunSpec"
    FunStrat = "FunStrat"
    FunComp = "FunComp"
    FunEndless = "FunEndless"
    FunInfinity = "FunInfinity"
    FunSupercomp = "FunSupercomp"
    Ext = "Ext"
    Sep = "Sep"
    Strat = "Strat"
    Endless = "Endless"
    Inf = "Inf"
    Unbounded = "Unbounded"
    ChiRange = "ChiRange"


# Axioms are listed cheapest first; sweeps report the first one that fails.
THEORIES: Dict[str, Tuple[AxiomId, ...]] = {
    "flt": (AxiomId.FunExt, AxiomId.FunComp, AxiomId.FunStrat),
    "fst": (AxiomId.FunExt, AxiomId.FunOrd, AxiomId.FunStage,
            AxiomId.FunPri, AxiomId.FunSpec),
    "lt": (AxiomId.Ext, AxiomId.Sep, AxiomId.Strat),
}


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _check_sweep(count: int) -> None:
    if count > SECOND_ORDER_CAP:
        raise CapExceeded(f"second-order sweep over {count} maps")


def _partial_maps(support: Sequence[int], values: Sequence[int]
                  ) -> Iterator[Dict[int, int]]:
    choices = [None, *values]
    for picked in itertools.product(choices, repeat=len(support)):
        yield {x: y for x, y in zip(support, picked) if y is not None}


@dataclass(frozen=True)
class FinStructure:
    """Application table over ``0 .. size-1``.

    ``zero`` and ``one`` optionally designate truth tokens for ChiRange.
    """
    table: Tuple[Row, ...]
    zero: Optional[int] = None
    one: Optional[int] = None

    def __post_init__(self):
        n = len(self.table)
        if n < 1:
            raise ValueError("structures are non-empty")
        for row in self.table:
            if len(row) != n or any(
                    v is not None and not 0 <= v < n for v in row):
                raise ValueError("malformed application table")

    @property
    def size(self) -> int:
        return len(self.table)

    def app(self, f: int, x: int) -> Optional[int]:
        return self.table[f][x]

    @cached_property
    def fields(self) -> Tuple[int, ...]:
        out = []
        for row in self.table:
            mask = 0
            for x, y in enumerate(row):
                if y is not None:
                    mask |= (1 << x) | (1 << y)
            out.append(mask)
        return tuple(out)

    @cached_property
    def _rows(self) -> Dict[Row, List[int]]:
        index: Dict[Row, List[int]] = {}
        for i, row in enumerate(self.table):
            index.setdefault(row, []).append(i)
        return index

    def realize(self, row: Row) -> Optional[int]:
        """The unique element whose row is ``row``, if there is one."""
        hits = self._rows.get(row)
        return hits[0] if hits and len(hits) == 1 else None

    def realize_map(self, mapping: Dict[int, int]) -> Optional[int]:
        return self.realize(tuple(mapping.get(x) for x in range(self.size)))

    def funset_with_field(self, mask: int) -> Optional[int]:
        return self.realize(tuple(x if mask >> x & 1 else None
                                  for x in range(self.size)))

    def fun_in(self, g: int, f: int) -> bool:
        return bool(self.fields[f] >> g & 1)

    def fun_subeq(self, g: int, f: int) -> bool:
        return self.fields[g] & ~self.fields[f] == 0

    @cached_property
    def _hfpot(self) -> Tuple[Optional[int], ...]:
        out = []
        for f in range(self.size):
            mask = 0
            for x in range(self.size):
                if any(self.fun_subeq(x, g) for g in _bits(self.fields[f])):
                    mask |= 1 << x
            out.append(self.funset_with_field(mask))
        return tuple(out)

    def hfpot(self, f: int) -> Optional[int]:
        return self._hfpot[f]

    def is_history(self, h: int) -> bool:
        for x in _bits(self.fields[h]):
            below = self.funset_with_field(self.fields[h] & self.fields[x])
            if below is None or self.hfpot(below) != x:
                return False
        return True

    @cached_property
    def fevels(self) -> FrozenSet[int]:
        return frozenset(self.hfpot(h) for h in range(self.size)
                         if self.hfpot(h) is not None and self.is_history(h))

    def relabel(self, perm: Sequence[int]) -> "FinStructure":
        """Copy with element ``i`` renamed ``perm[i]``."""
        n = self.size
        new: List[List[Optional[int]]] = [[None] * n for _ in range(n)]
        for f in range(n):
            for x in range(n):
                y = self.table[f][x]
                new[perm[f]][perm[x]] = None if y is None else perm[y]
        z = None if self.zero is None else perm[self.zero]
        o = None if self.one is None else perm[self.one]
        return FinStructure(tuple(map(tuple, new)), z, o)

    def canonical_key(self) -> Tuple[Tuple[int, ...], ...]:
        """Least relabelled table, undefined written as -1."""
        return min(tuple(tuple(-1 if v is None else v for v in row)
                         for row in self.relabel(p).table)
                   for p in itertools.permutations(range(self.size)))


@dataclass(frozen=True)
class FstStructure:
    """Two-sorted structure: functions plus ``stage_count`` stages.

    ``before`` holds pairs ``(r, s)`` meaning stage r is before stage s;
    ``found_at`` holds pairs ``(f, s)``.
    """
    functions: FinStructure
    stage_count: int
    before: FrozenSet[Tuple[int, int]]
    found_at: FrozenSet[Tuple[int, int]]

    def found_before(self, f: int, s: int) -> bool:
        return any((f, r) in self.found_at and (r, s) in self.before
                   for r in range(self.stage_count))


@dataclass(frozen=True)
class MembershipStructure:
    """``elem`` holds pairs ``(x, y)`` meaning x is a member of y."""
    size: int
    elem: FrozenSet[Tuple[int, int]]

    @cached_property
    def members(self) -> Tuple[int, ...]:
        out = [0] * self.size
        for x, y in self.elem:
            out[y] |= 1 << x
        return tuple(out)

    @cached_property
    def _by_members(self) -> Dict[int, List[int]]:
        index: Dict[int, List[int]] = {}
        for i, m in enumerate(self.members):
            index.setdefault(m, []).append(i)
        return index

    def with_members(self, mask: int) -> Optional[int]:
        hits = self._by_members.get(mask)
        return hits[0] if hits and len(hits) == 1 else None

    def is_member(self, x: int, y: int) -> bool:
        return bool(self.members[y] >> x & 1)

    @cached_property
    def _pot(self) -> Tuple[Optional[int], ...]:
        out = []
        for a in range(self.size):
            mask = 0
            for x in range(self.size):
                if any(self.members[x] & ~self.members[c] == 0
                       for c in _bits(self.members[a])):
                    mask |= 1 << x
            out.append(self.with_members(mask))
        return tuple(out)

    def pot(self, a: int) -> Optional[int]:
        return self._pot[a]

    def is_history(self, h: int) -> bool:
        for x in _bits(self.members[h]):
            meet = self.with_members(self.members[x] & self.members[h])
            if meet is None or self.pot(meet) != x:
                return False
        return True

    @cached_property
    def levels(self) -> FrozenSet[int]:
        return frozenset(self.pot(h) for h in range(self.size)
                         if self.pot(h) is not None and self.is_history(h))

    def relabel(self, perm: Sequence[int]) -> "MembershipStructure":
        return MembershipStructure(
            self.size, frozenset((perm[x], perm[y]) for x, y in self.elem))

    def canonical_key(self):
        return min(tuple(sorted(self.relabel(p).elem))
                   for p in itertools.permutations(range(self.size)))


# application-language axioms

def _fun_ext(s: FinStructure) -> bool:
    return len(s._rows) == s.size


def _lambda_sweep(s: FinStructure, values_of) -> bool:
    """Every map supported on some element's field is realized.

    ``values_of(mask)`` gives the allowed values for that field.
    """
    for mask in sorted(set(s.fields)):
        support = list(_bits(mask))
        values = values_of(mask)
        _check_sweep((len(values) + 1) ** len(support))
        for mapping in _partial_maps(support, values):
            if s.realize_map(mapping) is None:
                return False
    return True


def _fun_comp(s: FinStructure) -> bool:
    return _lambda_sweep(s, lambda mask: list(_bits(mask)))


def _fun_supercomp(s: FinStructure) -> bool:
    return _lambda_sweep(s, lambda mask: list(range(s.size)))


def _fun_strat(s: FinStructure) -> bool:
    return all(any(s.fun_subeq(a, lev) for lev in s.fevels)
               for a in range(s.size))


def _fun_endless(s: FinStructure) -> bool:
    return all(any(s.fun_in(x, t) for t in s.fevels) for x in s.fevels)


def _fun_infinity(s: FinStructure) -> bool:
    fev = s.fevels
    for top in fev:
        if not s.fields[top]:
            continue
        if all(any(s.fun_in(q, r) and s.fun_in(r, top) for r in fev)
               for q in fev if s.fun_in(q, top)):
            return True
    return False


def _chi_range(s: FinStructure) -> bool:
    if s.zero is None or s.one is None:
        raise ValueError("ChiRange needs designated zero and one")
    return all(v == s.zero or v == s.one for row in s.table for v in row)


# stage axioms

def _fun_ord(s: FstStructure) -> bool:
    return all((r, t) in s.before
               for r, x in s.before for y, t in s.before if x == y)


def _fun_stage(s: FstStructure) -> bool:
    return all(any((f, t) in s.found_at for t in range(s.stage_count))
               for f in range(s.functions.size))


def _fun_pri(s: FstStructure) -> bool:
    fs = s.functions
    return all(s.found_before(x, t)
               for f, t in s.found_at for x in _bits(fs.fields[f]))


def _fun_spec(s: FstStructure) -> bool:
    fs = s.functions
    for t in range(s.stage_count):
        earlier = [x for x in range(fs.size) if s.found_before(x, t)]
        _check_sweep((len(earlier) + 1) ** len(earlier))
        for mapping in _partial_maps(earlier, earlier):
            made = fs.realize_map(mapping)
            if made is None or (made, t) not in s.found_at:
                return False
    return True


# membership axioms

def _ext(m: MembershipStructure) -> bool:
    return len(set(m.members)) == m.size


def _sep(m: MembershipStructure) -> bool:
    for a in range(m.size):
        elems = list(_bits(m.members[a]))
        _check_sweep(2 ** len(elems))
        for r in range(len(elems) + 1):
            for chosen in itertools.combinations(elems, r):
                if m.with_members(sum(1 << x for x in chosen)) is None:
                    return False
    return True


def _strat(m: MembershipStructure) -> bool:
    return all(any(m.members[a] & ~m.members[lev] == 0 for lev in m.levels)
               for a in range(m.size))


def _endless(m: MembershipStructure) -> bool:
    return all(any(m.is_member(s, t) for t in m.levels) for s in m.levels)


def _inf(m: MembershipStructure) -> bool:
    lev = m.levels
    for top in lev:
        if not m.members[top]:
            continue
        if all(any(m.is_member(q, r) and m.is_member(r, top) for r in lev)
               for q in lev if m.is_member(q, top)):
            return True
    return False


def _unbounded(m: MembershipStructure) -> bool:
    for a in range(m.size):
        elems = list(_bits(m.members[a]))
        _check_sweep(m.size ** len(elems))
        for images in itertools.product(range(m.size), repeat=len(elems)):
            if not any(all(m.is_member(y, lev) for y in images)
                       for lev in m.levels):
                return False
    return True


_APP_AXIOMS = {
    AxiomId.FunExt: _fun_ext,
    AxiomId.FunComp: _fun_comp,
    AxiomId.FunStrat: _fun_strat,
    AxiomId.FunEndless: _fun_endless,
    AxiomId.FunInfinity: _fun_infinity,
    AxiomId.FunSupercomp: _fun_supercomp,
    AxiomId.ChiRange: _chi_range,
}
_STAGE_AXIOMS = {
    AxiomId.FunOrd: _fun_ord,
    AxiomId.FunStage: _fun_stage,
    AxiomId.FunPri: _fun_pri,
    AxiomId.FunSpec: _fun_spec,
}
_SET_AXIOMS = {
    AxiomId.Ext: _ext,
    AxiomId.Sep: _sep,
    AxiomId.Strat: _strat,
    AxiomId.Endless: _endless,
    AxiomId.Inf: _inf,
    AxiomId.Unbounded: _unbounded,
}


def eval_axiom(s, a: AxiomId) -> bool:
    """Truth of axiom ``a`` in structure ``s`` under full semantics.

    Function axioms also apply to the function sort of an FstStructure.
    """
    a = AxiomId(a)
    if isinstance(s, MembershipStructure):
        fn = _SET_AXIOMS.get(a)
    elif isinstance(s, FstStructure):
        if a in _STAGE_AXIOMS:
            return _STAGE_AXIOMS[a](s)
        fn, s = _APP_AXIOMS.get(a), s.functions
    elif isinstance(s, FinStructure):
        fn = _APP_AXIOMS.get(a)
    else:
        raise TypeError(f"not a structure: {type(s).__name__}")
    if fn is None:
        raise ValueError(f"{a.value} does not apply to {type(s).__name__}")
    return fn(s)


def satisfies(s, axioms: Iterable[AxiomId]) -> bool:
    return all(eval_axiom(s, a) for a in axioms)


def first_failure(s, axioms: Iterable[AxiomId]) -> Optional[AxiomId]:
    for a in axioms:
        if not eval_axiom(s, a):
            return a
    return None


# hierarchies as structures

def _table_of(universe: Sequence[HfFun]) -> Tuple[Row, ...]:
    pos = {f: i for i, f in enumerate(universe)}
    return tuple(tuple(None if apply(f, x) is None else pos[apply(f, x)]
                       for x in universe) for f in universe)


def hierarchy_as_structure(stage: int) -> FinStructure:
    return FinStructure(_table_of(enumerate_stage(stage)))


def hierarchy_as_fst(stage: int) -> FstStructure:
    """Stage ``t`` (index ``t - 1``) finds every f with idx(f) <= t."""
    universe = enumerate_stage(stage)
    before = frozenset((r, t) for r in range(stage) for t in range(stage)
                       if r < t)
    found = frozenset((i, t) for i, f in enumerate(universe)
                      for t in range(stage) if idx(f) <= t + 1)
    return FstStructure(FinStructure(_table_of(universe)), stage, before, found)


def membership_structure(sets: Sequence[HfSet]) -> MembershipStructure:
    pos = {a: i for i, a in enumerate(sets)}
    return MembershipStructure(len(sets), frozenset(
        (pos[x], pos[y]) for y in sets for x in y if x in pos))


def chi_translate(m: MembershipStructure, zero: int, one: int) -> FinStructure:
    """Read membership as application: y(x) = one iff x is in y."""
    if zero == one:
        raise DegenerateTokens("zero and one must differ")
    table = tuple(tuple(one if m.is_member(x, y) else zero
                        for x in range(m.size)) for y in range(m.size))
    return FinStructure(table, zero, one)


def chi_designated_clauses(s: FinStructure) -> Tuple[bool, bool]:
    """(zero(x) = zero for all x, one(x) = one exactly when x = zero)."""
    z, o = s.zero, s.one
    first = all(s.app(z, x) == z for x in range(s.size))
    second = all((s.app(o, x) == o) == (x == z) for x in range(s.size))
    return first, second


# exhaustive sweeps

@dataclass
class SweepReport:
    theory: str
    size: int
    candidates: int = 0
    models: List = field(default_factory=list)
    classes: List[List] = field(default_factory=list)
    per_axiom_failures: Dict[str, int] = field(default_factory=dict)

    @property
    def iso_classes(self) -> int:
        return len(self.classes)

    def as_dict(self) -> dict:
        return {
            "theory": self.theory,
            "size": self.size,
            "candidates": self.candidates,
            "models": len(self.models),
            "iso_classes": self.iso_classes,
            "per_axiom_failures": dict(self.per_axiom_failures),
        }


def _group(models, key) -> List[List]:
    groups: Dict = {}
    for m in models:
        groups.setdefault(key(m), []).append(m)
    return [groups[k] for k in sorted(groups)]


def _tally(report: SweepReport, candidates, axioms, key) -> SweepReport:
    fails = {a.value: 0 for a in axioms}
    for cand in candidates:
        report.candidates += 1
        bad = first_failure(cand, axioms)
        if bad is None:
            report.models.append(cand)
        else:
            fails[bad.value] += 1
    report.per_axiom_failures = fails
    report.classes = _group(report.models, key)
    return report


def all_tables(n: int) -> Iterator[FinStructure]:
    rows = list(itertools.product([None, *range(n)], repeat=n))
    for table in itertools.product(rows, repeat=n):
        yield FinStructure(table)


def enumerate_flt_models(n: int) -> SweepReport:
    """Every application table of size ``n`` satisfying FLT, up to iso."""
    if not 1 <= n <= 3:
        raise CapExceeded("FLT sweeps are limited to sizes 1..3")
    return _tally(SweepReport("flt", n), all_tables(n), THEORIES["flt"],
                  FinStructure.canonical_key)


def enumerate_lt_models(n: int) -> SweepReport:
    if not 1 <= n <= 4:
        raise CapExceeded("LT sweeps are limited to sizes 1..4")
    cells = [(x, y) for x in range(n) for y in range(n)]

    def candidates():
        for bits in range(2 ** len(cells)):
            yield MembershipStructure(n, frozenset(
                c for i, c in enumerate(cells) if bits >> i & 1))

    return _tally(SweepReport("lt", n), candidates(), THEORIES["lt"],
                  MembershipStructure.canonical_key)


def enumerate_fst_models(n: int) -> SweepReport:
    """FST models with ``n`` functions and 1..n stages.

    Models are grouped by the isomorphism type of their function sort.
    """
    if not 1 <= n <= 2:
        raise CapExceeded("FST sweeps are limited to sizes 1..2")

    def candidates():
        for fs in all_tables(n):
            for m in range(1, n + 1):
                pairs = [(r, t) for r in range(m) for t in range(m)]
                finds = [(f, t) for f in range(n) for t in range(m)]
                for b in range(2 ** len(pairs)):
                    before = frozenset(p for i, p in enumerate(pairs)
                                       if b >> i & 1)
                    for c in range(2 ** len(finds)):
                        found = frozenset(p for i, p in enumerate(finds)
                                          if c >> i & 1)
                        yield FstStructure(fs, m, before, found)

    return _tally(SweepReport("fst", n), candidates(), THEORIES["fst"],
                  lambda s: s.functions.canonical_key())


SWEEPS = {
    "flt": enumerate_flt_models,
    "fst": enumerate_fst_models,
    "lt": enumerate_lt_models,
}


def check_theory(theory: str, max_size: int) -> List[SweepReport]:
    try:
        sweep = SWEEPS[theory]
    except KeyError:
        raise ValueError(f"unknown theory {theory!r}") from None
    return [sweep(n) for n in range(1, max_size + 1)]


def reports_to_json(reports: Sequence[SweepReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2)


def quasi_categoricity(max_size: int = 3) -> Dict[int, Optional[int]]:
    """For each size, the hierarchy stage every FLT model matches.

    ``None`` means no model of that size exists; a size whose models are
    not all isomorphic to one hierarchy raises AssertionError.
    """
    stage_by_size = {len(enumerate_stage(k)): k for k in range(1, 4)}
    out: Dict[int, Optional[int]] = {}
    for n in range(1, max_size + 1):
        report = enumerate_flt_models(n)
        if not report.models:
            out[n] = None
            continue
        k = stage_by_size.get(n)
        assert k is not None and report.iso_classes == 1, n
        assert report.classes[0][0].canonical_key() == \
            hierarchy_as_structure(k).canonical_key(), n
        out[n] = k
    return out
