"""Expression language: tokenizer, recursive-descent parser, canonical
printer and evaluator.

Grammar::

    expr  := "0" | NAT | "[" [entry ("," entry)*] "]"
           | "{" [expr ("," expr)*] "}" | "set" "{" [expr ("," expr)*] "}"
           | ident "(" [expr ("," expr)*] ")" | ident
    entry := expr "->" expr

``NAT`` (a positive decimal) only feeds numeric operations such as ``ord``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import category, encodings, hf_sets, hierarchy, translate
from .errors import ArityError, EvalError, ParseError, SourcePos, UnboundName
from .hf_kernel import HfFun, funset_of, is_funset, make, null
from .hf_sets import HfSet

MAX_DEPTH = 200


class Undefined:
    """Result of an application outside a function's domain."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEF"

    def __bool__(self):
        return False


UNDEF = Undefined()


# AST

@dataclass(frozen=True)
class NullLit:
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class NatLit:
    value: int
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class FunLit:
    entries: Tuple[Tuple["Term", "Term"], ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class FunsetLit:
    elems: Tuple["Term", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SetLit:
    elems: Tuple["Term", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class Call:
    op: str
    args: Tuple["Term", ...]
    pos: Optional[SourcePos] = field(default=None, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Optional[SourcePos] = field(default=None, compare=False)


Term = Union[NullLit, NatLit, FunLit, FunsetLit, SetLit, Call, Var]


# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<arrow>->)
  | (?P<num>[0-9]+)
  | (?P<ident>[a-z][a-z0-9_]*)
  | (?P<punct>[\[\]{}(),])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: SourcePos


def _position(text: str, offset: int) -> SourcePos:
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return SourcePos(line, offset - start + 1)


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}",
                             _position(text, i))
        kind = m.lastgroup
        if kind != "ws":
            word = m.group()
            if kind == "punct":
                kind = word
            elif kind == "arrow":
                kind = "->"
            elif kind == "num" and len(word) > 1 and word[0] == "0":
                raise ParseError("leading zero in number", _position(text, i))
            out.append(Token(kind, word, _position(text, i)))
        i = m.end()
    out.append(Token("eof", "", _position(text, len(text))))
    return out


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def expect(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            raise ParseError(f"unexpected {_describe(tok)}", tok.pos, {kind})
        self.i += 1
        return tok

    def sequence(self, close: str, item) -> list:
        items = []
        if self.tok.kind == close:
            self.i += 1
            return items
        while True:
            items.append(item())
            tok = self.tok
            if tok.kind == ",":
                self.i += 1
            elif tok.kind == close:
                self.i += 1
                return items
            else:
                raise ParseError(f"unexpected {_describe(tok)}", tok.pos,
                                 {",", close})

    def entry(self):
        a = self.expr()
        self.expect("->")
        return (a, self.expr())

    def expr(self) -> Term:
        tok = self.tok
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", tok.pos)
        try:
            return self._expr(tok)
        finally:
            self.depth -= 1

    def _expr(self, tok: Token) -> Term:
        kind = tok.kind
        if kind == "num":
            self.i += 1
            if tok.text == "0":
                return NullLit(tok.pos)
            return NatLit(int(tok.text), tok.pos)
        if kind == "[":
            self.i += 1
            return FunLit(tuple(self.sequence("]", self.entry)), tok.pos)
        if kind == "{":
            self.i += 1
            return FunsetLit(tuple(self.sequence("}", self.expr)), tok.pos)
        if kind == "ident":
            self.i += 1
            if tok.text == "set":
                self.expect("{")
                return SetLit(tuple(self.sequence("}", self.expr)), tok.pos)
            if self.tok.kind == "(":
                if tok.text not in OPS:
                    raise ParseError(f"unknown operation {tok.text!r}",
                                     tok.pos)
                self.i += 1
                return Call(tok.text, tuple(self.sequence(")", self.expr)),
                            tok.pos)
            return Var(tok.text, tok.pos)
        raise ParseError(f"unexpected {_describe(tok)}", tok.pos,
                         {"expression"})


def parse(text: str) -> Term:
    """Parse one expression; raises ParseError with a 1-based position."""
    p = _Parser(text)
    term = p.expr()
    if p.tok.kind != "eof":
        raise ParseError(f"unexpected {_describe(p.tok)}", p.tok.pos,
                         {"end of input"})
    return term


def format_term(t: Term) -> str:
    """Compact source text for an AST (entries kept in source order)."""
    if isinstance(t, NullLit):
        return "0"
    if isinstance(t, NatLit):
        return str(t.value)
    if isinstance(t, FunLit):
        return "[" + ",".join(f"{format_term(a)}->{format_term(v)}"
                              for a, v in t.entries) + "]"
    if isinstance(t, FunsetLit):
        return "{" + ",".join(map(format_term, t.elems)) + "}"
    if isinstance(t, SetLit):
        return "set{" + ",".join(map(format_term, t.elems)) + "}"
    if isinstance(t, Call):
        return t.op + "(" + ",".join(map(format_term, t.args)) + ")"
    if isinstance(t, Var):
        return t.name
    raise TypeError(f"not a term: {t!r}")


# canonical printing

_printed: Dict[int, str] = {}
_printed_sets: Dict[int, str] = {}


def print_canonical(v) -> str:
    """Bit-exact text of a value: ``0``, ``{..}``, ``[a->v,..]``, ``set{..}``."""
    if isinstance(v, HfFun):
        return _print_fun(v)
    if isinstance(v, HfSet):
        return _print_set(v)
    if v is UNDEF or v is None:
        return "undef"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    raise TypeError(f"cannot print {type(v).__name__}")


def _print_fun(f: HfFun) -> str:
    out = _printed.get(f.id)
    if out is None:
        if not f.graph:
            out = "0"
        elif is_funset(f):
            out = "{" + ",".join(_print_fun(a) for a, _ in f.graph) + "}"
        else:
            out = "[" + ",".join(f"{_print_fun(a)}->{_print_fun(v)}"
                                 for a, v in f.graph) + "]"
        _printed[f.id] = out
    return out


def _print_set(a: HfSet) -> str:
    out = _printed_sets.get(a.id)
    if out is None:
        out = "set{" + ",".join(map(_print_set, a.elements)) + "}"
        _printed_sets[a.id] = out
    return out


# evaluation

Value = Union[HfFun, HfSet, bool, int, Undefined]


@dataclass(frozen=True)
class Op:
    name: str
    min_args: int
    max_args: Optional[int]
    fn: Callable
    kinds: str
    doc: str


def _fun(v, op):
    if not isinstance(v, HfFun):
        raise EvalError(f"{op} expects a function, got {print_canonical(v)}")
    return v


def _set(v, op):
    if not isinstance(v, HfSet):
        raise EvalError(f"{op} expects a set, got {print_canonical(v)}")
    return v


def _nat(v, op):
    if isinstance(v, HfFun) and not v.graph:
        return 0
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise EvalError(f"{op} expects a natural number")


def _rank(v):
    if isinstance(v, HfFun):
        return hierarchy.idx(v)
    if isinstance(v, HfSet):
        return v.rank
    raise EvalError("rank expects a function or a set")


def _card(v):
    if isinstance(v, HfFun):
        return len(v.field)
    if isinstance(v, HfSet):
        return len(v)
    raise EvalError("card expects a function or a set")


def _rel(f, *rest):
    *args, z = rest
    return encodings.rel_holds(f, args, z)


def _optional(v):
    return UNDEF if v is None else v


# kinds: f function, s set, n natural, a any; the last kind repeats.
OPS: Dict[str, Op] = {op.name: op for op in [
    Op("apply", 1, None, lambda f, *xs: _optional(encodings.apply_n(f, xs)),
       "ff", "curried application apply(f, x, ...)"),
    Op("dom", 1, 1, category.dom, "f", "funset of arguments"),
    Op("cod", 1, 1, category.cod, "f", "funset of values"),
    Op("comp", 2, 2, category.compose, "ff", "comp(g, f) = g after f"),
    Op("pair", 2, 2, encodings.pair, "ff", "encoded ordered pair"),
    Op("fst", 1, 1, encodings.fst, "f", "first coordinate"),
    Op("snd", 1, 1, encodings.snd, "f", "second coordinate"),
    Op("ord", 1, 1, encodings.ord_encode, "n", "encoded ordinal"),
    Op("unord", 1, 1, lambda f: _optional(encodings.ord_decode(f)), "f",
       "decode an ordinal"),
    Op("rel", 2, None, _rel, "f", "rel(f, x1, ..., z)"),
    Op("fevel", 1, 1, hierarchy.fevel_of, "f", "least fevel including f"),
    Op("hfpot", 1, 1, hierarchy.hfpot, "f", "hfpot"),
    Op("isfevel", 1, 1, hierarchy.is_fevel, "f", "fevel test"),
    Op("isfunset", 1, 1, is_funset, "f", "partial identity test"),
    Op("stage", 1, 1, lambda n: funset_of(hierarchy.enumerate_stage(n)),
       "n", "funset of a stage"),
    Op("levof", 1, 1, hf_sets.lev_of, "s", "least level including a"),
    Op("pot", 1, 1, hf_sets.pot, "s", "pot"),
    Op("islevel", 1, 1, hf_sets.is_level, "s", "level test"),
    Op("kpair", 2, 2, hf_sets.kpair, "ss", "Kuratowski pair"),
    Op("member", 2, 2, hf_sets.member, "ss", "member(x, a)"),
    Op("chi", 2, 2, hf_sets.chi_app, "ss", "characteristic application"),
    Op("funin", 2, 2, lambda g, f: g in f.field, "ff", "g in f's field"),
    Op("toset", 1, 1, translate.to_set, "f", "function to set"),
    Op("tofun", 1, 1, translate.to_fun, "s", "set to function"),
    Op("times", 2, 2, category.cartesian_funset, "ff", "cartesian funset"),
    Op("rank", 1, 1, _rank, "a", "stage index or set rank"),
    Op("card", 1, 1, _card, "a", "field size or number of members"),
]}


def _coerce(op: Op, args: Sequence[Value]) -> list:
    out = []
    for i, v in enumerate(args):
        kind = op.kinds[min(i, len(op.kinds) - 1)]
        if kind == "f":
            out.append(_fun(v, op.name))
        elif kind == "s":
            out.append(_set(v, op.name))
        elif kind == "n":
            out.append(_nat(v, op.name))
        else:
            out.append(v)
    return out


def evaluate(t: Term, env: Optional[Mapping[str, Value]] = None) -> Value:
    """Value of ``t``; undefined sub-results make the whole call undefined."""
    env = env or {}
    if isinstance(t, NullLit):
        return null()
    if isinstance(t, NatLit):
        return t.value
    if isinstance(t, Var):
        if t.name not in env:
            raise UnboundName(f"unbound name {t.name!r}")
        return env[t.name]
    if isinstance(t, (FunLit, FunsetLit, SetLit)):
        return _literal(t, env)
    if isinstance(t, Call):
        op = OPS.get(t.op)
        if op is None:
            raise UnboundName(f"unknown operation {t.op!r}")
        n = len(t.args)
        if n < op.min_args or (op.max_args is not None and n > op.max_args):
            want = (str(op.min_args) if op.max_args == op.min_args
                    else f"at least {op.min_args}" if op.max_args is None
                    else f"{op.min_args}..{op.max_args}")
            raise ArityError(f"{t.op} takes {want} argument(s), got {n}")
        args = [evaluate(a, env) for a in t.args]
        if any(a is UNDEF for a in args):
            return UNDEF
        return op.fn(*_coerce(op, args))
    raise TypeError(f"not a term: {t!r}")


def _literal(t, env):
    if isinstance(t, SetLit):
        elems = [evaluate(e, env) for e in t.elems]
        if any(e is UNDEF for e in elems):
            return UNDEF
        return hf_sets.set_of(_set(e, "set{...}") for e in elems)
    if isinstance(t, FunsetLit):
        elems = [evaluate(e, env) for e in t.elems]
        if any(e is UNDEF for e in elems):
            return UNDEF
        return funset_of(_fun(e, "{...}") for e in elems)
    pairs = []
    for a, v in t.entries:
        a, v = evaluate(a, env), evaluate(v, env)
        if a is UNDEF or v is UNDEF:
            return UNDEF
        pairs.append((_fun(a, "[...]"), _fun(v, "[...]")))
    return make(pairs)


def eval_text(text: str, env: Optional[Mapping[str, Value]] = None) -> Value:
    return evaluate(parse(text), env)


def parse_value(text: str):
    """Parse and evaluate a closed literal, e.g. a line of translate input."""
    return evaluate(parse(text), {})
