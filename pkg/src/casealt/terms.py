"""Lambda terms extended with the logical vocabulary of event semantics.

The same term language serves both semantic frameworks.  Dependent-type
style formulas (``Sig e:ev. praise(e,x,y) * k(e)``) and first-order
neo-Davidsonian formulas (``exists e (run(e) & Ag(e)=j)``) share one
representation; the :class:`SemSyntax` tag only selects concrete syntax.

Concrete grammar (ASCII, Unicode aliases in brackets)::

    expr    := "\\" ident+ "." expr                 [λ]
             | "Sig" ident (":" ident)? "." expr    [Σ]
             | "exists" ident ( "." expr | "(" expr ")" )   [∃]
             | conj
    conj    := eq (("*" | "&") expr)?              [× ∧]
    eq      := app ("=" app)?
    app     := postfix postfix*                    (left-associative)
    postfix := primary ("(" expr ("," expr)* ")")*  (no space before "(")
    primary := ident | "?" ident | "T" | "(" expr ")" | binder   [⊤]

Identifier classification: a bound identifier is always a variable.  A free
identifier is ``Top`` if it is ``T``, a constant if listed in ``constants``,
a variable if it is a single letter optionally followed by digits or primes
(``x``, ``k``, ``Q1``, ``V``), and a constant otherwise (``praise``, ``Ag``).
``?name`` forces a free variable.  ``#`` starts a comment.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

__all__ = [
    "Term", "Var", "Const", "Abs", "App", "Exists", "Conj", "Atom", "Eq", "Top", "TOP",
    "SemSyntax", "TermSyntaxError", "FuelExhausted", "DEFAULT_FUEL",
    "app", "lam", "conj", "parse_term", "print_term", "substitute", "beta_normalize",
    "normalize", "alpha_equal", "free_vars", "term_constants", "fresh_name",
]

DEFAULT_FUEL = 10_000


class SemSyntax(str, enum.Enum):
    DTS = "dts"
    FOL = "fol"


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class FuelExhausted(RuntimeError):
    """Raised when beta reduction exceeds its step budget."""


class Term:
    """Base class of all term nodes.  Subclasses are frozen dataclasses."""

    @cached_property
    def free(self) -> frozenset[str]:
        return _free(self)

    def __str__(self) -> str:
        return print_term(self)


@dataclass(frozen=True, eq=True)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=True)
class Const(Term):
    name: str


@dataclass(frozen=True, eq=True)
class Abs(Term):
    var: str
    body: Term


@dataclass(frozen=True, eq=True)
class App(Term):
    fun: Term
    arg: Term

    def __post_init__(self):
        # constant-headed applications are atoms; build them through app()
        if isinstance(self.fun, (Const, Atom)):
            raise TypeError("App head may not be a constant or atom; use app()")


@dataclass(frozen=True, eq=True)
class Exists(Term):
    var: str
    body: Term


@dataclass(frozen=True, eq=True)
class Conj(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=True)
class Atom(Term):
    pred: str
    args: tuple[Term, ...]

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError(f"atom {self.pred} needs at least one argument")


@dataclass(frozen=True, eq=True)
class Eq(Term):
    left: Term
    right: Term


@dataclass(frozen=True, eq=True)
class Top(Term):
    pass


TOP = Top()


# ---------------------------------------------------------------------------
# constructors

def app(fun: Term, *args: Term) -> Term:
    """Curried application.  Applying a constant or an atom extends an atom."""
    for arg in args:
        if isinstance(fun, Const):
            fun = Atom(fun.name, (arg,))
        elif isinstance(fun, Atom):
            fun = Atom(fun.pred, fun.args + (arg,))
        else:
            fun = App(fun, arg)
    return fun


def lam(names: str | Iterable[str], body: Term) -> Term:
    if isinstance(names, str):
        names = names.split()
    for name in reversed(list(names)):
        body = Abs(name, body)
    return body


def conj(*terms: Term) -> Term:
    """Right-nested conjunction of one or more terms."""
    if not terms:
        raise ValueError("conj() needs at least one term")
    result = terms[-1]
    for t in reversed(terms[:-1]):
        result = Conj(t, result)
    return result


# ---------------------------------------------------------------------------
# variables

def _free(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, (Abs, Exists)):
        return t.body.free - {t.var}
    if isinstance(t, (App,)):
        return t.fun.free | t.arg.free
    if isinstance(t, (Conj, Eq)):
        return t.left.free | t.right.free
    if isinstance(t, Atom):
        return frozenset().union(*(a.free for a in t.args))
    return frozenset()


def free_vars(term: Term) -> frozenset[str]:
    return term.free


def _all_names(t: Term, out: set[str]) -> set[str]:
    """Every variable name, bound or free, occurring in ``t``."""
    if isinstance(t, Var):
        out.add(t.name)
    elif isinstance(t, (Abs, Exists)):
        out.add(t.var)
        _all_names(t.body, out)
    elif isinstance(t, App):
        _all_names(t.fun, out)
        _all_names(t.arg, out)
    elif isinstance(t, (Conj, Eq)):
        _all_names(t.left, out)
        _all_names(t.right, out)
    elif isinstance(t, Atom):
        for a in t.args:
            _all_names(a, out)
    return out


def term_constants(term: Term) -> frozenset[str]:
    """Names of constants and atom predicates occurring in ``term``."""
    out: set[str] = set()

    def walk(t: Term) -> None:
        if isinstance(t, Const):
            out.add(t.name)
        elif isinstance(t, (Abs, Exists)):
            walk(t.body)
        elif isinstance(t, App):
            walk(t.fun)
            walk(t.arg)
        elif isinstance(t, (Conj, Eq)):
            walk(t.left)
            walk(t.right)
        elif isinstance(t, Atom):
            out.add(t.pred)
            for a in t.args:
                walk(a)

    walk(term)
    return frozenset(out)


_TRAILING = re.compile(r"[0-9']+$")


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    stem = _TRAILING.sub("", base) or base
    i = 1
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def substitute(term: Term, var: str, value: Term) -> Term:
    """Capture-avoiding substitution of ``value`` for free ``var`` in ``term``."""
    if var not in term.free:
        return term
    if isinstance(term, Var):
        return value
    if isinstance(term, (Abs, Exists)):
        binder, body = term.var, term.body
        if binder in value.free:
            new = fresh_name(binder, body.free | value.free | {var})
            body = substitute(body, binder, Var(new))
            binder = new
        return type(term)(binder, substitute(body, var, value))
    if isinstance(term, App):
        return app(substitute(term.fun, var, value), substitute(term.arg, var, value))
    if isinstance(term, Atom):
        return Atom(term.pred, tuple(substitute(a, var, value) for a in term.args))
    if isinstance(term, (Conj, Eq)):
        return type(term)(substitute(term.left, var, value), substitute(term.right, var, value))
    raise TypeError(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# reduction

def normalize(term: Term, fuel: int = DEFAULT_FUEL, strategy: str = "outermost") -> tuple[Term, int]:
    """Beta-normalize ``term``; return the normal form and the number of contractions.

    ``strategy`` is ``"outermost"`` (normal order, leftmost-outermost first) or
    ``"innermost"`` (arguments first, rightmost-innermost).
    """
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    steps = 0

    def contract(f: Abs, arg: Term) -> Term:
        nonlocal steps
        steps += 1
        if steps > fuel:
            raise FuelExhausted(f"beta reduction exceeded {fuel} steps")
        return substitute(f.body, f.var, arg)

    def whnf(t: Term) -> Term:
        while isinstance(t, App):
            f = whnf(t.fun)
            if isinstance(f, Abs):
                t = contract(f, t.arg)
            else:
                return app(f, t.arg)
        return t

    def outer(t: Term) -> Term:
        t = whnf(t)
        return _map_children(t, outer)

    def inner(t: Term) -> Term:
        if isinstance(t, App):
            a = inner(t.arg)
            f = inner(t.fun)
            if isinstance(f, Abs):
                return inner(contract(f, a))
            return app(f, a)
        return _map_children(t, inner)

    run = {"outermost": outer, "innermost": inner}.get(strategy)
    if run is None:
        raise ValueError(f"unknown strategy {strategy!r}")
    try:
        result = run(term)
    except RecursionError:
        raise FuelExhausted("reduction nested too deeply") from None
    return result, steps


def _map_children(t: Term, f) -> Term:
    if isinstance(t, App):
        return app(f(t.fun), f(t.arg))
    if isinstance(t, (Abs, Exists)):
        return type(t)(t.var, f(t.body))
    if isinstance(t, (Conj, Eq)):
        return type(t)(f(t.left), f(t.right))
    if isinstance(t, Atom):
        return Atom(t.pred, tuple(f(a) for a in t.args))
    return t


def beta_normalize(term: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return normalize(term, fuel)[0]


def alpha_equal(a: Term, b: Term) -> bool:
    """Structural equality up to renaming of bound variables."""
    return _aeq(a, b, {}, {}, 0)


def _aeq(a: Term, b: Term, ea: dict, eb: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        ia, ib = ea.get(a.name), eb.get(b.name)
        if ia is None and ib is None:
            return a.name == b.name
        return ia == ib
    if isinstance(a, (Abs, Exists)):
        return _aeq(a.body, b.body, {**ea, a.var: depth}, {**eb, b.var: depth}, depth + 1)
    if isinstance(a, App):
        return _aeq(a.fun, b.fun, ea, eb, depth) and _aeq(a.arg, b.arg, ea, eb, depth)
    if isinstance(a, (Conj, Eq)):
        return _aeq(a.left, b.left, ea, eb, depth) and _aeq(a.right, b.right, ea, eb, depth)
    if isinstance(a, Atom):
        return (a.pred == b.pred and len(a.args) == len(b.args)
                and all(_aeq(x, y, ea, eb, depth) for x, y in zip(a.args, b.args)))
    return a == b


# ---------------------------------------------------------------------------
# concrete syntax

_VAR_PATTERN = re.compile(r"^[A-Za-z][0-9']*$")
_KEYWORDS = {"Sig", "exists"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<lam>\\|λ)
  | (?P<sig>Σ)
  | (?P<ex>∃)
  | (?P<top>⊤)
  | (?P<conj>\*|×|&|∧)
  | (?P<punct>[.,():=])
  | (?P<qvar>\?[A-Za-z_][A-Za-z0-9_']*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    spaced: bool  # preceded by whitespace


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, spaced = 0, False
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "ws":
            spaced = True
        else:
            tok = m.group()
            if kind == "ident" and tok == "Sig":
                kind = "sig"
            elif kind == "ident" and tok == "exists":
                kind = "ex"
            toks.append(_Tok(kind, tok, pos, spaced))
            spaced = False
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), spaced))
    return toks


def _is_var_name(name: str) -> bool:
    return bool(_VAR_PATTERN.match(name)) and name != "T"


class _TermParser:
    def __init__(self, text: str, constants: frozenset[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.constants = constants
        self.scope: list[tuple[str, str]] = []  # (source name, internal name)
        self.used: set[str] = {t.text for t in self.toks if t.kind == "ident"}
        self.bound_once: set[str] = set()

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise TermSyntaxError(f"expected {want!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.advance()

    def at(self, kind: str, text: str | None = None) -> bool:
        return self.tok.kind == kind and (text is None or self.tok.text == text)

    def parse(self) -> Term:
        term = self.expr()
        if not self.at("eof"):
            raise TermSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return term

    # binder names are made unique across the whole term
    def bind(self, name: str) -> str:
        if name in _KEYWORDS:
            raise TermSyntaxError(f"reserved word {name!r} used as a variable", self.tok.pos)
        internal = name
        if name in self.bound_once:
            internal = fresh_name(name, self.used | self.bound_once)
            self.used.add(internal)
        self.bound_once.add(internal)
        self.scope.append((name, internal))
        return internal

    def unbind(self, count: int) -> None:
        del self.scope[len(self.scope) - count:]

    def lookup(self, name: str) -> Term:
        for src, internal in reversed(self.scope):
            if src == name:
                return Var(internal)
        if name == "T":
            return TOP
        if name in self.constants:
            return Const(name)
        if _is_var_name(name):
            return Var(name)
        return Const(name)

    def expr(self) -> Term:
        left = self.eq()
        if self.at("conj"):
            self.advance()
            return Conj(left, self.expr())
        return left

    def eq(self) -> Term:
        left = self.application()
        if self.at("punct", "="):
            self.advance()
            return Eq(left, self.application())
        return left

    def starts_primary(self) -> bool:
        t = self.tok
        return t.kind in {"ident", "qvar", "top", "lam", "sig", "ex"} or (t.kind == "punct" and t.text == "(")

    def application(self) -> Term:
        if not self.starts_primary():
            t = self.tok
            raise TermSyntaxError(f"expected a term, found {t.text or 'end of input'!r}", t.pos)
        term = self.postfix()
        while self.starts_primary():
            term = app(term, self.postfix())
        return term

    def postfix(self) -> Term:
        term = self.primary()
        while self.at("punct", "(") and not self.tok.spaced:
            self.advance()
            args = [self.expr()]
            while self.at("punct", ","):
                self.advance()
                args.append(self.expr())
            self.expect("punct", ")")
            term = app(term, *args)
        return term

    def primary(self) -> Term:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return self.lookup(t.text)
        if t.kind == "qvar":
            self.advance()
            return Var(t.text[1:])
        if t.kind == "top":
            self.advance()
            return TOP
        if t.kind == "punct" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect("punct", ")")
            return inner
        if t.kind == "lam":
            self.advance()
            names = [self.expect("ident").text]
            while self.at("ident"):
                names.append(self.advance().text)
            self.expect("punct", ".")
            internals = [self.bind(n) for n in names]
            body = self.expr()
            self.unbind(len(names))
            return lam(internals, body)
        if t.kind == "sig":
            self.advance()
            name = self.expect("ident").text
            if self.at("punct", ":"):
                self.advance()
                self.expect("ident")
            self.expect("punct", ".")
            internal = self.bind(name)
            body = self.expr()
            self.unbind(1)
            return Exists(internal, body)
        if t.kind == "ex":
            self.advance()
            name = self.expect("ident").text
            internal = self.bind(name)
            if self.at("punct", "."):
                self.advance()
                body = self.expr()
            else:
                self.expect("punct", "(")
                body = self.expr()
                self.expect("punct", ")")
            self.unbind(1)
            return Exists(internal, body)
        raise TermSyntaxError(f"expected a term, found {t.text or 'end of input'!r}", t.pos)


def parse_term(text: str, syntax: SemSyntax | str = SemSyntax.DTS,
               constants: Iterable[str] = ()) -> Term:
    """Parse the semantic mini-language.

    Both concrete syntaxes are accepted whatever ``syntax`` says; the tag
    exists so callers can state which notation they expect.  ``constants``
    lists free identifiers that must be read as constants even though they
    look like variables (single-letter proper names such as ``t``).
    """
    SemSyntax(syntax)
    return _TermParser(text, frozenset(constants)).parse()


# precedence levels, loosest first
_BINDER, _CONJ, _EQ, _APP, _ATOMIC = range(5)


class _Printer:
    def __init__(self, syntax: SemSyntax, constants: frozenset[str] = frozenset()):
        self.syntax = syntax
        self.constants = constants
        self.conj = " * " if syntax is SemSyntax.DTS else " & "

    def show(self, t: Term, ctx: int, bound: frozenset[str]) -> str:
        text, prec = self.render(t, bound)
        return f"({text})" if prec < ctx else text

    def binder(self, t: Abs | Exists, bound: frozenset[str]) -> tuple[str, Term]:
        name, body = t.var, t.body
        clash = (name in term_constants(body) or name in _KEYWORDS
                 or (name == "T" and _contains_top(body)))
        if clash:
            new = fresh_name(name if name not in _KEYWORDS else "v",
                             body.free | term_constants(body) | _all_names(body, set()) | {name})
            body = substitute(body, name, Var(new))
            name = new
        return name, body

    def render(self, t: Term, bound: frozenset[str]) -> tuple[str, int]:
        if isinstance(t, Var):
            if t.name in bound:
                return t.name, _ATOMIC
            # free: sigil unless the bare name would read back as a variable
            if _is_var_name(t.name) and t.name != "T" and t.name not in self.constants:
                return t.name, _ATOMIC
            return f"?{t.name}", _ATOMIC
        if isinstance(t, Const):
            return t.name, _ATOMIC
        if isinstance(t, Top):
            return "T", _ATOMIC
        if isinstance(t, Abs):
            names = []
            while isinstance(t, Abs):
                name, body = self.binder(t, bound)
                names.append(name)
                bound = bound | {name}
                t = body
            return f"\\{' '.join(names)}. {self.show(t, _BINDER, bound)}", _BINDER
        if isinstance(t, Exists):
            name, body = self.binder(t, bound)
            inner = self.show(body, _BINDER, bound | {name})
            if self.syntax is SemSyntax.DTS:
                return f"Sig {name}:ev. {inner}", _BINDER
            return f"exists {name} ({inner})", _ATOMIC
        if isinstance(t, Conj):
            return (self.show(t.left, _CONJ + 1, bound) + self.conj
                    + self.show(t.right, _CONJ, bound)), _CONJ
        if isinstance(t, Eq):
            return f"{self.show(t.left, _APP, bound)}={self.show(t.right, _APP, bound)}", _EQ
        if isinstance(t, Atom):
            args = ",".join(self.show(a, _BINDER, bound) for a in t.args)
            return f"{t.pred}({args})", _ATOMIC
        if isinstance(t, App):
            args = []
            while isinstance(t, App):
                args.append(t.arg)
                t = t.fun
            head = self.show(t, _ATOMIC, bound)
            rendered = ",".join(self.show(a, _BINDER, bound) for a in reversed(args))
            return f"{head}({rendered})", _APP
        raise TypeError(f"not a term: {t!r}")


def _contains_top(t: Term) -> bool:
    if isinstance(t, Top):
        return True
    if isinstance(t, (Abs, Exists)):
        return _contains_top(t.body)
    if isinstance(t, App):
        return _contains_top(t.fun) or _contains_top(t.arg)
    if isinstance(t, (Conj, Eq)):
        return _contains_top(t.left) or _contains_top(t.right)
    if isinstance(t, Atom):
        return any(_contains_top(a) for a in t.args)
    return False


def print_term(term: Term, syntax: SemSyntax | str = SemSyntax.DTS) -> str:
    return _Printer(SemSyntax(syntax), term_constants(term)).show(term, _BINDER, frozenset())
