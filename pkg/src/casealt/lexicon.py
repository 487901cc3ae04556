"""Lexical entries, the two built-in lexicons, and semantic templates.

A lexicon file is line oriented and tab separated::

    @name     ccgbank
    @closure  ccg2lambda
    @constants t j
    # surface  gloss  category  semantics
    Taro-ga	Taro-NOM	np_ga	\\P. P(t)
    re	passive	S\\S	template: \\Q2 Q1 C1 C2 K. V(Q2,Q1,...)

``@constants`` lists single-letter constant names (see
:func:`casealt.terms.parse_term`).  A semantics field prefixed with
``template:`` holds a template whose free ``V`` is filled with the meaning
of the adjacent predicate.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from casealt.categories import Category, parse_category, print_category
from casealt.terms import (
    DEFAULT_FUEL, SemSyntax, Term, beta_normalize, parse_term, print_term, substitute,
)

TEMPLATE_VAR = "V"
LEXICON_PATH_ENV = "CASEALT_LEXICON_PATH"


class Closure(str, enum.Enum):
    """How a sentence meaning is closed off into a logical form."""

    DTS = "dts"
    CCG2LAMBDA = "ccg2lambda"

    @property
    def syntax(self) -> SemSyntax:
        return SemSyntax.DTS if self is Closure.DTS else SemSyntax.FOL


class LexiconError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class EmptyLexicon(LexiconError):
    pass


class TemplateFlagError(LexiconError):
    pass


class NotATemplate(ValueError):
    pass


class UnknownToken(KeyError):
    def __init__(self, surface: str):
        super().__init__(surface)
        self.surface = surface

    def __str__(self) -> str:
        return f"unknown token: {self.surface}"


@dataclass(frozen=True)
class LexEntry:
    surface: str
    gloss: str
    category: Category
    semantics: Term
    is_template: bool = False

    def __post_init__(self):
        free = self.semantics.free
        if self.is_template and TEMPLATE_VAR not in free:
            raise TemplateFlagError(f"template entry {self.surface!r} has no free {TEMPLATE_VAR}")
        if not self.is_template and free:
            raise TemplateFlagError(
                f"entry {self.surface!r} has free variables {sorted(free)} but is not a template")


@dataclass(frozen=True)
class Lexicon:
    name: str
    entries: Mapping[str, tuple[LexEntry, ...]]
    closure: Closure
    constants: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.entries:
            raise EmptyLexicon(f"lexicon {self.name!r} has no entries")
        for surface, entries in self.entries.items():
            if not entries:
                raise LexiconError(f"surface {surface!r} has no entries")

    @classmethod
    def from_entries(cls, name: str, closure: Closure | str, entries: Iterable[LexEntry],
                     constants: Iterable[str] = ()) -> Lexicon:
        table: dict[str, list[LexEntry]] = {}
        for entry in entries:
            table.setdefault(entry.surface, []).append(entry)
        return cls(name, {k: tuple(v) for k, v in table.items()}, Closure(closure), frozenset(constants))

    def lookup(self, surface: str) -> tuple[LexEntry, ...]:
        try:
            return self.entries[surface]
        except KeyError:
            raise UnknownToken(surface) from None

    def __contains__(self, surface: str) -> bool:
        return surface in self.entries

    def __iter__(self) -> Iterator[LexEntry]:
        for entries in self.entries.values():
            yield from entries


def instantiate_template(template: Term, predicate_sem: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Fill the template's ``V`` with a predicate meaning and normalize."""
    if TEMPLATE_VAR not in template.free:
        raise NotATemplate(f"{TEMPLATE_VAR} is not free in {print_term(template)}")
    if predicate_sem.free:
        raise ValueError(f"predicate meaning must be closed, has free {sorted(predicate_sem.free)}")
    return beta_normalize(substitute(template, TEMPLATE_VAR, predicate_sem), fuel)


# ---------------------------------------------------------------------------
# built-in lexicons

PROPER_NAMES = {"Taro": "t", "Jiro": "j"}
CASE_GLOSS = {"ga": "NOM", "ni": "DAT", "o": "ACC"}


def _entry(surface: str, gloss: str, category: str, semantics: str, *,
           template: bool = False, constants: Iterable[str] = ()) -> LexEntry:
    return LexEntry(surface, gloss, parse_category(category),
                    parse_term(semantics, constants=constants), template)


def _nominals(raised: bool) -> list[LexEntry]:
    out = []
    for name, const in PROPER_NAMES.items():
        for case, gloss in CASE_GLOSS.items():
            cat = f"T/(T\\np_{case})" if raised else f"np_{case}"
            out.append(_entry(f"{name}-{case}", f"{name}-{gloss}", cat,
                              f"\\P. P({const})", constants=PROPER_NAMES.values()))
    return out


BEKKI_PRAISE = r"\y x k. Sig e:ev. praise(e,x,y) * k(e)"
BEKKI_RUN = r"\x k. Sig e:ev. run(e,x) * k(e)"
BEKKI_PASSIVE = r"\P y x. P(x,y)"
BEKKI_CAUSATIVE = r"\P y x k. P(y, \e. cause(e,x) * k(e))"


@lru_cache(maxsize=None)
def builtin_bekki() -> Lexicon:
    """Argument-structure-aware suffixes with event continuations."""
    entries = _nominals(raised=True) + [
        _entry("homera", "praise", r"S\np_ga\np_o", BEKKI_PRAISE),
        _entry("home", "praise", r"S\np_ga\np_o", BEKKI_PRAISE),
        _entry("hasira", "run", r"S\np_ga", BEKKI_RUN),
        _entry("hasit", "run", r"S\np_ga", BEKKI_RUN),
        _entry("ta", "PST", r"S\S", r"\x. x"),
        _entry("re", "passive", r"S\np_ga\np_ni\(S\np_ga\np_ni|o)", BEKKI_PASSIVE),
        _entry("se", "cause", r"S\np_ga\np_ni|o\(S\np_ga)", BEKKI_CAUSATIVE),
        _entry("sera", "cause", r"S\np_ga\np_ni|o\(S\np_ga)", BEKKI_CAUSATIVE),
    ]
    return Lexicon.from_entries("bekki", Closure.DTS, entries, PROPER_NAMES.values())


def ccg2lambda_transitive(pred: str) -> str:
    return (rf"\Q2 Q1 C1 C2 K. Q1(\x1. Q2(\x2. exists e (K({pred},e)"
            rf" & C1(x1,e,Ag) & C2(x2,e,Th))))")


def ccg2lambda_intransitive(pred: str) -> str:
    # C2 is vacuous so every S meaning takes the same three closure arguments
    return rf"\Q1 C1 C2 K. Q1(\x1. exists e (K({pred},e) & C1(x1,e,Ag)))"


def ccg2lambda_suffix_template(first_role: str, second_role: str) -> str:
    return (rf"\Q2 Q1 C1 C2 K. V(Q2, Q1, \x1 e T. C1(x1,e,{first_role}),"
            rf" \x2 e T. C2(x2,e,{second_role}), K)")


CCG2LAMBDA_PASSIVE = ccg2lambda_suffix_template("Th", "Ag")
CCG2LAMBDA_CAUSATIVE = ccg2lambda_suffix_template("Cause", "Ag")


@lru_cache(maxsize=None)
def builtin_ccgbank() -> Lexicon:
    """S\\S suffixes whose meanings are semantic templates."""
    entries = _nominals(raised=False) + [
        _entry("homera", "praise", r"S\np_ga\np_ni", ccg2lambda_transitive("praise")),
        _entry("home", "praise", r"S\np_ga\np_o", ccg2lambda_transitive("praise")),
        _entry("hasira", "run", r"S\np_ga\np_o", ccg2lambda_transitive("run")),
        _entry("hasira", "run", r"S\np_ga\np_ni", ccg2lambda_transitive("run")),
        _entry("hasit", "run", r"S\np_ga", ccg2lambda_intransitive("run")),
        _entry("ta", "PST", r"S\S", TEMPLATE_VAR, template=True),
        _entry("re", "passive", r"S\S", CCG2LAMBDA_PASSIVE, template=True),
        _entry("se", "cause", r"S\S", CCG2LAMBDA_CAUSATIVE, template=True),
        _entry("sera", "cause", r"S\S", CCG2LAMBDA_CAUSATIVE, template=True),
    ]
    return Lexicon.from_entries("ccgbank", Closure.CCG2LAMBDA, entries, PROPER_NAMES.values())


BUILTINS = {"bekki": builtin_bekki, "ccgbank": builtin_ccgbank}


# ---------------------------------------------------------------------------
# files

def dump_lexicon(lexicon: Lexicon) -> str:
    syntax = lexicon.closure.syntax
    lines = [f"@name {lexicon.name}", f"@closure {lexicon.closure.value}"]
    if lexicon.constants:
        lines.append("@constants " + " ".join(sorted(lexicon.constants)))
    for e in lexicon:
        sem = print_term(e.semantics, syntax)
        if e.is_template:
            sem = "template: " + sem
        lines.append("\t".join((e.surface, e.gloss, print_category(e.category), sem)))
    return "\n".join(lines) + "\n"


def loads_lexicon(text: str, name: str = "user") -> Lexicon:
    closure = Closure.DTS
    constants: set[str] = set()
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            key, _, value = line[1:].partition(" ")
            value = value.split("#", 1)[0].strip()
            if key == "name":
                name = value
            elif key == "closure":
                try:
                    closure = Closure(value)
                except ValueError:
                    raise LexiconError(f"unknown closure {value!r}", lineno) from None
            elif key == "constants":
                constants.update(value.split())
            else:
                raise LexiconError(f"unknown directive @{key}", lineno)
            continue
        fields = raw.rstrip("\n").split("\t")
        if len(fields) != 4:
            raise LexiconError(f"expected 4 tab-separated fields, found {len(fields)}", lineno)
        rows.append((lineno, fields))

    if not rows:
        raise EmptyLexicon("lexicon file has no entries")
    entries = []
    for lineno, (surface, gloss, cat_text, sem_text) in rows:
        template = sem_text.startswith("template:")
        if template:
            sem_text = sem_text[len("template:"):]
        try:
            entries.append(LexEntry(surface.strip(), gloss.strip(), parse_category(cat_text.strip()),
                                    parse_term(sem_text.strip(), closure.syntax, constants), template))
        except TemplateFlagError as exc:
            raise TemplateFlagError(str(exc), lineno) from None
        except ValueError as exc:
            raise LexiconError(str(exc), lineno) from None
    return Lexicon.from_entries(name, closure, entries, constants)


def load_lexicon(path: str | os.PathLike) -> Lexicon:
    path = Path(path)
    return loads_lexicon(path.read_text(encoding="utf-8"), name=path.stem)


def resolve_lexicon(name: str) -> Lexicon:
    """Accept a built-in name, a file path, or a file name on the search path."""
    if name in BUILTINS:
        return BUILTINS[name]()
    candidates = [Path(name)]
    for directory in filter(None, os.environ.get(LEXICON_PATH_ENV, "").split(os.pathsep)):
        candidates += [Path(directory) / name, Path(directory) / f"{name}.lex"]
    for candidate in candidates:
        if candidate.is_file():
            return load_lexicon(candidate)
    raise FileNotFoundError(f"no lexicon named {name!r}")
