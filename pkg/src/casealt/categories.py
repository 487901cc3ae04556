"""CCG categories with case features and unification.

Notation follows the usual Japanese CCG conventions::

    S\\np_ga\\np_ni|o\\(S\\np_ga)     T/(T\\np_ga)     S\\S

Slashes associate to the left; an argument that is itself a functor is
parenthesized.  ``np_ni|o`` is a single NP whose case is underspecified
between *ni* and *o*.  Upper-case identifiers other than ``S`` are category
variables (the polymorphic ``T`` of type-raised nominals).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

CASES = ("ga", "ni", "o")

Path = tuple[str, ...]


class CategorySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class CaseFeature:
    cases: frozenset[str]

    def __post_init__(self):
        if not isinstance(self.cases, frozenset):
            object.__setattr__(self, "cases", frozenset(self.cases))
        if not self.cases:
            raise ValueError("a case feature needs at least one case")
        unknown = self.cases - set(CASES)
        if unknown:
            raise ValueError(f"unknown case(s): {', '.join(sorted(unknown))}")

    @classmethod
    def of(cls, *cases: str) -> CaseFeature:
        return cls(frozenset(cases))

    def meet(self, other: CaseFeature) -> CaseFeature | None:
        common = self.cases & other.cases
        return CaseFeature(common) if common else None

    def __str__(self) -> str:
        return "|".join(c for c in CASES if c in self.cases)


class Category:
    def __str__(self) -> str:
        return print_category(self)


@dataclass(frozen=True)
class S(Category):
    # (name, value) pairs; nothing in the current fragment sets them
    features: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class NP(Category):
    case: CaseFeature


@dataclass(frozen=True)
class Fwd(Category):
    result: Category
    arg: Category


@dataclass(frozen=True)
class Bwd(Category):
    result: Category
    arg: Category


@dataclass(frozen=True)
class CatVar(Category):
    name: str


Functor = (Fwd, Bwd)


@dataclass(frozen=True)
class Bindings:
    """Result of a successful unification.

    ``categories`` maps variable names to fully resolved categories.
    ``features`` maps feature slots, addressed by a path of ``"r"`` (result)
    and ``"a"`` (argument) steps from the root of the unified categories,
    to the narrowed case feature at that slot.
    """

    categories: Mapping[str, Category] = field(default_factory=dict)
    features: Mapping[Path, CaseFeature] = field(default_factory=dict)

    def categories_only(self) -> Bindings:
        return Bindings(dict(self.categories))


EMPTY = Bindings()


# ---------------------------------------------------------------------------
# printing / parsing

def print_category(cat: Category) -> str:
    if isinstance(cat, S):
        if not cat.features:
            return "S"
        return "S[" + ",".join(f"{k}={v}" for k, v in cat.features) + "]"
    if isinstance(cat, NP):
        return f"np_{cat.case}"
    if isinstance(cat, CatVar):
        return cat.name
    if isinstance(cat, (Fwd, Bwd)):
        slash = "/" if isinstance(cat, Fwd) else "\\"
        arg = print_category(cat.arg)
        if isinstance(cat.arg, Functor):
            arg = f"({arg})"
        return print_category(cat.result) + slash + arg
    raise TypeError(f"not a category: {cat!r}")


_CAT_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<np>(?:np|NP)_(?:[a-z]+(?:\|[a-z]+)*))
  | (?P<s>S(?:\[[^\]]*\])?(?![A-Za-z0-9_]))
  | (?P<var>[A-Z][A-Za-z0-9_]*)
  | (?P<fwd>/)
  | (?P<bwd>\\|∖|＼)
  | (?P<lp>\()
  | (?P<rp>\))
""", re.VERBOSE)


def _tokenize_category(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _CAT_TOKEN.match(text, pos)
        if m is None:
            raise CategorySyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


def parse_category(text: str) -> Category:
    toks = _tokenize_category(text)
    i = 0

    def primary() -> Category:
        nonlocal i
        kind, tok, pos = toks[i]
        i += 1
        if kind == "np":
            names = tok.split("_", 1)[1].split("|")
            try:
                return NP(CaseFeature(frozenset(names)))
            except ValueError as exc:
                raise CategorySyntaxError(str(exc), pos) from None
        if kind == "s":
            feats: tuple[tuple[str, str], ...] = ()
            if "[" in tok:
                body = tok[2:-1].strip()
                pairs = []
                for item in filter(None, (p.strip() for p in body.split(","))):
                    if "=" not in item:
                        raise CategorySyntaxError(f"bad feature {item!r}", pos)
                    k, v = item.split("=", 1)
                    pairs.append((k.strip(), v.strip()))
                feats = tuple(pairs)
            return S(feats)
        if kind == "var":
            return CatVar(tok)
        if kind == "lp":
            inner = expr()
            if toks[i][0] != "rp":
                raise CategorySyntaxError("expected ')'", toks[i][2])
            i += 1
            return inner
        raise CategorySyntaxError(f"expected a category, found {tok or 'end of input'!r}", pos)

    def expr() -> Category:
        nonlocal i
        cat = primary()
        while toks[i][0] in ("fwd", "bwd"):
            kind = toks[i][0]
            i += 1
            arg = primary()
            cat = Fwd(cat, arg) if kind == "fwd" else Bwd(cat, arg)
        return cat

    cat = expr()
    if toks[i][0] != "eof":
        raise CategorySyntaxError(f"unexpected {toks[i][1]!r}", toks[i][2])
    return cat


# ---------------------------------------------------------------------------
# unification

def _occurs(name: str, cat: Category, subst: dict[str, Category]) -> bool:
    if isinstance(cat, CatVar):
        if cat.name == name:
            return True
        bound = subst.get(cat.name)
        return bound is not None and _occurs(name, bound, subst)
    if isinstance(cat, Functor):
        return _occurs(name, cat.result, subst) or _occurs(name, cat.arg, subst)
    return False


def _meet(a: Category, b: Category, subst: dict[str, Category]) -> Category | None:
    if isinstance(a, CatVar) and isinstance(b, CatVar) and a.name == b.name:
        return a
    if not isinstance(a, CatVar) and isinstance(b, CatVar):
        a, b = b, a
    if isinstance(a, CatVar):
        if a.name in subst:
            m = _meet(subst[a.name], b, subst)
            if m is None or _occurs(a.name, m, subst):
                return None
            subst[a.name] = m
            return a
        if _occurs(a.name, b, subst):
            return None
        subst[a.name] = b
        return a
    if isinstance(a, NP) and isinstance(b, NP):
        case = a.case.meet(b.case)
        return NP(case) if case else None
    if isinstance(a, S) and isinstance(b, S):
        return a if a.features == b.features else None
    if type(a) is type(b) and isinstance(a, Functor):
        result = _meet(a.result, b.result, subst)
        if result is None:
            return None
        arg = _meet(a.arg, b.arg, subst)
        if arg is None:
            return None
        return type(a)(result, arg)
    return None


def _resolve(cat: Category, subst: Mapping[str, Category], seen: frozenset[str] = frozenset()) -> Category:
    if isinstance(cat, CatVar):
        if cat.name in subst and cat.name not in seen:
            return _resolve(subst[cat.name], subst, seen | {cat.name})
        return cat
    if isinstance(cat, Functor):
        return type(cat)(_resolve(cat.result, subst, seen), _resolve(cat.arg, subst, seen))
    return cat


def _collect_features(orig: Category, final: Category, path: Path, out: dict[Path, CaseFeature]) -> None:
    if isinstance(orig, NP) and isinstance(final, NP):
        out[path] = final.case
    elif isinstance(orig, Functor) and type(final) is type(orig):
        _collect_features(orig.result, final.result, path + ("r",), out)
        _collect_features(orig.arg, final.arg, path + ("a",), out)


def unify(expected: Category, actual: Category) -> Bindings | None:
    """Unify two categories; ``None`` on failure.

    Case features unify by non-empty intersection.  Category variables may
    occur on either side and are subject to the occurs check.
    """
    subst: dict[str, Category] = {}
    meet = _meet(expected, actual, subst)
    if meet is None:
        return None
    final = _resolve(meet, subst)
    features: dict[Path, CaseFeature] = {}
    _collect_features(expected, final, (), features)
    _collect_features(actual, final, (), features)
    return Bindings({name: _resolve(CatVar(name), subst) for name in subst}, features)


def apply_bindings(cat: Category, bindings: Bindings, _path: Path = ()) -> Category:
    if isinstance(cat, CatVar):
        return bindings.categories.get(cat.name, cat)
    if isinstance(cat, NP):
        narrowed = bindings.features.get(_path)
        return NP(narrowed) if narrowed is not None else cat
    if isinstance(cat, Functor):
        return type(cat)(apply_bindings(cat.result, bindings, _path + ("r",)),
                         apply_bindings(cat.arg, bindings, _path + ("a",)))
    return cat


# ---------------------------------------------------------------------------
# helpers used by the parser

def catvars(cat: Category) -> frozenset[str]:
    if isinstance(cat, CatVar):
        return frozenset((cat.name,))
    if isinstance(cat, Functor):
        return catvars(cat.result) | catvars(cat.arg)
    return frozenset()


def rename_catvars(cat: Category, suffix: str) -> Category:
    """Give every category variable a per-use name, e.g. ``T`` -> ``T_3``."""
    return apply_bindings(cat, Bindings({v: CatVar(f"{v}_{suffix}") for v in catvars(cat)}))


def is_np(cat: Category) -> bool:
    return isinstance(cat, NP)
