"""CKY chart parsing with compositional semantics.

Rules: forward application (>), backward application (<), generalized
backward composition of degree 1 and 2 (<B, <B2), and template combination,
which shares the category side of backward application/composition but
replaces function composition with template instantiation.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from casealt.categories import (
    Bindings, Bwd, Category, Fwd, S, apply_bindings, catvars, is_np,
    print_category, rename_catvars, unify,
)
from casealt.lexicon import Closure, LexEntry, Lexicon, instantiate_template
from casealt.terms import (
    DEFAULT_FUEL, Abs, Term, Var, app, beta_normalize, fresh_name, parse_term,
)

MAX_DEGREE = 2


class Rule(enum.Enum):
    LEX = "LEX"
    FA = ">"
    BA = "<"
    BC1 = "<B"
    BC2 = "<B2"
    TEMPLATE = "TEMPLATE"


class NoParse(ValueError):
    pass


class WrongCategory(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class DerivationNode:
    span: tuple[int, int]
    category: Category
    semantics: Term
    rule: Rule
    children: tuple[DerivationNode, ...] = ()
    entry: LexEntry | None = None
    degree: int = 0
    bindings: Bindings | None = None
    entry_index: int = 0

    @property
    def label(self) -> str:
        if self.rule is Rule.TEMPLATE:
            return {0: "<*", 1: "<B*"}.get(self.degree, f"<B{self.degree}*")
        return self.rule.value

    @property
    def is_template(self) -> bool:
        return self.rule is Rule.LEX and self.entry is not None and self.entry.is_template

    def leaves(self) -> Iterable[DerivationNode]:
        if self.rule is Rule.LEX:
            yield self
        for child in self.children:
            yield from child.leaves()

    def words(self) -> list[str]:
        return [leaf.entry.surface for leaf in self.leaves()]

    def rule_tree(self) -> str:
        if self.rule is Rule.LEX:
            return "LEX"
        return f"({self.label} " + " ".join(c.rule_tree() for c in self.children) + ")"

    def category_tree(self) -> str:
        cat = print_category(self.category)
        if self.rule is Rule.LEX:
            return f"{cat}#{self.entry_index}"
        return f"({cat} " + " ".join(c.category_tree() for c in self.children) + ")"

    @property
    def signature(self) -> tuple[str, str]:
        return self.rule_tree(), self.category_tree()


@dataclass(frozen=True)
class ParseResult:
    derivations: tuple[DerivationNode, ...]
    cells: int = 0
    items: int = 0
    chart: dict = field(default_factory=dict, repr=False, compare=False)

    def __bool__(self) -> bool:
        return bool(self.derivations)


# ---------------------------------------------------------------------------
# combinators

def lexical_node(entry: LexEntry, position: int, entry_index: int = 0) -> DerivationNode:
    return DerivationNode((position, position + 1), rename_catvars(entry.category, str(position)),
                          entry.semantics, Rule.LEX, entry=entry, entry_index=entry_index)


def _adjacent(left: DerivationNode, right: DerivationNode) -> tuple[int, int]:
    if left.span[1] != right.span[0]:
        raise ValueError(f"spans {left.span} and {right.span} are not adjacent")
    return left.span[0], right.span[1]


def forward_apply(f: DerivationNode, a: DerivationNode, fuel: int = DEFAULT_FUEL) -> DerivationNode | None:
    if not isinstance(f.category, Fwd) or f.is_template:
        return None
    b = unify(f.category.arg, a.category)
    if b is None:
        return None
    cat = apply_bindings(f.category.result, b.categories_only())
    sem = beta_normalize(app(f.semantics, a.semantics), fuel)
    return DerivationNode(_adjacent(f, a), cat, sem, Rule.FA, (f, a), bindings=b)


def backward_apply(a: DerivationNode, f: DerivationNode, fuel: int = DEFAULT_FUEL) -> DerivationNode | None:
    if f.is_template:
        return combine_template(a, f, 0, fuel)
    if not isinstance(f.category, Bwd):
        return None
    b = unify(f.category.arg, a.category)
    if b is None:
        return None
    cat = apply_bindings(f.category.result, b.categories_only())
    sem = beta_normalize(app(f.semantics, a.semantics), fuel)
    return DerivationNode(_adjacent(a, f), cat, sem, Rule.BA, (a, f), bindings=b)


def _compose_category(g: Category, f: Category, degree: int) -> tuple[Category, Bindings] | None:
    """Category side of ``g f => X\\Z1..\\Zn`` for ``f = X\\Y`` and ``g = Y\\Z1..\\Zn``."""
    if not isinstance(f, Bwd):
        return None
    peeled: list[Category] = []
    core = g
    for _ in range(degree):
        if not isinstance(core, Bwd):
            return None
        peeled.append(core.arg)
        core = core.result
    b = unify(f.arg, core)
    if b is None:
        return None
    subst = b.categories_only()
    result = apply_bindings(f.result, subst)
    for z in reversed(peeled):
        result = Bwd(result, apply_bindings(z, subst))
    return result, b


def compose_semantics(g_sem: Term, f_sem: Term, degree: int, fuel: int = DEFAULT_FUEL) -> Term:
    """``\\z_n ... z_1. f (g z_n ... z_1)``, where ``z_n`` fills g's outermost argument."""
    avoid = g_sem.free | f_sem.free
    names: list[str] = []
    for _ in range(degree):
        names.append(fresh_name("z", avoid | set(names)))
    body = app(f_sem, app(g_sem, *(Var(n) for n in names)))
    for n in reversed(names):
        body = Abs(n, body)
    return beta_normalize(body, fuel)


def backward_compose(g: DerivationNode, f: DerivationNode, degree: int,
                     fuel: int = DEFAULT_FUEL) -> DerivationNode | None:
    if degree not in (1, 2):
        raise ValueError("composition degree must be 1 or 2")
    if f.is_template:
        return combine_template(g, f, degree, fuel)
    shaped = _compose_category(g.category, f.category, degree)
    if shaped is None:
        return None
    cat, b = shaped
    sem = compose_semantics(g.semantics, f.semantics, degree, fuel)
    return DerivationNode(_adjacent(g, f), cat, sem, Rule.BC1 if degree == 1 else Rule.BC2,
                          (g, f), degree=degree, bindings=b)


def _predicate_phrase(node: DerivationNode) -> bool:
    # a closed meaning built from verbal material only: no nominal has been absorbed
    if node.semantics.free:
        return False
    return all(not is_np(leaf.entry.category) and not catvars(leaf.entry.category)
               for leaf in node.leaves())


def combine_template(predicate: DerivationNode, suffix: DerivationNode, degree: int,
                     fuel: int = DEFAULT_FUEL) -> DerivationNode | None:
    """Combine a template suffix with the predicate phrase on its left."""
    if not suffix.is_template or not _predicate_phrase(predicate):
        return None
    if degree == 0:
        if not isinstance(suffix.category, Bwd):
            return None
        b = unify(suffix.category.arg, predicate.category)
        if b is None:
            return None
        cat = apply_bindings(suffix.category.result, b.categories_only())
    else:
        shaped = _compose_category(predicate.category, suffix.category, degree)
        if shaped is None:
            return None
        cat, b = shaped
    sem = instantiate_template(suffix.semantics, predicate.semantics, fuel)
    return DerivationNode(_adjacent(predicate, suffix), cat, sem, Rule.TEMPLATE,
                          (predicate, suffix), degree=degree, bindings=b)


def combine(left: DerivationNode, right: DerivationNode, fuel: int = DEFAULT_FUEL) -> list[DerivationNode]:
    out = []
    for node in (forward_apply(left, right, fuel), backward_apply(left, right, fuel)):
        if node is not None:
            out.append(node)
    for degree in range(1, MAX_DEGREE + 1):
        node = backward_compose(left, right, degree, fuel)
        if node is not None:
            out.append(node)
    return out


def recompute_semantics(node: DerivationNode, fuel: int = DEFAULT_FUEL) -> Term:
    """Meaning of ``node`` rebuilt from its children's stored meanings."""
    if node.rule is Rule.LEX:
        return node.entry.semantics
    left, right = node.children
    if node.rule in (Rule.FA,):
        return beta_normalize(app(left.semantics, right.semantics), fuel)
    if node.rule is Rule.BA:
        return beta_normalize(app(right.semantics, left.semantics), fuel)
    if node.rule in (Rule.BC1, Rule.BC2):
        return compose_semantics(left.semantics, right.semantics, node.degree, fuel)
    return instantiate_template(right.semantics, left.semantics, fuel)


# ---------------------------------------------------------------------------
# chart

def _is_sentence(cat: Category) -> bool:
    return isinstance(cat, S)


def parse(tokens: Sequence[str], lexicon: Lexicon, *, fuel: int = DEFAULT_FUEL,
          rng: random.Random | None = None) -> ParseResult:
    """All derivations of category S spanning ``tokens``.

    ``rng`` shuffles the order in which item pairs are combined; the result
    does not depend on it.
    """
    n = len(tokens)
    chart: dict[tuple[int, int], list[DerivationNode]] = {}
    for i, tok in enumerate(tokens):
        chart[i, i + 1] = [lexical_node(e, i, k) for k, e in enumerate(lexicon.lookup(tok))]
    for width in range(2, n + 1):
        for i in range(n - width + 1):
            j = i + width
            pairs = [(l, r) for k in range(i + 1, j) for l in chart[i, k] for r in chart[k, j]]
            if rng is not None:
                rng.shuffle(pairs)
            cell: dict[tuple[str, str], DerivationNode] = {}
            for left, right in pairs:
                for node in combine(left, right, fuel):
                    cell.setdefault(node.signature, node)
            chart[i, j] = [cell[k] for k in sorted(cell)]
    roots = tuple(d for d in chart.get((0, n), []) if _is_sentence(d.category)) if n else ()
    return ParseResult(roots, cells=sum(1 for v in chart.values() if v),
                       items=sum(len(v) for v in chart.values()), chart=chart)


# ---------------------------------------------------------------------------
# sentence closure

CCG2LAMBDA_ROLE = r"\x e R. R(e)=x"
CCG2LAMBDA_EVENT = r"\p e. p(e)"
DTS_CONTINUATION = r"\e. T"


def sentence_closure(closure: Closure) -> tuple[Term, ...]:
    if closure is Closure.DTS:
        return (parse_term(DTS_CONTINUATION),)
    role = parse_term(CCG2LAMBDA_ROLE)
    return role, role, parse_term(CCG2LAMBDA_EVENT)


def sentence_semantics(root: DerivationNode, lexicon: Lexicon, fuel: int = DEFAULT_FUEL) -> Term:
    if not _is_sentence(root.category):
        raise WrongCategory(f"cannot close a constituent of category {print_category(root.category)}")
    return beta_normalize(app(root.semantics, *sentence_closure(lexicon.closure)), fuel)


# ---------------------------------------------------------------------------
# rendering

def render_derivation(root: DerivationNode) -> str:
    """Indented tree, one node per line.

    Phrase lines read ``category  [rule]  words``; lexical lines read
    ``surface  gloss  category  [LEX]``.
    """
    lines: list[str] = []

    def walk(node: DerivationNode, depth: int) -> None:
        pad = "  " * depth
        if node.rule is Rule.LEX:
            lines.append(f"{pad}{node.entry.surface}  {node.entry.gloss}  "
                         f"{print_category(node.entry.category)}  [LEX]")
            return
        lines.append(f"{pad}{print_category(node.category)}  [{node.label}]  {' '.join(node.words())}")
        for child in node.children:
            walk(child, depth + 1)

    walk(root, 0)
    return "\n".join(lines)


__all__ = [
    "Rule", "DerivationNode", "ParseResult", "NoParse", "WrongCategory", "MAX_DEGREE",
    "lexical_node", "forward_apply", "backward_apply", "backward_compose", "combine_template",
    "compose_semantics", "combine", "recompute_semantics", "parse", "sentence_closure",
    "sentence_semantics", "render_derivation",
]
