"""Entailment between closed logical forms of the conjunctive fragment.

A closed logical form is flattened into a :class:`NormalForm`: a set of
existentially bound variables and a set of atoms.  Entailment is
conjunctive-query containment: the conclusion holds if some mapping of its
existential variables onto the premise's makes every conclusion atom a
premise atom.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from casealt.lexicon import Lexicon
from casealt.parser import DerivationNode, NoParse, parse, sentence_semantics
from casealt.terms import (
    DEFAULT_FUEL, Atom, Conj, Const, Eq, Exists, Term, Top, Var, alpha_equal, fresh_name,
)

log = logging.getLogger(__name__)

Arg = Union[Var, Const]


class UnsupportedShape(ValueError):
    """The logical form lies outside the conjunctive-existential fragment."""


class InferenceError(Exception):
    def __init__(self, side: str, cause: Exception):
        super().__init__(f"{side}: {cause}")
        self.side = side
        self.cause = cause


@dataclass(frozen=True, order=True)
class Pred:
    name: str
    args: tuple[Arg, ...]

    def __str__(self) -> str:
        return f"{self.name}({','.join(_arg(a) for a in self.args)})"


@dataclass(frozen=True, order=True)
class RoleEq:
    role: str
    event: Arg
    entity: Arg

    def __str__(self) -> str:
        return f"{self.role}({_arg(self.event)})={_arg(self.entity)}"


NFAtom = Union[Pred, RoleEq]


def _arg(a: Arg) -> str:
    return a.name


def _sort_key(atom: NFAtom) -> str:
    return str(atom)


@dataclass(frozen=True)
class NormalForm:
    exvars: frozenset[str]
    atoms: frozenset[NFAtom]

    def __str__(self) -> str:
        vs = ",".join(sorted(self.exvars))
        body = " & ".join(sorted(map(str, self.atoms)))
        return f"exists {{{vs}}}. {body}" if vs else (body or "T")

    def arities(self) -> dict[str, frozenset[int]]:
        out: dict[str, set[int]] = {}
        for a in self.atoms:
            if isinstance(a, Pred):
                out.setdefault(a.name, set()).add(len(a.args))
        return {k: frozenset(v) for k, v in out.items()}


EMPTY_NF = NormalForm(frozenset(), frozenset())


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Mapping[str, str] | None
    premise_nf: NormalForm
    conclusion_nf: NormalForm
    diagnostic: str | None = None


def _leaf_arg(t: Term, scope: Mapping[str, str]) -> Arg:
    if isinstance(t, Var):
        if t.name not in scope:
            raise UnsupportedShape(f"free variable {t.name} in logical form")
        return Var(scope[t.name])
    if isinstance(t, Const):
        return t
    raise UnsupportedShape(f"argument {t} is not a variable or constant")


def _role_eq(fn: Term, value: Term, scope: Mapping[str, str]) -> RoleEq | None:
    if isinstance(fn, Atom) and len(fn.args) == 1:
        event = _leaf_arg(fn.args[0], scope)
        entity = _leaf_arg(value, scope)
        if isinstance(event, Var):
            return RoleEq(fn.pred, event, entity)
    return None


def normalize_lf(term: Term) -> NormalForm:
    """Flatten quantifiers and conjunctions; drop Top; read ``R(e)=x`` as a role."""
    exvars: set[str] = set()
    atoms: set[NFAtom] = set()

    def walk(t: Term, scope: dict[str, str]) -> None:
        if isinstance(t, Top):
            return
        if isinstance(t, Exists):
            name = t.var if t.var not in exvars else fresh_name(t.var, exvars)
            exvars.add(name)
            walk(t.body, {**scope, t.var: name})
        elif isinstance(t, Conj):
            walk(t.left, scope)
            walk(t.right, scope)
        elif isinstance(t, Atom):
            atoms.add(Pred(t.pred, tuple(_leaf_arg(a, scope) for a in t.args)))
        elif isinstance(t, Eq):
            role = _role_eq(t.left, t.right, scope) or _role_eq(t.right, t.left, scope)
            if role is None:
                raise UnsupportedShape(f"equality {t} is not a role equation")
            atoms.add(role)
        else:
            raise UnsupportedShape(f"{type(t).__name__} is outside the conjunctive fragment: {t}")

    walk(term, {})
    used = {a.name for atom in atoms for a in _atom_args(atom) if isinstance(a, Var)}
    return NormalForm(frozenset(exvars & used), frozenset(atoms))


def _atom_args(atom: NFAtom) -> tuple[Arg, ...]:
    return atom.args if isinstance(atom, Pred) else (atom.event, atom.entity)


def _match(c: NFAtom, p: NFAtom, mapping: dict[str, str], exvars: frozenset[str]) -> dict[str, str] | None:
    if type(c) is not type(p):
        return None
    if isinstance(c, Pred) and (c.name != p.name or len(c.args) != len(p.args)):
        return None
    if isinstance(c, RoleEq) and c.role != p.role:
        return None
    extended = dict(mapping)
    for ca, pa in zip(_atom_args(c), _atom_args(p)):
        if isinstance(ca, Var) and ca.name in exvars:
            if not isinstance(pa, Var):
                return None
            bound = extended.setdefault(ca.name, pa.name)
            if bound != pa.name:
                return None
        elif ca != pa:
            return None
    return extended


def entails(premise: NormalForm, conclusion: NormalForm) -> Verdict:
    """Decide whether every conclusion atom is a premise atom under some variable mapping."""
    goals = sorted(conclusion.atoms, key=_sort_key)
    candidates = sorted(premise.atoms, key=_sort_key)

    def search(i: int, mapping: dict[str, str]) -> dict[str, str] | None:
        if i == len(goals):
            return mapping
        for p in candidates:
            extended = _match(goals[i], p, mapping, conclusion.exvars)
            if extended is not None:
                found = search(i + 1, extended)
                if found is not None:
                    return found
        return None

    witness = search(0, {})
    if witness is not None:
        # unused conclusion variables cannot occur (every exvar is in an atom)
        return Verdict(True, witness, premise, conclusion)
    return Verdict(False, None, premise, conclusion, diagnostic=_arity_clash(premise, conclusion))


def _arity_clash(premise: NormalForm, conclusion: NormalForm) -> str | None:
    # typical of comparing forms built by different lexicons: praise(e,x,y) vs praise(e)
    p_ar, c_ar = premise.arities(), conclusion.arities()
    clash = sorted(n for n in p_ar.keys() & c_ar.keys() if not c_ar[n] <= p_ar[n])
    if clash:
        return f"predicate arity differs between forms: {', '.join(clash)}"
    return None


@dataclass(frozen=True)
class SentenceAnalysis:
    tokens: tuple[str, ...]
    derivations: tuple[DerivationNode, ...]
    logical_form: Term
    normal_form: NormalForm
    consistent: bool  # every derivation closes to an alpha-equal logical form

    @property
    def derivation(self) -> DerivationNode:
        return self.derivations[0]


def analyze_sentence(tokens: Sequence[str], lexicon: Lexicon, fuel: int = DEFAULT_FUEL) -> SentenceAnalysis:
    result = parse(tokens, lexicon, fuel=fuel)
    if not result.derivations:
        raise NoParse(f"no derivation of S for: {' '.join(tokens)}")
    forms = [sentence_semantics(d, lexicon, fuel) for d in result.derivations]
    consistent = all(alpha_equal(forms[0], f) for f in forms[1:])
    if not consistent:
        log.warning("derivations of %r close to different logical forms", " ".join(tokens))
    return SentenceAnalysis(tuple(tokens), result.derivations, forms[0], normalize_lf(forms[0]), consistent)


def check_inference(lexicon: Lexicon, premise_tokens: Sequence[str],
                    conclusion_tokens: Sequence[str], fuel: int = DEFAULT_FUEL) -> Verdict:
    analyses = []
    for side, tokens in (("premise", premise_tokens), ("conclusion", conclusion_tokens)):
        try:
            analyses.append(analyze_sentence(tokens, lexicon, fuel))
        except (NoParse, KeyError, UnsupportedShape) as exc:
            raise InferenceError(side, exc) from exc
    return entails(analyses[0].normal_form, analyses[1].normal_form)
