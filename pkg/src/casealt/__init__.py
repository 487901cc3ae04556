"""CCG derivations with compositional semantics for Japanese passive and
causative suffixes, under two competing lexical analyses."""

from casealt.categories import parse_category, print_category, unify
from casealt.entailment import check_inference, entails, normalize_lf
from casealt.lexicon import builtin_bekki, builtin_ccgbank, load_lexicon
from casealt.parser import parse, render_derivation, sentence_semantics
from casealt.terms import alpha_equal, beta_normalize, parse_term, print_term

__version__ = "0.1.0"

__all__ = [
    "parse_category", "print_category", "unify", "check_inference", "entails", "normalize_lf",
    "builtin_bekki", "builtin_ccgbank", "load_lexicon", "parse", "render_derivation",
    "sentence_semantics", "alpha_equal", "beta_normalize", "parse_term", "print_term",
]
