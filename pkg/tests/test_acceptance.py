"""Acceptance criteria.

Each test carries a ``criterion`` marker; the conftest prints one PASS/FAIL
line per criterion at the end of the run.  Run on its own with
``pytest tests/test_acceptance.py``.
"""

import json
import sys
from pathlib import Path

import pytest

import test_categories
import test_entailment
import test_parser
import test_terms
from casealt.categories import CaseFeature, parse_category, unify
from casealt.cli import main
from casealt.entailment import normalize_lf
from casealt.lexicon import builtin_bekki, builtin_ccgbank, instantiate_template
from casealt.parser import parse, sentence_semantics
from casealt.terms import alpha_equal, parse_term

NAMES = ("t", "j")
REFERENCE_TREES = json.loads((Path(__file__).parent / "golden" / "reference_trees.json").read_text(encoding="utf-8"))

criterion = pytest.mark.criterion


def _all_forms(sentence, lexicon):
    derivations = parse(sentence.split(), lexicon).derivations
    assert derivations, f"no parse: {sentence}"
    return [sentence_semantics(d, lexicon) for d in derivations]


# ---------------------------------------------------------------------------

BEKKI_GOLDENS = [
    ("Taro-ga Jiro-ni homera re ta", "Sig e:ev. praise(e,j,t) * T"),
    ("Taro-ga Jiro-o hasira se ta", "Sig e:ev. run(e,j) * cause(e,t) * T"),
    ("Jiro-ga Taro-ni hasira sera re ta", "Sig e:ev. run(e,j) * cause(e,t) * T"),
]


@criterion(1, "golden logical forms, DTS closure")
@pytest.mark.parametrize("sentence, golden", BEKKI_GOLDENS)
def test_criterion_1_bekki_goldens(sentence, golden):
    want = parse_term(golden, "dts", NAMES)
    for form in _all_forms(sentence, builtin_bekki()):
        assert alpha_equal(form, want)
        assert normalize_lf(form) == normalize_lf(want)


CCG2LAMBDA_GOLDENS = [
    ("Jiro-ga Taro-o home ta", "exists e (praise(e) & Ag(e)=j & Th(e)=t)"),
    ("Taro-ga Jiro-ni homera re ta", "exists e (praise(e) & Ag(e)=j & Th(e)=t)"),
    ("Taro-ga Jiro-ni hasira se ta", "exists e (run(e) & Cause(e)=t & Ag(e)=j)"),
    ("Taro-ga Jiro-o hasira se ta", "exists e (run(e) & Cause(e)=t & Ag(e)=j)"),
]


@criterion(2, "golden logical forms, ccg2lambda closure")
@pytest.mark.parametrize("sentence, golden", CCG2LAMBDA_GOLDENS)
def test_criterion_2_ccg2lambda_goldens(sentence, golden):
    want = normalize_lf(parse_term(golden, "fol", NAMES))
    for form in _all_forms(sentence, builtin_ccgbank()):
        assert normalize_lf(form) == want


@criterion(3, "hasira-sera-re means exactly hasira-re under the ccgbank lexicon")
def test_criterion_3_nesting_identity():
    lex = builtin_ccgbank()
    nested = parse(["hasira", "sera", "re"], lex).chart[0, 3]
    direct = parse(["hasira", "re"], lex).chart[0, 2]
    assert nested and direct
    for node in nested:
        twins = [d for d in direct if d.category == node.category]
        assert twins and all(alpha_equal(node.semantics, d.semantics) for d in twins)
    # the same identity straight from the templates
    re, se = lex.lookup("re")[0].semantics, lex.lookup("se")[0].semantics
    for hasira in lex.lookup("hasira"):
        assert alpha_equal(instantiate_template(re, instantiate_template(se, hasira.semantics)),
                           instantiate_template(re, hasira.semantics))


EXPECTED_TABLE = {
    "bekki": {"P1": True, "C1-ni": True, "C1-o": True, "N1": True, "N1-chain": True},
    "ccgbank": {"P1": True, "C1-ni": True, "C1-o": True, "N1": False, "N1-chain": False},
}


@criterion(4, "suite verdict table and exit code")
def test_criterion_4_suite_table(capsys):
    code = main(["suite", "--lexicon", "all", "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    observed = {}
    for case in report["cases"]:
        observed.setdefault(case["lexicon"], {})[case["id"]] = case["holds"]
    assert observed == EXPECTED_TABLE
    assert code == 0


@criterion(5, "derivation shapes of the four reference trees")
@pytest.mark.parametrize("name", sorted(REFERENCE_TREES))
def test_criterion_5_tree_shapes(name):
    test_parser.test_reference_trees(name)


@criterion(5, "derivation shapes of the four reference trees")
def test_criterion_5_raised_binding():
    test_parser.test_bekki_causative_raised_binding()


PROPERTY_SUITES = [
    (test_terms, "test_confluence_outermost_innermost"),
    (test_terms, "test_normalize_idempotent"),
    (test_categories, "test_unifier_is_sound"),
    (test_categories, "test_feature_narrowing_is_monotone"),
    (test_parser, "test_semantics_is_a_homomorphism"),
    (test_entailment, "test_matches_brute_force_oracle"),
]


@criterion(6, "property suites, 1000 generated cases each")
@pytest.mark.parametrize("module, name", PROPERTY_SUITES, ids=[n for _, n in PROPERTY_SUITES])
def test_criterion_6_properties(module, name):
    assert module.PROPERTY.max_examples >= 1000
    getattr(module, name)()


@criterion(7, "unification micro-facts")
def test_criterion_7_unification():
    ni_o = parse_category("np_ni|o")
    b = unify(parse_category("np_o"), ni_o)
    assert b is not None and b.features[()] == CaseFeature.of("o")
    b = unify(parse_category("np_ni"), ni_o)
    assert b is not None and b.features[()] == CaseFeature.of("ni")
    assert unify(parse_category("np_ga"), parse_category("np_o")) is None


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
