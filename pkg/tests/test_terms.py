import pytest
from hypothesis import given, settings

from casealt.terms import (
    TOP, Abs, App, Atom, Conj, Const, Exists, FuelExhausted, TermSyntaxError, Var,
    alpha_equal, app, beta_normalize, free_vars, normalize, parse_term, print_term,
    substitute, term_constants,
)

from strategies import (
    debruijn_merge_atoms, debruijn_substitute, small_typed_terms, to_debruijn, untyped_terms,
)

PROPERTY = settings(max_examples=1000, deadline=None)
NAMES = ("t", "j")


def test_parse_passive_suffix():
    got = parse_term(r"\P y x. P x y")
    want = Abs("P", Abs("y", Abs("x", App(App(Var("P"), Var("x")), Var("y")))))
    assert got == want


def test_parse_identity():
    assert alpha_equal(parse_term(r"\x. x"), Abs("z", Var("z")))


def test_parse_sigma_with_continuation():
    got = parse_term(r"Sig e:ev. praise(e,x,y) * k e")
    want = Exists("e", Conj(Atom("praise", (Var("e"), Var("x"), Var("y"))), App(Var("k"), Var("e"))))
    assert got == want


def test_unicode_aliases():
    ascii_ = parse_term(r"\x. Sig e:ev. run(e,x) * T")
    uni = parse_term("λx. Σe:ev. run(e,x) × ⊤")
    assert ascii_ == uni
    assert parse_term("∃e (run(e) ∧ Ag(e)=j)", "fol", NAMES) == parse_term("exists e (run(e) & Ag(e)=j)", "fol", NAMES)


def test_comments_are_ignored():
    assert parse_term("\\x. x  # identity") == parse_term("\\x. x")


def test_syntax_error_has_position():
    with pytest.raises(TermSyntaxError) as info:
        parse_term(r"\x. (x")
    assert "6" in str(info.value) or "position" in str(info.value)


def test_bound_names_unique_after_parse():
    t = parse_term(r"\x. (\x. x) x")
    binders = []

    def walk(u):
        if isinstance(u, (Abs, Exists)):
            binders.append(u.var)
            walk(u.body)
        elif isinstance(u, App):
            walk(u.fun)
            walk(u.arg)
    walk(t)
    assert len(binders) == len(set(binders)) == 2


def test_print_identity():
    assert print_term(parse_term(r"\x. x")) == r"\x. x"


def test_print_dts_sentence():
    t = Exists("e", Conj(Atom("praise", (Var("e"), Const("j"), Const("t"))), TOP))
    assert print_term(t, "dts") == "Sig e:ev. praise(e,j,t) * T"


def test_print_fol_sentence():
    t = parse_term("exists e (praise(e) & Ag(e)=j & Th(e)=t)", "fol", NAMES)
    assert print_term(t, "fol") == "exists e (praise(e) & Ag(e)=j & Th(e)=t)"


def test_conj_is_right_nested():
    t = parse_term("a1 & b1 & c1", "fol")
    assert isinstance(t, Conj) and isinstance(t.right, Conj)


def test_substitute_plain():
    assert substitute(Var("x"), "x", Const("j")) == Const("j")


def test_substitute_shadowed():
    assert substitute(Abs("x", Var("x")), "x", Const("j")) == Abs("x", Var("x"))


def test_substitute_renames_to_avoid_capture():
    got = substitute(Abs("y", App(Var("x"), Var("y"))), "x", Var("y"))
    assert isinstance(got, Abs) and got.var != "y"
    assert got.body == App(Var("y"), Var(got.var))


def test_beta_identity_application():
    assert beta_normalize(app(parse_term(r"\x. x"), Const("a"))) == Const("a")


def test_app_with_constant_head_becomes_atom():
    assert app(Const("praise"), Var("e")) == Atom("praise", (Var("e"),))
    with pytest.raises(TypeError):
        App(Const("praise"), Var("e"))


def test_omega_exhausts_fuel():
    omega = parse_term(r"(\x. x x) (\x. x x)")
    with pytest.raises(FuelExhausted):
        beta_normalize(omega, fuel=50)


def test_alpha_equal_examples():
    assert alpha_equal(Abs("x", Var("x")), Abs("y", Var("y")))
    a, b = Atom("p", (Const("a"),)), Atom("q", (Const("b"),))
    assert not alpha_equal(Conj(a, b), Conj(b, a))
    assert not alpha_equal(Abs("x", Var("y")), Abs("y", Var("y")))


def test_free_vars_examples():
    assert free_vars(Var("x")) == {"x"}
    re_template = parse_term(r"\Q2 Q1 C1 C2 K. V(Q2, Q1, \x1 e T. C1(x1,e,Th), \x2 e T. C2(x2,e,Ag), K)")
    assert free_vars(re_template) == {"V"}
    closed = parse_term("Sig e:ev. praise(e,j,t) * T", constants=NAMES)
    assert free_vars(closed) == frozenset()


def test_question_mark_forces_variable():
    t = parse_term("?foo")
    assert t == Var("foo")
    assert print_term(t) == "?foo"


def test_binder_clashing_with_constant_is_renamed_on_print():
    t = Abs("t", Atom("p", (Var("t"), Const("t"))))
    assert alpha_equal(parse_term(print_term(t), constants=term_constants(t)), t)


# ---------------------------------------------------------------------------
# properties

@PROPERTY
@given(untyped_terms)
def test_round_trip(t):
    for syntax in ("dts", "fol"):
        text = print_term(t, syntax)
        back = parse_term(text, syntax, term_constants(t))
        assert alpha_equal(back, t), text
        assert print_term(parse_term(print_term(back, syntax), syntax, term_constants(t)), syntax) == \
            print_term(back, syntax)


@PROPERTY
@given(untyped_terms, untyped_terms)
def test_substitution_matches_debruijn_oracle(t, v):
    for x in sorted(free_vars(t))[:2] or ["x"]:
        got = to_debruijn(substitute(t, x, v))
        want = debruijn_merge_atoms(debruijn_substitute(to_debruijn(t), x, to_debruijn(v)))
        assert got == want


@PROPERTY
@given(untyped_terms, untyped_terms)
def test_substitution_never_captures(t, v):
    for x in sorted(free_vars(t)) or ["x"]:
        result = substitute(t, x, v)
        allowed = (free_vars(t) - {x}) | (free_vars(v) if x in free_vars(t) else frozenset())
        assert free_vars(result) <= allowed


@PROPERTY
@given(small_typed_terms)
def test_confluence_outermost_innermost(t):
    outer, _ = normalize(t, strategy="outermost")
    inner, _ = normalize(t, strategy="innermost")
    assert alpha_equal(outer, inner)


@PROPERTY
@given(small_typed_terms)
def test_normalize_idempotent(t):
    nf, _ = normalize(t)
    again, steps = normalize(nf)
    assert steps == 0
    assert alpha_equal(again, nf)
