import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matlog.terms import (
    App,
    InputError,
    Rule,
    Signature,
    Translation,
    Var,
    apply_substitution,
    check_term,
    compose_translations,
    identity_translation,
    term_depth,
    translate_term,
    variables,
)

SL = Signature((("join", 2), ("ca", 1), ("cb", 1), ("c0", 1)))
NA = Signature((("neg", 1),))


def test_signature_rejects_duplicates_and_nullary():
    with pytest.raises(InputError):
        Signature((("f", 1), ("f", 2)))
    with pytest.raises(InputError):
        Signature((("f", 0),))


def test_identity_substitution_is_identity():
    t = App("join", (Var(1), App("ca", (Var(2),))))
    assert apply_substitution({}, t) == t


def test_substitution_renames_variables():
    t = App("join", (Var(1), Var(1)))
    assert apply_substitution({1: Var(2)}, t) == App("join", (Var(2), Var(2)))


def test_substitution_is_homomorphic():
    t = App("neg", (Var(1),))
    s = {1: App("neg", (Var(2),))}
    assert apply_substitution(s, t) == App("neg", (App("neg", (Var(2),)),))


def test_translate_term_identity():
    tr = identity_translation(SL)
    t = App("join", (App("ca", (Var(1),)), App("cb", (Var(1),))))
    assert translate_term(tr, t) == t


def test_translate_term_unfolds_composite_image():
    src = Signature((("f", 1),))
    dst = Signature((("g", 1),))
    tr = Translation(src, dst, (App("g", (App("g", (Var(1),)),)),))
    t = App("f", (App("f", (Var(1),)),))
    out = translate_term(tr, t)
    assert out == App("g", (App("g", (App("g", (App("g", (Var(1),)),)),)),))


def test_translation_validates_variable_window():
    src = Signature((("f", 1),))
    with pytest.raises(InputError):
        Translation(src, SL, (App("join", (Var(1), Var(2))),))


def test_rule_variables_are_sorted():
    r = Rule((Var(3), App("neg", (Var(1),))), Var(2))
    assert r.variables() == (1, 2, 3)


# hypothesis strategies over SL terms


def sl_terms(max_depth=4, nvars=3):
    base = st.integers(min_value=1, max_value=nvars).map(Var)

    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda ab: App("join", ab)),
            children.map(lambda a: App("ca", (a,))),
            children.map(lambda a: App("cb", (a,))),
            children.map(lambda a: App("c0", (a,))),
        )

    return st.recursive(base, extend, max_leaves=2 ** max_depth)


@given(sl_terms(), st.dictionaries(st.integers(1, 3), sl_terms(max_depth=2), max_size=3))
@settings(max_examples=120, deadline=None)
def test_translation_commutes_with_substitution(t, sub):
    """translate(apply(s, t)) equals apply(translate of s, translate(t))."""
    tr = Translation(
        SL,
        SL,
        (
            App("join", (Var(2), Var(1))),
            App("ca", (App("ca", (Var(1),)),)),
            App("cb", (Var(1),)),
            App("c0", (App("cb", (Var(1),)),)),
        ),
    )
    lhs = translate_term(tr, apply_substitution(sub, t))
    sub_tr = {k: translate_term(tr, v) for k, v in sub.items()}
    rhs = apply_substitution(sub_tr, translate_term(tr, t))
    assert lhs == rhs


@given(sl_terms())
@settings(max_examples=120, deadline=None)
def test_translation_never_adds_variables(t):
    tr = Translation(
        SL,
        SL,
        (
            App("join", (Var(1), Var(1))),
            App("c0", (Var(1),)),
            App("cb", (Var(1),)),
            App("c0", (Var(1),)),
        ),
    )
    assert variables(translate_term(tr, t)) <= variables(t)


def test_compose_translations_matches_pointwise_translation():
    src = Signature((("f", 1),))
    mid = Signature((("g", 1),))
    tr1 = Translation(src, mid, (App("g", (App("g", (Var(1),)),)),))
    tr2 = Translation(mid, NA, (App("neg", (Var(1),)),))
    comp = compose_translations(tr2, tr1)
    t = App("f", (Var(1),))
    assert translate_term(comp, t) == translate_term(tr2, translate_term(tr1, t))


def test_check_term_arity_mismatch():
    with pytest.raises(InputError):
        check_term(SL, App("join", (Var(1),)))
    assert term_depth(App("join", (Var(1), App("ca", (Var(1),))))) == 2
