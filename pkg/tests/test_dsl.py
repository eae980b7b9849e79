from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matlog import casebook as cb
from matlog import dsl
from matlog.algebra import FiniteAlgebra, Matrix
from matlog.terms import App, Rule, Signature, Translation, Var

DATA = Path(__file__).resolve().parent.parent / "data" / "casebook.mlog"


def test_empty_file_gives_empty_bundle():
    bundle = dsl.parse_spec("")
    assert bundle.is_empty()


def test_comments_and_whitespace_only():
    assert dsl.parse_spec("# nothing here\n   \n").is_empty()


def test_shipped_casebook_file_round_trips():
    text = DATA.read_text()
    bundle = dsl.parse_spec(text)
    assert dsl.parse_spec(dsl.print_spec(bundle)) == bundle
    # content matches the built-ins (modulo display names)
    assert bundle.algebras["A"].tables == cb.build_A().tables
    assert bundle.matrices["A1"].designated == cb.matrix_A_1().designated
    assert bundle.logics["or_logic"].generators is not None
    assert bundle.logics["neg_rules"].rules == cb.neg_logic().rules
    assert bundle.translations["or_to_kappa3"].images == tuple(
        App(s, tuple(Var(i + 1) for i in range(a))) for s, a in cb.SL_SIG.symbols
    )


@pytest.mark.parametrize(
    "text,code",
    [
        ("signature S { op f/2 op g/1; }", "syntax"),
        ("signature S { op f/0; }", "value"),
        ("signature S { op f/1; op f/1; }", "duplicate"),
        ("signature S { op x1/1; }", "value"),
        ("algebra B over nope { universe 2; }", "dangling"),
        (
            "signature S { op f/2; } algebra B over S { universe 2; table f = [0,1,0]; }",
            "arity",
        ),
        (
            "signature S { op f/1; } algebra B over S { universe 2; table f = [0,5]; }",
            "value",
        ),
        ("signature S { op f/1; } matrix M { algebra B; designated {0}; }", "dangling"),
        ("logic L = matrices(M); ", "dangling"),
        ("signature S { op f/1; } logic L = rules { f(x1) |- x1; }", "syntax"),
        ("signature S @", "lex"),
        (
            "signature S { op f/2; } signature T { op g/1; } "
            "translation t : S -> T { f(x1, x2) -> g(x1, x2); }",
            "arity",
        ),
    ],
)
def test_diagnostics_carry_codes_and_positions(text, code):
    with pytest.raises(dsl.SpecError) as err:
        dsl.parse_spec(text)
    assert err.value.diagnostic.code == code
    assert err.value.diagnostic.line >= 1
    assert err.value.diagnostic.col >= 1


def test_arity_mismatch_in_rule_term():
    text = (
        "signature S { op f/2; } "
        "logic L over S = rules { f(x1) |- x1; }"
    )
    with pytest.raises(dsl.SpecError) as err:
        dsl.parse_spec(text)
    assert err.value.diagnostic.code == "arity"


# random bundle round-trip


@st.composite
def bundles(draw):
    b = dsl.WorkspaceBundle()
    nsig = draw(st.integers(1, 2))
    for i in range(nsig):
        nsym = draw(st.integers(1, 3))
        sig = Signature(
            tuple((f"f{i}_{j}", draw(st.integers(1, 2))) for j in range(nsym))
        )
        b.signatures[f"S{i}"] = sig
    sig_names = sorted(b.signatures)
    nalg = draw(st.integers(0, 2))
    for i in range(nalg):
        sig_name = draw(st.sampled_from(sig_names))
        sig = b.signatures[sig_name]
        size = draw(st.integers(1, 3))
        tables = tuple(
            tuple(
                draw(st.integers(0, size - 1)) for _ in range(size ** arity)
            )
            for _, arity in sig.symbols
        )
        b.algebras[f"Alg{i}"] = FiniteAlgebra(sig, size, tables)
        b.algebra_signature_names[f"Alg{i}"] = sig_name
    for i, alg_name in enumerate(sorted(b.algebras)):
        alg = b.algebras[alg_name]
        designated = frozenset(
            x for x in range(alg.size) if draw(st.booleans())
        )
        b.matrices[f"M{i}"] = Matrix(alg, designated)
        b.matrix_algebra_names[f"M{i}"] = alg_name
    if b.matrices:
        name = sorted(b.matrices)[0]
        m = b.matrices[name]
        from matlog.logic import Logic

        b.logics["L0"] = Logic("L0", m.algebra.signature, generators=(m,))
        b.logic_defs["L0"] = ("matrices", (name,))
    # a rule logic over the first signature
    sig = b.signatures[sig_names[0]]
    sym, arity = sig.symbols[0]
    rule = Rule((Var(1),), App(sym, tuple(Var(1) for _ in range(arity))))
    from matlog.logic import Logic

    b.logics["L1"] = Logic("L1", sig, rules=(rule,))
    b.logic_defs["L1"] = ("rules", sig_names[0])
    return b


@given(bundles())
@settings(max_examples=60, deadline=None)
def test_parse_print_round_trip(bundle):
    assert dsl.parse_spec(dsl.print_spec(bundle)) == bundle
