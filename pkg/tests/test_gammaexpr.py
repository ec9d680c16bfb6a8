import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diracsym.clifford import FULL_SET, basis_matrix, gamma
from diracsym.discrete import U_C, U_P, U_T
from diracsym.gammaexpr import (
    Dagger,
    Generator,
    Identity,
    ImaginaryUnit,
    IntegerLiteral,
    Negate,
    NotMonomialError,
    ParseError,
    Product,
    Star,
    Transpose,
    canonical_form,
    canonicalize,
    eval_exact,
    evaluate,
    expr_from_canonical,
    format_canonical,
    format_expr,
    normalize,
    parse,
)
from diracsym.report import EXPR_CORPUS
from diracsym.scalars import ExactMatrix, I_UNIT, ONE

leaves = st.one_of(
    st.sampled_from([0, 1, 2, 3, 5]).map(Generator),
    st.just(Identity()),
    st.just(ImaginaryUnit()),
    st.integers(-4, 4).map(IntegerLiteral),
)


def _extend(children):
    return st.one_of(
        children.map(Negate),
        st.lists(children, min_size=0, max_size=4).map(lambda fs: Product(tuple(fs))),
        children.map(Star),
        children.map(Transpose),
        children.map(Dagger),
    )


asts = st.recursive(leaves, _extend, max_leaves=8)


def test_parse_examples():
    assert parse("i*g0") == Product((ImaginaryUnit(), Generator(0)))
    assert parse("I") == Identity()
    assert parse("-g2") == Negate(Generator(2))
    assert parse("dagger(g1)") == Dagger(Generator(1))


@pytest.mark.parametrize(
    "text, kind, offset",
    [
        ("g4", "lexical", 0),
        ("g0*(", "syntax", 4),
        ("g0 g1", "syntax", 3),
        ("g0*$", "lexical", 3),
        ("", "syntax", 0),
        ("star g0", "syntax", 5),
        ("(g0", "syntax", 3),
        ("g0)", "syntax", 2),
    ],
)
def test_parse_errors_carry_offsets(text, kind, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.kind == kind
    assert info.value.offset == offset


@given(st.text(alphabet="gI i0123456789*-()stardgpoe", max_size=20))
def test_parser_never_crashes(text):
    try:
        parse(text)
    except ParseError as exc:
        assert 0 <= exc.offset <= len(text)


def test_eval_examples():
    assert evaluate("g5*g5") == ExactMatrix.identity(4)
    assert evaluate("-1*g0*g2") == U_C
    assert evaluate("star(g2)") == -gamma(2)
    assert evaluate("transpose(g2)") == gamma(2)
    assert evaluate("dagger(g2)") == -gamma(2)
    assert evaluate("-i*g0*g1*g3") == U_T
    assert evaluate("i*g0") == U_P


def test_canonicalize_examples():
    assert canonicalize(parse("g0*g2*g0")) == (-ONE, (2,))
    assert canonicalize(parse("I")) == (ONE, ())
    assert canonicalize(parse("-i*g0*g1*g2*g3")) == (ONE, FULL_SET)


def test_format_examples():
    assert format_expr(Product((ImaginaryUnit(), Generator(0)))) == "i*g0"
    assert format_expr(Negate(Generator(2))) == "-g2"
    assert format_expr(Dagger(Generator(1))) == "dagger(g1)"


def test_format_canonical():
    assert format_canonical(-ONE, (2,)) == "-g2"
    assert format_canonical(I_UNIT, FULL_SET) == "i*g5"
    assert format_canonical(-I_UNIT, (0, 1, 3)) == "-i*g0*g1*g3"
    assert format_canonical(-ONE, ()) == "-I"
    assert format_canonical(2 * ONE, (1,)) == "2*g1"


def test_not_monomial():
    with pytest.raises(NotMonomialError):
        canonical_form(gamma(0) + gamma(1))
    with pytest.raises(NotMonomialError):
        canonical_form(ExactMatrix.zeros(4))


def test_exhaustive_words_up_to_three():
    for n in range(4):
        for word in itertools.product([0, 1, 2, 3, 5], repeat=n):
            expr = Product(tuple(Generator(s) for s in word))
            scale, key = canonicalize(expr)
            assert basis_matrix(key).scale(scale) == eval_exact(expr)


@pytest.mark.parametrize("text", EXPR_CORPUS)
def test_corpus_round_trip(text):
    e = parse(text)
    assert parse(format_expr(e)) == normalize(e)
    assert eval_exact(parse(format_expr(e))) == eval_exact(e)


@given(asts)
def test_round_trip_preserves_evaluation(e):
    text = format_expr(e)
    assert parse(text) == normalize(e)
    assert eval_exact(parse(text)) == eval_exact(e)


@given(asts)
def test_everything_is_a_monomial(e):
    m = eval_exact(e)
    if m.is_zero():
        return
    scale, key = canonical_form(m)
    assert basis_matrix(key).scale(scale) == m
    if scale.re.denominator == 1 and scale.im.denominator == 1 and (scale.re == 0 or scale.im == 0):
        assert eval_exact(expr_from_canonical(scale, key)) == m
