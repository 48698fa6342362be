import pytest
from hypothesis import given, settings

from s5sat.formula import And, Atom, Box, Diamond, Iff, Implies, Not, Or
from s5sat.parser import INTOHYLO, ParseError, format_for_path, parse, render

from strategies import formulas

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_precedence_and_associativity():
    assert parse("p | q & r") == Or((p, And((q, r))))
    assert parse("~p & q") == And((Not(p), q))
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("p <-> q <-> r") == Iff(Iff(p, q), r)
    assert parse("p & q -> r | p") == Implies(And((p, q)), Or((r, p)))


def test_chains_flatten_only_within_themselves():
    assert parse("p & q & r") == And((p, q, r))
    assert parse("(p & q) & r") == And((And((p, q)), r))


def test_modal_spellings():
    assert parse("box p") == Box(p)
    assert parse("[]p") == Box(p)
    assert parse("dia ~p") == Diamond(Not(p))
    assert parse("<> (p | q)") == Diamond(Or((p, q)))
    assert parse("box dia p") == Box(Diamond(p))


def test_comments_and_whitespace():
    assert parse("% a comment\n  p\n& q  % trailing\n") == And((p, q))


@pytest.mark.parametrize("text", ["", "p &", "(p", "p q", "box", "p -> ", "p ) ", "p # q"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse("p &\n  & q")
    assert (info.value.line, info.value.col) == (2, 3)


def test_reserved_names_are_rejected_unless_allowed():
    with pytest.raises(ParseError):
        parse("__f1 | p")
    assert parse("__f1 | p", allow_reserved=True) == Or((Atom("__f1"), p))


def test_intohylo_reader():
    text = "begin\n[r1](p1 | -p2) & <r1>(p1 & !p2) -> [] ~p3 & <>true\nend\n"
    f = parse(text, INTOHYLO)
    p1, p2, p3 = Atom("p1"), Atom("p2"), Atom("p3")
    assert f.left == And((Box(Or((p1, Not(p2)))), Diamond(And((p1, Not(p2))))))
    assert f.right.args[0] == Box(Not(p3))
    assert isinstance(f.right.args[1], Diamond)


def test_intohylo_constants():
    top = parse("true", INTOHYLO)
    bottom = parse("false", INTOHYLO)
    assert isinstance(top, Or) and isinstance(bottom, And)


def test_intohylo_rejects_other_relations():
    with pytest.raises(ParseError):
        parse("[r2] p", INTOHYLO)


def test_format_from_extension():
    assert format_for_path("a/b.intohylo") == INTOHYLO
    assert format_for_path("a/b.s5") == "native"


def test_render_examples():
    assert render(parse("p & box(p | q)")) == "p & box(p | q)"
    assert render(Not(And((p, q)))) == "~(p & q)"
    assert render(Implies(Implies(p, q), r)) == "(p -> q) -> r"


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_render_parse_round_trip(f):
    assert parse(render(f)) == f
