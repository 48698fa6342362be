import pytest

from s5sat.formula import (
    And, Atom, Box, BoxLit, Diamond, Iff, Implies, Lit, Not, Or, S5NF, atoms, complement_set,
    conj, desugar, disj, has_complementary, is_s5nf, literal_of, lits, modal_depth, size,
)


def test_connectives_need_two_arguments():
    with pytest.raises(ValueError):
        And((Atom("p"),))
    with pytest.raises(ValueError):
        Or(())


def test_conj_and_disj_flatten_and_collapse():
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    assert conj(p) == p
    assert conj(And((p, q)), r) == And((p, q, r))
    assert disj(p, Or((q, r))) == Or((p, q, r))


def test_measures():
    f = And((Atom("p"), Box(Or((Atom("q"), Diamond(Not(Atom("p"))))))))
    assert atoms(f) == {"p", "q"}
    assert modal_depth(f) == 2
    assert size(f) == 8


def test_desugar_removes_implication_and_equivalence():
    p, q = Atom("p"), Atom("q")
    assert desugar(Implies(p, q)) == Or((Not(p), q))
    g = desugar(Iff(p, q))
    assert not any(isinstance(x, (Implies, Iff)) for x in [g, *g.args])


def test_literals():
    p = Lit("p", True)
    assert ~p == Lit("p", False)
    assert ~~p == p
    assert str(~p) == "~p"
    assert complement_set({p, Lit("q", False)}) == {~p, Lit("q", True)}
    assert has_complementary({p, ~p})
    assert not has_complementary({p, Lit("q", True)})
    assert literal_of(Not(Atom("q"))) == Lit("q", False)
    assert sorted([Lit("q", True), Lit("p", False), Lit("p", True)])[0].atom == "p"


def test_lits_of_modal_literals():
    box = Box(Or((Atom("p"), Not(Atom("q")))))
    assert lits(box) == {Lit("p", True), Lit("q", False)}
    assert lits(Diamond(Atom("p"))) == {Lit("p", True)}


def test_s5nf_shape_recognition():
    p, q = Atom("p"), Atom("q")
    assert is_s5nf(And((p, Or((Box(Or((p, q))), Diamond(And((p, Not(q)))))))))
    assert not is_s5nf(Box(Box(p)))
    assert not is_s5nf(Not(Box(p)))
    assert not is_s5nf(Or((p, And((p, q)))))


def test_empty_and_unsat_normal_forms_render_to_constants():
    empty = S5NF((), (), (), frozenset())
    assert empty.m == empty.n == 0
    assert "__top" in atoms(empty.to_formula())
    bottom = S5NF((), (), (), frozenset(), unsat=True)
    assert isinstance(bottom.to_formula(), And)


def test_box_literal_formula():
    b = BoxLit(1, frozenset({Lit("p", True), Lit("q", False)}))
    assert lits(b.to_formula()) == b.lits
