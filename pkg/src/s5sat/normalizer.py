"""Equi-satisfiable translation of arbitrary S5 formulas into S5 normal form.

The pipeline is: desugar, negation normal form, modal pushing (chain
collapse, distribution and lifting of modal literals), then renaming of
mixed conjunction/disjunction nesting with fresh atoms whose one-sided
definitions are asserted under a box.
"""

from __future__ import annotations

from .formula import (
    MODAL, RESERVED_PREFIX, And, Atom, Box, BoxLit, DiaLit, Diamond, Formula,
    Iff, Implies, Lit, Not, Or, S5Clause, S5NF, atoms, conj, desugar, disj,
    has_complementary, is_literal, literal_of,
)


class FreshGen:
    """Source of fresh atoms ``__f1``, ``__f2``, ... for one problem."""

    def __init__(self, prefix: str = RESERVED_PREFIX + "f", taken=()):
        if not prefix.startswith(RESERVED_PREFIX):
            raise ValueError(f"fresh prefix must start with {RESERVED_PREFIX!r}")
        self.prefix = prefix
        self.counter = 0
        self.taken = set(taken)

    def __call__(self) -> Atom:
        while True:
            self.counter += 1
            name = f"{self.prefix}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return Atom(name)


def to_nnf(f: Formula) -> Formula:
    """Push negations down to atoms; implications must be desugared first."""
    return _nnf(f, True)


def _nnf(f: Formula, positive: bool) -> Formula:
    if isinstance(f, Atom):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return _nnf(f.arg, not positive)
    if isinstance(f, (And, Or)):
        args = [_nnf(a, positive) for a in f.args]
        if isinstance(f, And) == positive:
            return conj(*args)
        return disj(*args)
    if isinstance(f, (Box, Diamond)):
        arg = _nnf(f.arg, positive)
        if isinstance(f, Box) == positive:
            return Box(arg)
        return Diamond(arg)
    if isinstance(f, (Implies, Iff)):
        raise ValueError("to_nnf expects a desugared formula")
    raise TypeError(f"unexpected node {type(f).__name__}")


def push_modalities(f: Formula) -> Formula:
    """Collapse modal chains, distribute and lift modal literals (NNF input)."""
    if is_literal(f):
        return f
    if isinstance(f, And):
        return conj(*(push_modalities(a) for a in f.args))
    if isinstance(f, Or):
        return disj(*(push_modalities(a) for a in f.args))
    if isinstance(f, Box):
        return _box_of(push_modalities(f.arg))
    if isinstance(f, Diamond):
        return _dia_of(push_modalities(f.arg))
    raise ValueError(f"push_modalities expects NNF, got {type(f).__name__}")


def _box_of(g: Formula) -> Formula:
    # g is already pushed
    if isinstance(g, MODAL):
        return g
    if isinstance(g, And):
        return conj(*(_box_of(a) for a in g.args))
    if isinstance(g, Or):
        modal = [a for a in g.args if isinstance(a, MODAL)]
        if not modal:
            return Box(g)
        rest = [a for a in g.args if not isinstance(a, MODAL)]
        head = [_box_of(disj(*rest))] if rest else []
        return disj(*head, *modal)
    return Box(g)


def _dia_of(g: Formula) -> Formula:
    if isinstance(g, MODAL):
        return g
    if isinstance(g, Or):
        return disj(*(_dia_of(a) for a in g.args))
    if isinstance(g, And):
        modal = [a for a in g.args if isinstance(a, MODAL)]
        if not modal:
            return Diamond(g)
        rest = [a for a in g.args if not isinstance(a, MODAL)]
        head = [_dia_of(conj(*rest))] if rest else []
        return conj(*head, *modal)
    return Diamond(g)


class _Namer:
    """Worklist clausifier introducing fresh atoms for blocking subformulas.

    Syntactically identical named subformulas share one fresh atom.
    """

    def __init__(self, gen: FreshGen):
        self.gen = gen
        self.names: dict[Formula, Atom] = {}
        self.todo: list[Formula] = []

    def name(self, g: Formula) -> Atom:
        if g in self.names:
            return self.names[g]
        p = self.names[g] = self.gen()
        if isinstance(g, And):
            # conjunction under a disjunction: one definition per conjunct
            for c in g.args:
                self.todo.append(push_modalities(Box(disj(Not(p), c))))
        else:
            # disjunction under a conjunction: a single definition
            self.todo.append(push_modalities(Box(disj(Not(p), g))))
        return p

    def run(self, f: Formula) -> list[Formula]:
        clauses = []
        self.todo = [f]
        while self.todo:
            g = self.todo.pop(0)
            if isinstance(g, And):
                self.todo[0:0] = list(g.args)
                continue
            parts = g.args if isinstance(g, Or) else (g,)
            clauses.append(disj(*(self.disjunct(d) for d in parts)))
        return clauses

    def disjunct(self, d: Formula) -> Formula:
        if is_literal(d):
            return d
        if isinstance(d, And):
            return self.name(d)
        if isinstance(d, Box):
            body = d.arg.args if isinstance(d.arg, Or) else (d.arg,)
            return Box(disj(*(b if is_literal(b) else self.name(b) for b in body)))
        if isinstance(d, Diamond):
            body = d.arg.args if isinstance(d.arg, And) else (d.arg,)
            return Diamond(conj(*(b if is_literal(b) else self.name(b) for b in body)))
        raise ValueError(f"unexpected disjunct {type(d).__name__}")


def name_nested(f: Formula, gen: FreshGen) -> Formula:
    """Rename mixed nesting until the formula is in S5-NF.

    ``f`` must be in NNF with modalities pushed.  The result conjoins the
    rewritten clauses followed by the defining box clauses in creation order.
    """
    return conj(*_Namer(gen).run(f))


def normalize(f: Formula, gen: FreshGen | None = None) -> S5NF:
    gen = gen or FreshGen(taken=atoms(f))
    g = push_modalities(to_nnf(desugar(f)))
    return build_s5nf(name_nested(g, gen))


def build_s5nf(f: Formula) -> S5NF:
    """Index an S5-NF formula: dedupe, prune degenerate literals, enumerate."""
    clauses = []
    unsat = False
    box_ids: dict[frozenset, int] = {}
    dia_ids: dict[frozenset, int] = {}
    all_atoms: set[str] = set()
    for c in (f.args if isinstance(f, And) else (f,)):
        disjuncts = []
        tautology = False
        for d in (c.args if isinstance(c, Or) else (c,)):
            if is_literal(d):
                item = literal_of(d)
                all_atoms.add(item.atom)
            elif isinstance(d, Box):
                body = frozenset(literal_of(x) for x in (d.arg.args if isinstance(d.arg, Or) else (d.arg,)))
                all_atoms.update(l.atom for l in body)
                if has_complementary(body):
                    tautology = True
                    continue
                item = body, Box
            elif isinstance(d, Diamond):
                body = frozenset(literal_of(x) for x in (d.arg.args if isinstance(d.arg, And) else (d.arg,)))
                all_atoms.update(l.atom for l in body)
                if has_complementary(body):
                    continue
                item = body, Diamond
            else:
                raise ValueError("formula is not in S5-NF")
            if item not in disjuncts:
                disjuncts.append(item)
        props = {d for d in disjuncts if isinstance(d, Lit)}
        if tautology or has_complementary(props):
            continue
        if not disjuncts:
            unsat = True
            continue
        clauses.append(disjuncts)

    if unsat:
        return S5NF(clauses=(), atoms=frozenset(all_atoms), unsat=True)

    built = []
    for k, disjuncts in enumerate(clauses, 1):
        items = []
        for d in disjuncts:
            if isinstance(d, Lit):
                items.append(d)
            elif d[1] is Box:
                items.append(BoxLit(box_ids.setdefault(d[0], len(box_ids) + 1), d[0]))
            else:
                items.append(DiaLit(dia_ids.setdefault(d[0], len(dia_ids) + 1), d[0]))
        built.append(S5Clause(k, tuple(items)))
    return S5NF(
        clauses=tuple(built),
        boxes=tuple(box_ids),
        diamonds=tuple(dia_ids),
        atoms=frozenset(all_atoms),
    )
