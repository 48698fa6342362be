"""Formula AST, propositional literals and the S5 normal form containers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

# Atom names starting with this prefix are reserved for normalizer-generated atoms.
RESERVED_PREFIX = "__"
# Reserved atom used to express the constants true/false found in benchmark files.
TOP_ATOM = "__top"


def is_fresh(name: str) -> bool:
    return name.startswith(RESERVED_PREFIX)


# --------------------------------------------------------------------------
# Formula AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be non-empty")

    @property
    def fresh(self) -> bool:
        return is_fresh(self.name)


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("And needs at least two children; use conj()")


@dataclass(frozen=True)
class Or:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("Or needs at least two children; use disj()")


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    arg: "Formula"


@dataclass(frozen=True)
class Diamond:
    arg: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Iff, Box, Diamond]
MODAL = (Box, Diamond)


def conj(*args: Formula) -> Formula:
    """Flattening conjunction; a single argument is returned unchanged."""
    flat = []
    for a in args:
        if isinstance(a, And):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        raise ValueError("empty conjunction")
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args: Formula) -> Formula:
    """Flattening disjunction; a single argument is returned unchanged."""
    flat = []
    for a in args:
        if isinstance(a, Or):
            flat.extend(a.args)
        else:
            flat.append(a)
    if not flat:
        raise ValueError("empty disjunction")
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def children(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, (Not, Box, Diamond)):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return f.args
    return (f.left, f.right)


def atoms(f: Formula) -> set[str]:
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        else:
            stack.extend(children(g))
    return out


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children(f))


def modal_depth(f: Formula) -> int:
    inner = max((modal_depth(c) for c in children(f)), default=0)
    return inner + 1 if isinstance(f, MODAL) else inner


def desugar(f: Formula) -> Formula:
    """Rewrite -> and <-> in terms of ~, & and |."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.arg))
    if isinstance(f, Box):
        return Box(desugar(f.arg))
    if isinstance(f, Diamond):
        return Diamond(desugar(f.arg))
    if isinstance(f, And):
        return And(tuple(desugar(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(desugar(a) for a in f.args))
    left, right = desugar(f.left), desugar(f.right)
    if isinstance(f, Implies):
        return Or((Not(left), right))
    return And((Or((Not(left), right)), Or((Not(right), left))))


# --------------------------------------------------------------------------
# Literals and S5-NF
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Lit:
    """A propositional literal."""

    atom: str
    positive: bool = True

    def __invert__(self) -> "Lit":
        return Lit(self.atom, not self.positive)

    def __str__(self):
        return self.atom if self.positive else "~" + self.atom

    def to_formula(self) -> Formula:
        return Atom(self.atom) if self.positive else Not(Atom(self.atom))


def complement(lit: Lit) -> Lit:
    return ~lit


def complement_set(lits: Iterable[Lit]) -> frozenset:
    return frozenset(~l for l in lits)


def has_complementary(lits: Iterable[Lit]) -> bool:
    seen = set(lits)
    return any(~l in seen for l in seen)


def sorted_lits(lits: Iterable[Lit]) -> list[Lit]:
    return sorted(lits, key=lambda l: (l.atom, not l.positive))


@dataclass(frozen=True)
class BoxLit:
    id: int
    lits: frozenset

    def __post_init__(self):
        if not self.lits:
            raise ValueError("box literal needs at least one literal")

    def to_formula(self) -> Formula:
        return Box(disj(*(l.to_formula() for l in sorted_lits(self.lits))))


@dataclass(frozen=True)
class DiaLit:
    id: int
    lits: frozenset

    def __post_init__(self):
        if not self.lits:
            raise ValueError("diamond literal needs at least one literal")

    def to_formula(self) -> Formula:
        return Diamond(conj(*(l.to_formula() for l in sorted_lits(self.lits))))


S5Literal = Union[Lit, BoxLit, DiaLit]


@dataclass(frozen=True)
class S5Clause:
    id: int
    disjuncts: tuple

    def __post_init__(self):
        if not self.disjuncts:
            raise ValueError("S5 clause must be non-empty")

    @property
    def props(self) -> list[Lit]:
        return [d for d in self.disjuncts if isinstance(d, Lit)]

    @property
    def box_ids(self) -> list[int]:
        return [d.id for d in self.disjuncts if isinstance(d, BoxLit)]

    @property
    def diamond_ids(self) -> list[int]:
        return [d.id for d in self.disjuncts if isinstance(d, DiaLit)]

    def to_formula(self) -> Formula:
        return disj(*(d.to_formula() for d in self.disjuncts))


@dataclass(frozen=True)
class S5NF:
    """A conjunction of S5 clauses with fixed box/diamond enumerations.

    ``boxes[i - 1]`` is the literal set of box ``i`` (likewise for diamonds).
    ``unsat`` marks a formula whose pruning produced an empty clause.
    An empty clause list denotes a valid formula.
    """

    clauses: tuple
    boxes: tuple = ()
    diamonds: tuple = ()
    atoms: frozenset = field(default_factory=frozenset)
    unsat: bool = False

    @property
    def m(self) -> int:
        return len(self.boxes)

    @property
    def n(self) -> int:
        return len(self.diamonds)

    def box(self, i: int) -> frozenset:
        return self.boxes[i - 1]

    def diamond(self, j: int) -> frozenset:
        return self.diamonds[j - 1]

    def to_formula(self) -> Formula:
        top = Atom(TOP_ATOM)
        if self.unsat:
            return And((top, Not(top)))
        if not self.clauses:
            return Or((top, Not(top)))
        return conj(*(c.to_formula() for c in self.clauses))


def lits(x) -> frozenset:
    """Propositional literals of an S5 literal (object or formula), clause or S5NF."""
    if isinstance(x, Lit):
        return frozenset([x])
    if isinstance(x, (BoxLit, DiaLit)):
        return x.lits
    if isinstance(x, S5Clause):
        return frozenset().union(*(lits(d) for d in x.disjuncts))
    if isinstance(x, S5NF):
        return frozenset().union(*(lits(c) for c in x.clauses)) if x.clauses else frozenset()
    if isinstance(x, Box) and is_s5_literal(x):
        return frozenset(literal_of(g) for g in _flat(x.arg, Or))
    if isinstance(x, Diamond) and is_s5_literal(x):
        return frozenset(literal_of(g) for g in _flat(x.arg, And))
    if is_literal(x):
        return frozenset([literal_of(x)])
    raise TypeError(f"lits() undefined for {type(x).__name__}")


# --------------------------------------------------------------------------
# Syntactic S5-NF check on formulas
# --------------------------------------------------------------------------

def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.arg, Atom))


def literal_of(f: Formula) -> Lit:
    if isinstance(f, Atom):
        return Lit(f.name)
    if isinstance(f, Not) and isinstance(f.arg, Atom):
        return Lit(f.arg.name, False)
    raise ValueError(f"not a literal: {f!r}")


def _flat(f: Formula, kind) -> list:
    if isinstance(f, kind):
        out = []
        for a in f.args:
            out.extend(_flat(a, kind))
        return out
    return [f]


def is_s5_literal(f: Formula) -> bool:
    if is_literal(f):
        return True
    if isinstance(f, Box):
        return all(is_literal(g) for g in _flat(f.arg, Or))
    if isinstance(f, Diamond):
        return all(is_literal(g) for g in _flat(f.arg, And))
    return False


def is_s5nf(f: Formula) -> bool:
    return all(
        all(is_s5_literal(d) for d in _flat(c, Or)) for c in _flat(f, And)
    )
