"""Answer-set programming text for S5-NF formulas.

``emit_facts`` writes the relational encoding of a formula and
``emit_program`` the rule set of a variant; the concatenation is meant for
an external grounder/solver such as clingo.

Rules r14/r15 test the polarity of the origin literal with ``pos``/``neg``,
the constants produced by r16/r17.  r14/r15 match the reached literal with
``_`` while r24/r25 key on the origin polarity; both are kept as listed.
"""

from __future__ import annotations

import re

from .encoder import (
    box_subset_pairs, compute_worlds, conflict_pairs, diamond_subset_pairs,
)
from .formula import S5NF, sorted_lits

FULL = "full"
REACH = "reach"
REACH_CONFLICTS = "reach_conflicts"
REACH_BOXES = "reach_boxes"
REACH_DIAMONDS = "reach_diamonds"
REACH_ALL = "reach_all"
VARIANTS = (FULL, REACH, REACH_CONFLICTS, REACH_BOXES, REACH_DIAMONDS, REACH_ALL)

RULES = {
    0: "world(D,D) :- diamond(D).",
    1: "{true(X)} :- box(X).",
    2: "{true(X)} :- diamond(X).",
    3: "{true(X)} :- atom(X).",
    4: "{true(X,W)} :- world(W,_), atom(X).",
    5: ":- clause(C); not true(X) : pos_clause(C,X); true(X) : neg_clause(C,X).",
    6: ":- box(B), true(B); not true(X) : pos_box(B,X); true(X) : neg_box(B,X).",
    7: ":- world(W,D); box(B), true(B), diamond(D), true(D), not implied(D);\n"
       "   not true(X,W) : pos_box(B,X); true(X,W) : neg_box(B,X).",
    8: "implied(D) :- diamond(D); true(X) : pos_diamond(D,X);\n"
       "   not true(X) : neg_diamond(D,X).",
    9: ":- diamond(D), implied(D), not true(D).",
    10: ":- pos_diamond(D,X); true(D), not implied(D); world(W,D), not true(X,W).",
    11: ":- neg_diamond(D,X); true(D), not implied(D); world(W,D), true(X,W).",
    12: "need(W) :- world(W,D), true(D), not implied(D).",
    13: ":- atom(X), world(W,_), not need(W), true(X,W).",
    14: "{true(Y,W)} :- world(W,D), pos_diamond(D,X), lrl(X,pos,Y,_).",
    15: "{true(Y,W)} :- world(W,D), neg_diamond(D,X), lrl(X,neg,Y,_).",
    16: "lrl(X,pos,X,pos) :- atom(X), pos_diamond(_,X).",
    17: "lrl(X,neg,X,neg) :- atom(X), neg_diamond(_,X).",
    18: "lrl(X,PX,Z,pos) :- lrl(X,PX,Y,neg); pos_box(B,Y); pos_box(B,Z), Z!=Y.",
    19: "lrl(X,PX,Z,neg) :- lrl(X,PX,Y,neg); pos_box(B,Y); neg_box(B,Z).",
    20: "lrl(X,PX,Z,pos) :- lrl(X,PX,Y,pos); neg_box(B,Y); pos_box(B,Z).",
    21: "lrl(X,PX,Z,neg) :- lrl(X,PX,Y,pos); neg_box(B,Y); neg_box(B,Z), Z!=Y.",
    22: "lrb(X,P,B) :- lrl(X,P,Y,neg); pos_box(B,Y).",
    23: "lrb(X,P,B) :- lrl(X,P,Y,pos); neg_box(B,Y).",
    24: "reach_box(W,B) :- world(W,D), pos_diamond(D,X); lrb(X,pos,B).",
    25: "reach_box(W,B) :- world(W,D), neg_diamond(D,X); lrb(X,neg,B).",
    26: ":- world(W,D), diamond(D), true(D), not implied(D); reach_box(W,B);\n"
        "   true(B); not true(X,W) : pos_box(B,X); true(X,W) : neg_box(B,X).",
    27: ":- box_diamond_conflict(B,D); true(B), true(D).",
    28: ":- box_subset(B,B'), true(B), not true(B').",
    29: "implied(D) :- diamond_subset(D,D'), true(D').",
}


def rule_ids(variant: str) -> list[int]:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    ids = set(range(0, 14))
    if variant != FULL:
        ids -= {4, 7}
        ids |= set(range(14, 27))
    if variant in (REACH_CONFLICTS, REACH_ALL):
        ids.add(27)
    if variant in (REACH_BOXES, REACH_ALL):
        ids.add(28)
    if variant in (REACH_DIAMONDS, REACH_ALL):
        ids.discard(0)
        ids.add(29)
    return sorted(ids)


def emit_program(variant: str) -> str:
    return "\n".join(f"% r{k}\n{RULES[k]}" for k in rule_ids(variant)) + "\n"


_CONSTANT = re.compile(r"[a-z][A-Za-z0-9_]*$")
_RESERVED_ID = re.compile(r"[bcd][0-9]+$")


def atom_term(name: str) -> str:
    """ASP term for an atom: verbatim when it is a safe constant, else a string."""
    if _CONSTANT.match(name) and not _RESERVED_ID.match(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def fact_list(f: S5NF, variant: str = FULL) -> list[str]:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if f.unsat:
        raise ValueError("formula is unsatisfiable by construction; nothing to encode")
    facts = [f"atom({atom_term(a)})." for a in sorted(f.atoms)]
    for i, box in enumerate(f.boxes, 1):
        facts.append(f"box(b{i}).")
        for l in sorted_lits(box):
            facts.append(f"{'pos' if l.positive else 'neg'}_box(b{i},{atom_term(l.atom)}).")
    for j, dia in enumerate(f.diamonds, 1):
        facts.append(f"diamond(d{j}).")
        for l in sorted_lits(dia):
            facts.append(f"{'pos' if l.positive else 'neg'}_diamond(d{j},{atom_term(l.atom)}).")
    for c in f.clauses:
        facts.append(f"clause(c{c.id}).")
        for l in sorted_lits(c.props):
            facts.append(f"{'pos' if l.positive else 'neg'}_clause(c{c.id},{atom_term(l.atom)}).")
        facts.extend(f"pos_clause(c{c.id},b{i})." for i in c.box_ids)
        facts.extend(f"pos_clause(c{c.id},d{j})." for j in c.diamond_ids)
    if variant in (REACH_CONFLICTS, REACH_ALL):
        facts.extend(f"box_diamond_conflict(b{i},d{j})." for i, j in conflict_pairs(f))
    if variant in (REACH_BOXES, REACH_ALL):
        facts.extend(f"box_subset(b{i},b{k})." for i, k in box_subset_pairs(f))
    if variant in (REACH_DIAMONDS, REACH_ALL):
        facts.extend(f"diamond_subset(d{j},d{i})." for j, i in diamond_subset_pairs(f))
        for world in compute_worlds(f).worlds:
            facts.extend(f"world(d{world[0]},d{j})." for j in world)
    return facts


def emit_facts(f: S5NF, variant: str = FULL) -> str:
    return "\n".join(fact_list(f, variant)) + "\n"
