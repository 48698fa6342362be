"""Random formulas and S5-NF instances for property tests and benchmarks."""

from __future__ import annotations

import random

from .formula import (
    And, Atom, Box, Diamond, Formula, Iff, Implies, Lit, Not, Or, conj, disj,
)


def random_formula(rng: random.Random, n_atoms: int = 4, depth: int = 4,
                   max_boxes: int = 4, max_diamonds: int = 4, max_nodes: int = 24,
                   sugar: bool = True, parts=(2, 4)) -> Formula:
    """Arbitrary formula with bounded depth, node count and modal operators.

    The result is a conjunction of ``parts`` random subformulas, which keeps a
    healthy share of unsatisfiable instances.  Modal operators are counted as
    written, before any negation is pushed inward; depth counts every
    connective, so modal depth is bounded by ``depth`` as well.
    """
    names = [f"p{k}" for k in range(n_atoms)]
    budget = {"nodes": max_nodes, "box": max_boxes, "dia": max_diamonds}

    def leaf():
        budget["nodes"] -= 1
        return Atom(rng.choice(names))

    def build(d):
        if d == 0 or budget["nodes"] <= 1:
            return leaf()
        budget["nodes"] -= 1
        ops = ["not", "and", "or", "and", "or"]
        if sugar:
            ops += ["imp", "iff"]
        if budget["box"] > 0:
            ops += ["box", "box"]
        if budget["dia"] > 0:
            ops += ["dia", "dia"]
        op = rng.choice(ops)
        if op == "not":
            return Not(build(d - 1))
        if op == "box":
            budget["box"] -= 1
            return Box(build(d - 1))
        if op == "dia":
            budget["dia"] -= 1
            return Diamond(build(d - 1))
        left = build(d - 1)
        right = build(d - 1)
        if op == "and":
            return And((left, right))
        if op == "or":
            return Or((left, right))
        if op == "imp":
            return Implies(left, right)
        return Iff(left, right)

    k = rng.randint(*parts)
    if k <= 1:
        return build(depth)
    # the top-level conjunction uses one level of depth
    return conj(*(build(depth - 1) for _ in range(k)))


def _lit(rng, names) -> Lit:
    return Lit(rng.choice(names), rng.random() < 0.5)


def _lit_set(rng, names, width) -> frozenset:
    chosen = rng.sample(names, min(width, len(names)))
    return frozenset(Lit(a, rng.random() < 0.5) for a in chosen)


def _distinct_sets(rng, names, count, width) -> list:
    out: list = []
    for _ in range(100 * count):
        if len(out) == count:
            break
        s = _lit_set(rng, names, rng.randint(*width))
        if s not in out:
            out.append(s)
    return out


def random_s5nf_formula(rng: random.Random, n_atoms: int = 5, n_boxes: int = 4,
                        n_diamonds: int = 4, n_clauses: int = 5, box_width=(1, 3),
                        dia_width=(1, 3), clause_width=(1, 3)) -> Formula:
    """Formula already in S5-NF built from pools of distinct box/diamond literals.

    Every pooled literal occurs in some clause and no clause is a tautology,
    so normalizing the result keeps all ``n_boxes`` and ``n_diamonds`` (pool
    sizes are capped only if too few distinct literal sets exist).
    """
    names = [f"p{k}" for k in range(n_atoms)]
    boxes = _distinct_sets(rng, names, n_boxes, box_width)
    dias = _distinct_sets(rng, names, n_diamonds, dia_width)

    def box_f(s):
        return Box(disj(*(l.to_formula() for l in sorted(s))))

    def dia_f(s):
        return Diamond(conj(*(l.to_formula() for l in sorted(s))))

    pool = [box_f(s) for s in boxes] + [dia_f(s) for s in dias]
    rng.shuffle(pool)
    clauses = []
    # every modal literal occurs at least once
    for m in pool:
        clauses.append([m])
    while len(clauses) < n_clauses:
        clauses.append([])
    rng.shuffle(clauses)
    for c in clauses:
        used = set()
        target = rng.randint(*clause_width)
        while len(c) < target or not c:
            if rng.random() < 0.5:
                c.append(rng.choice(pool))
                continue
            l = _lit(rng, names)
            if ~l in used:
                continue
            used.add(l)
            c.append(l.to_formula())
    return conj(*(disj(*c) for c in clauses))
