"""Kripke models: semantics, reconstruction from SAT assignments, printing."""

from __future__ import annotations

from dataclasses import dataclass

from .encoder import CNFInstance, box_var, dia_var, implied_var, world_atom
from .formula import (
    And, Atom, Box, Diamond, Formula, Iff, Implies, Not, Or, is_fresh,
)
from .solver import check_assignment, solve_clauses


@dataclass(frozen=True)
class KripkeModel:
    """Worlds as sets of true atoms; world 0 is the designated one."""

    worlds: tuple

    def __post_init__(self):
        if not self.worlds:
            raise ValueError("a Kripke model needs at least one world")

    @classmethod
    def of(cls, *worlds) -> "KripkeModel":
        return cls(tuple(frozenset(w) for w in worlds))

    def __len__(self):
        return len(self.worlds)

    def project(self, keep=lambda a: not is_fresh(a)) -> "KripkeModel":
        """Drop atoms rejected by ``keep`` and deduplicate worlds (world 0 stays first)."""
        out = []
        for w in self.worlds:
            w = frozenset(a for a in w if keep(a))
            if w not in out:
                out.append(w)
        return KripkeModel(tuple(out))

    def serialize(self) -> str:
        return "\n".join(
            f"w{i}: {{{', '.join(sorted(w))}}}" for i, w in enumerate(self.worlds)
        )


def evaluate(f: Formula, model: KripkeModel, i: int = 0) -> bool:
    if not 0 <= i < len(model.worlds):
        raise IndexError(f"world {i} out of range")
    return _eval(f, model.worlds, i)


def _eval(f, worlds, i) -> bool:
    if isinstance(f, Atom):
        return f.name in worlds[i]
    if isinstance(f, Not):
        return not _eval(f.arg, worlds, i)
    if isinstance(f, And):
        return all(_eval(a, worlds, i) for a in f.args)
    if isinstance(f, Or):
        return any(_eval(a, worlds, i) for a in f.args)
    if isinstance(f, Implies):
        return not _eval(f.left, worlds, i) or _eval(f.right, worlds, i)
    if isinstance(f, Iff):
        return _eval(f.left, worlds, i) == _eval(f.right, worlds, i)
    if isinstance(f, Box):
        return all(_eval(f.arg, worlds, j) for j in range(len(worlds)))
    if isinstance(f, Diamond):
        return any(_eval(f.arg, worlds, j) for j in range(len(worlds)))
    raise TypeError(f"unexpected node {type(f).__name__}")


def verify(f: Formula, model: KripkeModel) -> bool:
    return evaluate(f, model, 0)


def _holds(lits, interp: dict) -> bool:
    """Some literal of ``lits`` is true under ``interp`` (a disjunction)."""
    return any(interp[l.atom] == l.positive for l in lits)


def extract_model(assignment: dict, c: CNFInstance, project: bool = True) -> KripkeModel:
    """Rebuild a Kripke model from a satisfying assignment of ``c``.

    World 0 comes from the world-0 copies.  Each selected, non-implied diamond
    contributes the world hosting it; atoms without a variable in that world
    inherit their world-0 value, and true boxes the world misses are repaired
    by copying world-0 values for the box atoms outside the diamond.
    """
    if not check_assignment(c.clauses, assignment):
        raise ValueError("assignment does not satisfy the instance")
    f = c.nf
    if f is None:
        raise ValueError("instance carries no S5NF")
    vm = c.varmap

    def value(key, default=False):
        v = vm.get(key)
        return default if v is None else assignment.get(v, False)

    atoms = sorted(f.atoms)
    world0 = {a: value(world_atom(a, 0)) for a in atoms}
    true_boxes = [f.box(i) for i in range(1, f.m + 1) if value(box_var(i))]
    interps = [world0]
    for j in range(1, f.n + 1):
        if not value(dia_var(j)) or value(implied_var(j)):
            continue
        w = c.worlds.get(j, j)
        interp = {a: value(world_atom(a, w), world0[a]) for a in atoms}
        interps.append(_repair(interp, world0, f.diamond(j), true_boxes))
    model = KripkeModel(tuple(frozenset(a for a, v in i.items() if v) for i in interps))
    return model.project() if project else model


def _repair(interp, world0, dia, true_boxes):
    def ok():
        return all(interp[l.atom] == l.positive for l in dia) and \
            all(_holds(box, interp) for box in true_boxes)

    dia_atoms = {l.atom for l in dia}
    for _ in range(len(true_boxes) + 1):
        if ok():
            return interp
        for box in true_boxes:
            if not _holds(box, interp):
                for l in box:
                    if l.atom not in dia_atoms:
                        interp[l.atom] = world0[l.atom]
    if ok():
        return interp
    return _witness_world(interp, dia, true_boxes)


def _witness_world(interp, dia, true_boxes):
    """Search directly for a world satisfying the diamond and every true box."""
    atoms = sorted(interp)
    index = {a: k + 1 for k, a in enumerate(atoms)}
    lit = lambda l: index[l.atom] if l.positive else -index[l.atom]
    clauses = [[lit(l)] for l in dia] + [[lit(l) for l in box] for box in true_boxes]
    out = solve_clauses(clauses, len(atoms))
    if not out.sat:
        raise RuntimeError("no world satisfies the diamond together with the true boxes")
    return {a: out.assignment[index[a]] for a in atoms}
