"""Brute-force S5 satisfiability for small formulas.

Two enumerations are available.  ``lists`` walks world counts k = 1, 2, ...
and every designated world plus every set of k - 1 further interpretations,
checking each candidate with ``verify``.  ``valuations`` (the default)
searches over truth values for the modal subformulas, innermost first; each
choice restricts the admissible interpretations or demands a witness.  Sets of
interpretations are int bitsets, and a branch is cut as soon as a witness has
no admissible candidate or the formula cannot hold at any admissible world.
Both return a model that ``verify`` accepts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .formula import (
    And, Atom, Box, Diamond, Formula, Iff, Implies, Not, Or, atoms, children,
    desugar,
)
from .kripke import KripkeModel, verify
from .normalizer import to_nnf

MAX_ATOMS = 20
MAX_MODAL = 40


class OracleGuardError(ValueError):
    pass


@dataclass(frozen=True)
class OracleVerdict:
    sat: bool
    model: KripkeModel | None
    explored_bound: int


def world_bound(f: Formula) -> int:
    """1 + number of diamonds in the negation normal form of ``f``."""
    nnf = to_nnf(desugar(f))
    count = 0
    stack = [nnf]
    while stack:
        g = stack.pop()
        count += isinstance(g, Diamond)
        stack.extend(children(g))
    return 1 + count


def modal_subformulas(f: Formula) -> list[Formula]:
    """Distinct modal subformulas, innermost first."""
    out: list[Formula] = []

    def walk(g):
        for c in children(g):
            walk(c)
        if isinstance(g, (Box, Diamond)) and g not in out:
            out.append(g)

    walk(f)
    return out


def _check_guard(f, max_atoms, max_modal):
    n_atoms = len(atoms(f))
    n_modal = len(modal_subformulas(f))
    if n_atoms > max_atoms or n_modal > max_modal:
        raise OracleGuardError(
            f"formula too large for the oracle ({n_atoms} atoms, {n_modal} modal subformulas)"
        )


def brute_force(f: Formula, max_worlds: int | None = None, method: str = "valuations",
                max_atoms: int = MAX_ATOMS, max_modal: int = MAX_MODAL) -> OracleVerdict:
    _check_guard(f, max_atoms, max_modal)
    bound = max_worlds if max_worlds is not None else world_bound(f)
    if method == "lists":
        return _by_lists(f, bound)
    if method == "valuations":
        return _by_valuations(f, bound, strict=max_worlds is not None)
    raise ValueError(f"unknown method {method!r}")


def _interpretations(names):
    for bits in itertools.product((False, True), repeat=len(names)):
        yield frozenset(a for a, b in zip(names, bits) if b)


def _by_lists(f, bound):
    names = sorted(atoms(f))
    interps = list(_interpretations(names))
    for k in range(1, bound + 1):
        for w0 in interps:
            others = [w for w in interps if w != w0]
            for rest in itertools.combinations(others, k - 1):
                model = KripkeModel((w0, *rest))
                if verify(f, model):
                    return OracleVerdict(True, model, k)
    return OracleVerdict(False, None, bound)


def _atom_masks(names):
    """Bitset per atom over the 2^n interpretations (bit i = interpretation i)."""
    size = 1 << len(names)
    full = (1 << size) - 1
    masks = {}
    for k, name in enumerate(names):
        # interpretation i makes atom k true iff bit k of i is set
        block = ((1 << (1 << k)) - 1) << (1 << k)
        period = 1 << (k + 1)
        m = 0
        for base in range(0, size, period):
            m |= block << base
        masks[name] = m
    return masks, full


def _eval3(f, masks, full, values):
    """Three-valued evaluation: (may be true, may be false) bitsets."""
    if f in values:
        v = values[f]
        return (full, 0) if v else (0, full)
    if isinstance(f, (Box, Diamond)):
        return full, full
    if isinstance(f, Atom):
        m = masks[f.name]
        return m, full & ~m
    if isinstance(f, Not):
        t, fl = _eval3(f.arg, masks, full, values)
        return fl, t
    if isinstance(f, And):
        t, fl = full, 0
        for a in f.args:
            at, af = _eval3(a, masks, full, values)
            t &= at
            fl |= af
        return t, fl
    if isinstance(f, Or):
        t, fl = 0, full
        for a in f.args:
            at, af = _eval3(a, masks, full, values)
            t |= at
            fl &= af
        return t, fl
    lt, lf = _eval3(f.left, masks, full, values)
    rt, rf = _eval3(f.right, masks, full, values)
    if isinstance(f, Implies):
        return lf | rt, lt & rf
    if isinstance(f, Iff):
        return (lt & rt) | (lf & rf), (lt & rf) | (lf & rt)
    raise TypeError(f"unexpected node {type(f).__name__}")


def _lowest(mask):
    return (mask & -mask).bit_length() - 1


def _by_valuations(f, bound, strict=False):
    names = sorted(atoms(f))
    masks, full = _atom_masks(names)
    modal = modal_subformulas(f)

    def interp(i):
        return frozenset(a for k, a in enumerate(names) if i >> k & 1)

    values = {}

    def search(k, admissible, needs):
        if any(not (req & admissible) for req in needs):
            return None
        top, _ = _eval3(f, masks, full, values)
        if not (top & admissible):
            return None
        if k == len(modal):
            start = _lowest(top & admissible)
            worlds = [start]
            for req in needs:
                w = _lowest(req & admissible)
                if w not in worlds:
                    worlds.append(w)
            if strict and len(worlds) > bound:
                return None
            return KripkeModel(tuple(interp(w) for w in worlds))
        m = modal[k]
        # inner modal subformulas are already fixed, so the body is two-valued
        body, _ = _eval3(m.arg, masks, full, values)
        is_box = isinstance(m, Box)
        for v in (True, False):
            values[m] = v
            if is_box == v:
                # true box or false diamond: a constraint on every world
                result = search(k + 1, admissible & (body if is_box else full & ~body), needs)
            else:
                # false box or true diamond: some world must witness it
                req = body if not is_box else full & ~body
                result = search(k + 1, admissible, needs + [req])
            if result is not None:
                return result
        del values[m]
        return None

    model = search(0, full, [])
    if model is None:
        return OracleVerdict(False, None, bound)
    if not verify(f, model):
        raise AssertionError("oracle built a model that fails verification")
    return OracleVerdict(True, model, bound)
