"""Propositional encodings of S5-NF formulas.

World 0 carries the free literals; diamond ``j`` is witnessed in world ``j``
(or in the world of its group representative once worlds are merged).
Variables are allocated on first use, so (atom, world) pairs that no clause
mentions never get a SAT variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .formula import S5NF, Lit, complement_set, sorted_lits

HE, FULL, REACH = "he", "full", "reach"
CONFLICTS, BOXES, DIAMONDS = "conflicts", "boxes", "diamonds"
ENRICHMENTS = (CONFLICTS, BOXES, DIAMONDS)


def world_atom(atom: str, world: int) -> tuple:
    return ("atom", atom, world)


def box_var(i: int) -> tuple:
    return ("b", i)


def dia_var(j: int) -> tuple:
    return ("d", j)


def implied_var(j: int) -> tuple:
    return ("implied", j)


def sel_var(j: int) -> tuple:
    return ("sel", j)


def key_name(key: tuple) -> str:
    if key[0] == "atom":
        return f"{key[1]}@{key[2]}"
    return f"{key[0]}{key[1]}"


class VarMap:
    """Bijection between SAT variables 1..N and tagged keys."""

    def __init__(self, keys=()):
        self._keys: list[Hashable] = []
        self._index: dict[Hashable, int] = {}
        for k in keys:
            self.var(k)

    def var(self, key) -> int:
        v = self._index.get(key)
        if v is None:
            self._keys.append(key)
            v = self._index[key] = len(self._keys)
        return v

    def get(self, key) -> int | None:
        return self._index.get(key)

    def key(self, var: int):
        return self._keys[var - 1]

    def name(self, var: int) -> str:
        key = self.key(var)
        return key_name(key) if isinstance(key, tuple) else str(key)

    def keys(self) -> list:
        return list(self._keys)

    def copy(self) -> "VarMap":
        return VarMap(self._keys)

    def __len__(self):
        return len(self._keys)

    def __contains__(self, key):
        return key in self._index


@dataclass(frozen=True)
class CNFInstance:
    clauses: tuple
    varmap: VarMap
    kind: str = HE
    enrichments: frozenset = frozenset()
    nf: S5NF | None = None
    # diamond id -> world index hosting its witness
    worlds: dict = field(default_factory=dict)

    @property
    def num_vars(self) -> int:
        return len(self.varmap)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def trivially_unsat(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)

    @property
    def label(self) -> str:
        return "+".join([self.kind, *sorted(self.enrichments)])

    @property
    def stats(self) -> dict:
        return {"vars": self.num_vars, "clauses": self.num_clauses}

    def named_clauses(self) -> list[list[str]]:
        """Clauses with variables replaced by readable names (``~`` negation)."""
        return [
            [("" if l > 0 else "~") + self.varmap.name(abs(l)) for l in c]
            for c in self.clauses
        ]


class _Builder:
    def __init__(self, varmap: VarMap | None = None):
        self.varmap = varmap.copy() if varmap is not None else VarMap()
        self.clauses: list[tuple] = []

    def add(self, *lits):
        """Add a clause of (key, positive) pairs."""
        self.clauses.append(tuple(
            self.varmap.var(k) if pos else -self.varmap.var(k) for k, pos in lits
        ))


def _at(lit: Lit, world: int):
    return world_atom(lit.atom, world), lit.positive


def _unsat_instance(f: S5NF, kind: str) -> CNFInstance:
    return CNFInstance(clauses=((),), varmap=VarMap(), kind=kind, nf=f)


def _encode(f: S5NF, kind: str, reach: dict | None = None, worlds: dict | None = None,
            widen: dict | None = None) -> CNFInstance:
    if f.unsat:
        return _unsat_instance(f, kind)
    n = f.n
    worlds = worlds or {j: j for j in range(1, n + 1)}
    b = _Builder()

    for c in f.clauses:
        b.add(*[_at(l, 0) for l in sorted_lits(c.props)],
              *[(box_var(i), True) for i in c.box_ids],
              *[(dia_var(j), True) for j in c.diamond_ids])

    for i, box in enumerate(f.boxes, 1):
        body = sorted_lits(box)
        b.add((box_var(i), False), *[_at(l, 0) for l in body])
        for j in range(1, n + 1):
            if kind == HE:
                b.add((box_var(i), False), *[_at(l, j) for l in body])
            elif reach is None or i in reach[j]:
                b.add((box_var(i), False), (dia_var(j), False), (implied_var(j), True),
                      *[_at(l, worlds[j]) for l in body])

    if kind != HE:
        for j, dia in enumerate(f.diamonds, 1):
            body = sorted_lits(dia)
            supersets = (widen or {}).get(j, ())
            if supersets:
                b.add((implied_var(j), False), *[(dia_var(i), True) for i in supersets],
                      (sel_var(j), True))
                for l in body:
                    b.add((sel_var(j), False), _at(l, 0))
                for i in supersets:
                    b.add((implied_var(j), True), (dia_var(i), False))
            else:
                for l in body:
                    b.add((implied_var(j), False), _at(l, 0))
            b.add((implied_var(j), True), *[_at(~l, 0) for l in body])
            b.add((implied_var(j), False), (dia_var(j), True))

    for j, dia in enumerate(f.diamonds, 1):
        for l in sorted_lits(dia):
            b.add((dia_var(j), False), _at(l, worlds[j]))

    return CNFInstance(clauses=tuple(b.clauses), varmap=b.varmap, kind=kind, nf=f,
                       worlds=dict(worlds))


def encode_he(f: S5NF) -> CNFInstance:
    """Herbrand expansion of the Skolemised formula over worlds 0..n."""
    return _encode(f, HE)


def encode_full(f: S5NF) -> CNFInstance:
    return _encode(f, FULL)


def encode_reach(f: S5NF) -> CNFInstance:
    return _encode(f, REACH, reach=reach_sets(f).reached_boxes)


# --------------------------------------------------------------------------
# Reachability
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ReachIndex:
    up: dict            # literal -> closure of {literal}
    reached_boxes: dict  # diamond id -> frozenset of box ids


def _box_index(f: S5NF) -> dict:
    """Map literal l to the boxes containing its complement."""
    index: dict[Lit, list[int]] = {}
    for i, box in enumerate(f.boxes, 1):
        for l in box:
            index.setdefault(~l, []).append(i)
    return index


def up_closure(seed, f: S5NF, _index=None) -> frozenset:
    """Least fixpoint of unit-propagation reachability through the boxes."""
    index = _index if _index is not None else _box_index(f)
    closed = set(seed)
    stack = list(closed)
    while stack:
        l = stack.pop()
        for i in index.get(l, ()):
            for other in f.box(i):
                if other != ~l and other not in closed:
                    closed.add(other)
                    stack.append(other)
    return frozenset(closed)


def reach_sets(f: S5NF) -> ReachIndex:
    index = _box_index(f)
    up = {}
    for dia in f.diamonds:
        for l in dia:
            if l not in up:
                up[l] = up_closure({l}, f, index)
    reached = {}
    for j, dia in enumerate(f.diamonds, 1):
        closure = frozenset().union(*(up[l] for l in dia))
        hit = complement_set(closure)
        reached[j] = frozenset(i for i, box in enumerate(f.boxes, 1) if hit & box)
    return ReachIndex(up=up, reached_boxes=reached)


# --------------------------------------------------------------------------
# Entailment enrichments
# --------------------------------------------------------------------------

def _extend(c: CNFInstance, enrichment: str, pairs) -> CNFInstance:
    if c.trivially_unsat:
        return CNFInstance(c.clauses, c.varmap, c.kind, c.enrichments | {enrichment}, c.nf, c.worlds)
    b = _Builder(c.varmap)
    b.clauses = list(c.clauses)
    for lits in pairs:
        b.add(*lits)
    return CNFInstance(tuple(b.clauses), b.varmap, c.kind, c.enrichments | {enrichment},
                       c.nf, c.worlds)


def conflict_pairs(f: S5NF) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i, box in enumerate(f.boxes, 1)
        for j, dia in enumerate(f.diamonds, 1)
        if complement_set(box) <= dia
    ]


def box_subset_pairs(f: S5NF) -> list[tuple[int, int]]:
    return [
        (i, k)
        for i, small in enumerate(f.boxes, 1)
        for k, large in enumerate(f.boxes, 1)
        if i != k and small <= large
    ]


def diamond_subset_pairs(f: S5NF) -> list[tuple[int, int]]:
    """Pairs (j, i), j != i, with lits(diamond j) a subset of lits(diamond i)."""
    return [
        (j, i)
        for j, small in enumerate(f.diamonds, 1)
        for i, large in enumerate(f.diamonds, 1)
        if i != j and small <= large
    ]


def apply_conflicts(c: CNFInstance, f: S5NF) -> CNFInstance:
    return _extend(c, CONFLICTS, [
        ((box_var(i), False), (dia_var(j), False)) for i, j in conflict_pairs(f)
    ])


def apply_boxes(c: CNFInstance, f: S5NF) -> CNFInstance:
    return _extend(c, BOXES, [
        ((box_var(i), False), (box_var(k), True)) for i, k in box_subset_pairs(f)
    ])


@dataclass(frozen=True)
class WorldPartition:
    worlds: tuple          # tuples of diamond ids, representative first
    representative: tuple  # per world, the largest member

    def world_of(self) -> dict:
        return {j: w[0] for w in self.worlds for j in w}


def compute_worlds(f: S5NF) -> WorldPartition:
    """Greedily merge diamonds whose literals are contained in every member."""
    order = sorted(range(1, f.n + 1), key=lambda j: (-len(f.diamond(j)), j))
    groups: list[list[int]] = []
    for j in order:
        lits_j = f.diamond(j)
        for group in groups:
            if all(lits_j <= f.diamond(k) for k in group):
                group.append(j)
                break
        else:
            groups.append([j])
    return WorldPartition(
        worlds=tuple(tuple(g) for g in groups),
        representative=tuple(g[0] for g in groups),
    )


def apply_diamonds(f: S5NF, base: str = REACH) -> CNFInstance:
    """Encoding over merged worlds with implied_j widened by superset diamonds."""
    widen: dict[int, list[int]] = {}
    for j, i in diamond_subset_pairs(f):
        widen.setdefault(j, []).append(i)
    worlds = compute_worlds(f).world_of()
    reach = reach_sets(f).reached_boxes if base == REACH else None
    c = _encode(f, base, reach=reach, worlds=worlds, widen=widen)
    return CNFInstance(c.clauses, c.varmap, c.kind, frozenset({DIAMONDS}), c.nf, c.worlds)


def encode(f: S5NF, kind: str = REACH, enrichments=()) -> CNFInstance:
    """Build the encoding ``kind`` with the requested enrichments applied."""
    enrichments = set(enrichments)
    unknown = enrichments - set(ENRICHMENTS)
    if unknown:
        raise ValueError(f"unknown enrichments {sorted(unknown)}")
    if kind == HE:
        if enrichments:
            raise ValueError("enrichments apply to the full and reach encodings only")
        return encode_he(f)
    if kind not in (FULL, REACH):
        raise ValueError(f"unknown encoding {kind!r}")
    if DIAMONDS in enrichments:
        c = apply_diamonds(f, base=kind)
    else:
        c = encode_full(f) if kind == FULL else encode_reach(f)
    if CONFLICTS in enrichments:
        c = apply_conflicts(c, f)
    if BOXES in enrichments:
        c = apply_boxes(c, f)
    return c
