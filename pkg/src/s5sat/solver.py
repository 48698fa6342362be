"""Embedded SAT solving and DIMACS exchange.

``solve`` runs a CDCL search (two watched literals, first-UIP learning,
VSIDS-style activities, phase saving, Luby restarts) or, for differential
testing, a plain DPLL search.  Satisfying assignments are checked clause by
clause before they are returned.
"""

from __future__ import annotations

import heapq
import os
import subprocess
import tempfile
import time
from dataclasses import dataclass, field

SAT = "SAT"
UNSAT = "UNSAT"
TIMEOUT = "TIMEOUT"

LUBY_UNIT = 64


class SolverTimeout(Exception):
    """Raised when the time budget is exhausted before a verdict."""


@dataclass
class Outcome:
    status: str
    assignment: dict = field(default_factory=dict)  # var -> bool, total when SAT
    stats: dict = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        return self.status == SAT

    def true_vars(self) -> list[int]:
        return sorted(v for v, val in self.assignment.items() if val)


def luby(i: int) -> int:
    """The i-th element (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


def check_assignment(clauses, assignment: dict) -> bool:
    return all(any(assignment.get(abs(l), False) == (l > 0) for l in c) for c in clauses)


def _prepare(clauses):
    """Drop tautologies and duplicate literals; detect empty clauses."""
    out = []
    for c in clauses:
        seen = []
        taut = False
        for l in c:
            if -l in seen:
                taut = True
                break
            if l not in seen:
                seen.append(l)
        if not taut:
            out.append(seen)
    return out


class CDCL:
    def __init__(self, clauses, num_vars: int, deadline: float | None = None):
        self.n = num_vars
        self.deadline = deadline
        self.assign = [0] * (num_vars + 1)      # 1 true, -1 false, 0 unset
        self.level = [0] * (num_vars + 1)
        self.reason: list = [None] * (num_vars + 1)
        self.phase = [False] * (num_vars + 1)
        self.activity = [0.0] * (num_vars + 1)
        self.bump = 1.0
        self.decay = 0.95
        self.watches: dict[int, list] = {}
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.learnts: list[list[int]] = []
        self.units: list[int] = []
        self.empty = False
        self.stats = {"decisions": 0, "conflicts": 0, "propagations": 0, "restarts": 0}
        for c in _prepare(clauses):
            self._add_clause(c)
        # ties broken by allocation order: lower variable first
        self.heap = [(0.0, v) for v in range(1, num_vars + 1)]
        heapq.heapify(self.heap)

    def _add_clause(self, c):
        if not c:
            self.empty = True
        elif len(c) == 1:
            self.units.append(c[0])
        else:
            self.clauses.append(c)
            self._watch(c)

    def _watch(self, c):
        self.watches.setdefault(-c[0], []).append(c)
        self.watches.setdefault(-c[1], []).append(c)

    def value(self, lit: int) -> int:
        v = self.assign[abs(lit)]
        return v if lit > 0 else -v

    def _enqueue(self, lit: int, reason) -> bool:
        val = self.value(lit)
        if val:
            return val > 0
        var = abs(lit)
        self.assign[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)
        return True

    def propagate(self):
        """Return a conflicting clause or None."""
        assign = self.assign
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            self.stats["propagations"] += 1
            # clauses watching the literal that just became false
            watchers = self.watches.get(lit)
            if not watchers:
                continue
            false_lit = -lit
            i = j = 0
            count = len(watchers)
            while i < count:
                c = watchers[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = assign[abs(first)]
                if (fv if first > 0 else -fv) > 0:
                    watchers[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    other = c[k]
                    ov = assign[abs(other)]
                    if (ov if other > 0 else -ov) >= 0:
                        c[1], c[k] = other, c[1]
                        self.watches.setdefault(-other, []).append(c)
                        break
                else:
                    watchers[j] = c
                    j += 1
                    if (fv if first > 0 else -fv) < 0:
                        while i < count:
                            watchers[j] = watchers[i]
                            i += 1
                            j += 1
                        del watchers[j:]
                        return c
                    self._enqueue(first, c)
            del watchers[j:]
        return None

    def _bump(self, var: int):
        self.activity[var] += self.bump
        if self.activity[var] > 1e100:
            for v in range(1, self.n + 1):
                self.activity[v] *= 1e-100
            self.bump *= 1e-100
            self.heap = [(-self.activity[v], v) for v in range(1, self.n + 1) if not self.assign[v]]
            heapq.heapify(self.heap)
        if not self.assign[var]:
            heapq.heappush(self.heap, (-self.activity[var], var))

    def analyze(self, conflict):
        """First-UIP learning; returns (learnt clause, backjump level)."""
        seen = [False] * (self.n + 1)
        learnt = [0]
        counter = 0
        current = len(self.trail_lim)
        idx = len(self.trail) - 1
        clause = conflict
        lit = None
        while True:
            for q in clause:
                if lit is not None and q == lit:
                    continue
                var = abs(q)
                if not seen[var] and self.level[var] > 0:
                    seen[var] = True
                    self._bump(var)
                    if self.level[var] >= current:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            lit = self.trail[idx]
            idx -= 1
            seen[abs(lit)] = False
            counter -= 1
            if counter == 0:
                break
            clause = self.reason[abs(lit)]
        learnt[0] = -lit
        self.bump /= self.decay
        if len(learnt) == 1:
            return learnt, 0
        # move the highest-level literal to position 1 for watching
        best = max(range(1, len(learnt)), key=lambda k: self.level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def backtrack(self, lvl: int):
        if len(self.trail_lim) <= lvl:
            return
        stop = self.trail_lim[lvl]
        for lit in reversed(self.trail[stop:]):
            var = abs(lit)
            self.phase[var] = lit > 0
            self.assign[var] = 0
            self.reason[var] = None
            heapq.heappush(self.heap, (-self.activity[var], var))
        del self.trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = len(self.trail)

    def decide(self) -> int:
        while self.heap:
            _, var = heapq.heappop(self.heap)
            if not self.assign[var]:
                return var if self.phase[var] else -var
        return 0

    def solve(self) -> bool:
        if self.empty:
            return False
        for u in self.units:
            if not self._enqueue(u, None):
                return False
        if self.propagate() is not None:
            return False
        restart_no = 1
        budget = luby(restart_no) * LUBY_UNIT
        conflicts_since = 0
        while True:
            conflict = self.propagate()
            if conflict is not None:
                self.stats["conflicts"] += 1
                conflicts_since += 1
                if not self.trail_lim:
                    return False
                learnt, lvl = self.analyze(conflict)
                self.backtrack(lvl)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    self.learnts.append(learnt)
                    self._watch(learnt)
                    self._enqueue(learnt[0], learnt)
                if self.deadline is not None and self.stats["conflicts"] % 64 == 0 \
                        and time.monotonic() > self.deadline:
                    raise SolverTimeout()
                continue
            if conflicts_since >= budget:
                self.stats["restarts"] += 1
                restart_no += 1
                budget = luby(restart_no) * LUBY_UNIT
                conflicts_since = 0
                self.backtrack(0)
                continue
            lit = self.decide()
            if lit == 0:
                return True
            self.stats["decisions"] += 1
            if self.deadline is not None and self.stats["decisions"] % 256 == 0 \
                    and time.monotonic() > self.deadline:
                raise SolverTimeout()
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)

    def model(self) -> dict:
        return {v: self.assign[v] > 0 for v in range(1, self.n + 1)}


def _dpll(clauses, num_vars: int, deadline: float | None, stats: dict):
    """Iterative DPLL with naive unit propagation and chronological backtracking."""
    clauses = _prepare(clauses)
    if any(not c for c in clauses):
        return None
    assign: dict[int, bool] = {}
    # stack entries: (trail length before decision, decided literal, flipped?)
    stack: list[tuple[int, int, bool]] = []
    trail: list[int] = []

    def val(l):
        v = assign.get(abs(l))
        return None if v is None else (v == (l > 0))

    def set_lit(l):
        assign[abs(l)] = l > 0
        trail.append(l)

    def unit_propagate() -> bool:
        changed = True
        while changed:
            changed = False
            for c in clauses:
                unassigned = None
                count = 0
                sat = False
                for l in c:
                    v = val(l)
                    if v is True:
                        sat = True
                        break
                    if v is None:
                        count += 1
                        unassigned = l
                if sat:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    set_lit(unassigned)
                    stats["propagations"] += 1
                    changed = True
        return True

    def undo(to: int):
        while len(trail) > to:
            del assign[abs(trail.pop())]

    ok = unit_propagate()
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise SolverTimeout()
        if ok:
            free = next((v for v in range(1, num_vars + 1) if v not in assign), 0)
            if free == 0:
                return {v: assign.get(v, False) for v in range(1, num_vars + 1)}
            stats["decisions"] += 1
            stack.append((len(trail), free, False))
            set_lit(free)
            ok = unit_propagate()
            continue
        stats["conflicts"] += 1
        while stack and stack[-1][2]:
            stack.pop()
        if not stack:
            return None
        mark, lit, _ = stack.pop()
        undo(mark)
        stack.append((mark, -lit, True))
        set_lit(-lit)
        ok = unit_propagate()


def solve_clauses(clauses, num_vars: int, timeout: float | None = None,
                  method: str = "cdcl") -> Outcome:
    deadline = time.monotonic() + timeout if timeout is not None else None
    if method == "cdcl":
        s = CDCL(clauses, num_vars, deadline)
        ok = s.solve()
        model = s.model() if ok else None
        stats = s.stats
    elif method == "dpll":
        stats = {"decisions": 0, "conflicts": 0, "propagations": 0}
        model = _dpll(clauses, num_vars, deadline, stats)
    else:
        raise ValueError(f"unknown method {method!r}")
    if model is None:
        return Outcome(UNSAT, stats=stats)
    if not check_assignment(clauses, model):
        raise AssertionError("solver produced an assignment that violates a clause")
    return Outcome(SAT, model, stats)


def solve(c, budget: float | None = None, method: str = "cdcl") -> Outcome:
    """Decide a ``CNFInstance``; raises ``SolverTimeout`` past ``budget`` seconds."""
    if method == "external":
        return solve_external(c, timeout=budget)
    return solve_clauses(c.clauses, c.num_vars, budget, method)


# --------------------------------------------------------------------------
# DIMACS
# --------------------------------------------------------------------------

def emit_dimacs(c, comments: bool = True) -> str:
    lines = []
    if comments:
        for v in range(1, c.num_vars + 1):
            lines.append(f"c {v} {c.varmap.name(v)}")
    lines.append(f"p cnf {c.num_vars} {c.num_clauses}")
    lines.extend(" ".join(str(l) for l in [*cl, 0]) for cl in c.clauses)
    return "\n".join(lines)


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    """Return (number of variables, clauses) from DIMACS CNF text."""
    num_vars = None
    clauses, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if num_vars is None:
        raise ValueError("missing problem line")
    return num_vars, clauses


EXTERNAL_ENV = "S5SAT_EXTERNAL_SOLVER"


def solve_external(c, command: str | None = None, timeout: float | None = None) -> Outcome:
    """Run an external DIMACS solver: ``command <file>``.

    The solver prints ``SAT`` or ``UNSAT`` (``s SATISFIABLE`` style is also
    accepted) and, when satisfiable, the model as space-separated literals,
    optionally prefixed by ``v``.
    """
    command = command or os.environ.get(EXTERNAL_ENV)
    if not command:
        raise RuntimeError(f"no external solver configured (set {EXTERNAL_ENV})")
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
        fh.write(emit_dimacs(c) + "\n")
        path = fh.name
    try:
        try:
            proc = subprocess.run([*command.split(), path], capture_output=True, text=True,
                                  timeout=timeout)
        except subprocess.TimeoutExpired as exc:
            raise SolverTimeout() from exc
    finally:
        os.unlink(path)
    status, model = None, {}
    for line in proc.stdout.splitlines():
        words = line.split()
        if not words or words[0] == "c":
            continue
        if words[0] == "s":
            words = words[1:]
        head = words[0].upper() if words else ""
        if head in ("SAT", "SATISFIABLE"):
            status = SAT
        elif head in ("UNSAT", "UNSATISFIABLE"):
            status = UNSAT
        else:
            for tok in words:
                if tok == "v":
                    continue
                lit = int(tok)
                if lit:
                    model[abs(lit)] = lit > 0
    if status is None:
        raise RuntimeError(f"external solver gave no verdict: {proc.stdout!r} {proc.stderr!r}")
    if status == UNSAT:
        return Outcome(UNSAT)
    full = {v: model.get(v, False) for v in range(1, c.num_vars + 1)}
    if not check_assignment(c.clauses, full):
        raise AssertionError("external solver returned a non-model")
    return Outcome(SAT, full)
