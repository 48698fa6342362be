import itertools
import random
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from s5sat.encoder import encode
from s5sat.normalizer import normalize
from s5sat.parser import parse
from s5sat.solver import (
    EXTERNAL_ENV, SAT, UNSAT, SolverTimeout, check_assignment, emit_dimacs, luby,
    parse_dimacs, solve, solve_clauses, solve_external,
)

from conftest import EXAMPLE1, TOOLS


def brute(clauses, n):
    for bits in itertools.product((False, True), repeat=n):
        a = {v + 1: bits[v] for v in range(n)}
        if check_assignment(clauses, a):
            return True
    return False


def pigeonhole(holes):
    pigeons = holes + 1
    var = lambda i, j: i * holes + j + 1
    clauses = [[var(i, j) for j in range(holes)] for i in range(pigeons)]
    for j in range(holes):
        for a, b in itertools.combinations(range(pigeons), 2):
            clauses.append([-var(a, j), -var(b, j)])
    return clauses, pigeons * holes


def random_3sat(rng, n, m):
    return [[rng.choice((1, -1)) * v for v in rng.sample(range(1, n + 1), 3)] for _ in range(m)]


def test_luby_prefix():
    assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


@pytest.mark.parametrize("method", ["cdcl", "dpll"])
def test_trivial_instances(method):
    assert solve_clauses([], 0, method=method).sat
    assert not solve_clauses([[]], 1, method=method).sat
    assert not solve_clauses([[1], [-1]], 1, method=method).sat
    out = solve_clauses([[1, 2], [-1], [2, 3]], 3, method=method)
    assert out.status == SAT and out.assignment[2] and not out.assignment[1]


@pytest.mark.parametrize("method", ["cdcl", "dpll"])
def test_pigeonhole_is_unsat(method):
    clauses, n = pigeonhole(5)
    out = solve_clauses(clauses, n, method=method)
    assert out.status == UNSAT


def test_cdcl_learns_on_pigeonhole():
    clauses, n = pigeonhole(6)
    out = solve_clauses(clauses, n)
    assert not out.sat
    assert out.stats["conflicts"] > 0


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=3, max_value=10), st.integers(min_value=1, max_value=60),
       st.integers(min_value=0, max_value=10**6))
def test_solvers_agree_with_exhaustive_search(n, m, seed):
    clauses = random_3sat(random.Random(seed), n, m)
    expected = brute(clauses, n)
    for method in ("cdcl", "dpll"):
        out = solve_clauses(clauses, n, method=method)
        assert out.sat == expected
        if out.sat:
            assert check_assignment(clauses, out.assignment)


def test_timeout_is_reported():
    clauses, n = pigeonhole(9)
    with pytest.raises(SolverTimeout):
        solve_clauses(clauses, n, timeout=0.05)
    with pytest.raises(SolverTimeout):
        solve_clauses(clauses, n, timeout=0.05, method="dpll")


def test_unknown_method():
    with pytest.raises(ValueError):
        solve_clauses([[1]], 1, method="magic")


def test_dimacs_round_trip():
    c = encode(normalize(parse(EXAMPLE1)))
    text = emit_dimacs(c)
    assert text.splitlines()[0] == "c 1 p@0"
    assert f"p cnf {c.num_vars} {c.num_clauses}" in text
    n, clauses = parse_dimacs(text)
    assert n == c.num_vars
    assert [tuple(x) for x in clauses] == [tuple(x) for x in c.clauses]
    bare = emit_dimacs(c, comments=False)
    assert bare.startswith("p cnf")


def test_parse_dimacs_tolerates_layout():
    n, clauses = parse_dimacs("c hi\np cnf 3 2\n1 -2\n 0 3\n0\n")
    assert n == 3 and clauses == [[1, -2], [3]]
    with pytest.raises(ValueError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(ValueError):
        parse_dimacs("p dnf 1 1\n1 0\n")


def test_external_solver_needs_configuration(monkeypatch):
    monkeypatch.delenv(EXTERNAL_ENV, raising=False)
    c = encode(normalize(parse(EXAMPLE1)))
    with pytest.raises(RuntimeError):
        solve_external(c)


def test_external_solver_via_pysat(monkeypatch):
    pytest.importorskip("pysat")
    monkeypatch.setenv(EXTERNAL_ENV, f"{sys.executable} {TOOLS / 'pysat_solve.py'}")
    sat = encode(normalize(parse(EXAMPLE1)))
    out = solve(sat, method="external")
    assert out.sat and check_assignment(sat.clauses, out.assignment)
    unsat = encode(normalize(parse("box(~p | ~q) & dia(p & q & s)")))
    assert solve(unsat, method="external").status == UNSAT
