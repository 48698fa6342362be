"""DIMACS solver wrapper around pysat, used as an external solver in tests.

Usage: python pysat_solve.py FILE.cnf
"""

import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main(path):
    cnf = CNF(from_file=path)
    with Solver(name="minisat22", bootstrap_with=cnf.clauses) as s:
        if s.solve():
            print("s SATISFIABLE")
            print("v " + " ".join(str(l) for l in s.get_model()) + " 0")
        else:
            print("s UNSATISFIABLE")


if __name__ == "__main__":
    main(sys.argv[1])
