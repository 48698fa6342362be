"""Command-line front end.

Exit codes: 10 SAT, 20 UNSAT, 30 timeout, 1 usage or parse error,
2 verification or oracle mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import asp
from .encoder import BOXES, CONFLICTS, DIAMONDS, FULL, REACH, encode
from .kripke import extract_model, verify
from .normalizer import normalize
from .oracle import OracleGuardError, brute_force
from .parser import FORMATS, ParseError, format_for_path, parse
from .solver import SAT, UNSAT, SolverTimeout, emit_dimacs, solve

EXIT_SAT, EXIT_UNSAT, EXIT_TIMEOUT, EXIT_USAGE, EXIT_VERIFY = 10, 20, 30, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="s5sat", description="Satisfiability checking for modal logic S5.")
    p.add_argument("input", nargs="?", default="-", help="formula file (default: standard input)")
    p.add_argument("--format", choices=FORMATS, help="input syntax (default: from file extension)")
    p.add_argument("--encoding", choices=(FULL, REACH), default=REACH,
                   help="propositional encoding (default: reach)")
    p.add_argument("--conflicts", action="store_true", help="add box/diamond conflict clauses")
    p.add_argument("--boxes", action="store_true", help="add box subset clauses")
    p.add_argument("--diamonds", action="store_true", help="merge worlds of subset diamonds")
    p.add_argument("--all", action="store_true", help="all three enrichments")
    p.add_argument("--dimacs", metavar="PATH", help="write the CNF instance in DIMACS format")
    p.add_argument("--asp", metavar="PREFIX", help="write PREFIX.facts.lp and PREFIX.program.lp")
    p.add_argument("--model", action="store_true", help="print the Kripke model when satisfiable")
    p.add_argument("--verify", action="store_true", help="check the model against the input formula")
    p.add_argument("--oracle", action="store_true", help="cross-check the verdict by brute force")
    p.add_argument("--stats", action="store_true", help="print sizes and timings")
    p.add_argument("--timeout", type=float, metavar="S", help="solver time budget in seconds")
    p.add_argument("--solver", choices=("cdcl", "dpll", "external"), default="cdcl",
                   help="external uses the command in $S5SAT_EXTERNAL_SOLVER")
    return p


def _asp_variant(encoding: str, enrichments: set) -> str:
    if encoding == FULL:
        return asp.FULL
    if len(enrichments) == 3:
        return asp.REACH_ALL
    if len(enrichments) > 1:
        raise ValueError("the ASP programs combine enrichments only all together (--all)")
    if not enrichments:
        return asp.REACH
    return {CONFLICTS: asp.REACH_CONFLICTS, BOXES: asp.REACH_BOXES,
            DIAMONDS: asp.REACH_DIAMONDS}[enrichments.pop()]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    enrichments = {e for e in (CONFLICTS, BOXES, DIAMONDS) if getattr(args, e) or args.all}
    if enrichments and args.encoding != REACH:
        print("error: enrichments require --encoding reach", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.input == "-":
            text = sys.stdin.read()
            fmt = args.format or "native"
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
            fmt = args.format or format_for_path(args.input)
        formula = parse(text, fmt)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    nf = normalize(formula)
    t_norm = time.perf_counter() - start
    cnf = encode(nf, args.encoding, enrichments)
    t_enc = time.perf_counter() - start - t_norm

    if args.dimacs:
        with open(args.dimacs, "w", encoding="utf-8") as fh:
            fh.write(emit_dimacs(cnf) + "\n")
    if args.asp:
        if nf.unsat:
            print("c asp output skipped: formula is unsatisfiable by construction")
        else:
            try:
                variant = _asp_variant(args.encoding, set(enrichments))
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_USAGE
            with open(args.asp + ".facts.lp", "w", encoding="utf-8") as fh:
                fh.write(asp.emit_facts(nf, variant))
            with open(args.asp + ".program.lp", "w", encoding="utf-8") as fh:
                fh.write(asp.emit_program(variant))

    try:
        out = solve(cnf, budget=args.timeout, method=args.solver)
    except SolverTimeout:
        print("TIMEOUT")
        return EXIT_TIMEOUT
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t_solve = time.perf_counter() - start - t_norm - t_enc

    print(out.status)
    code = EXIT_SAT if out.status == SAT else EXIT_UNSAT
    if out.status == SAT and (args.model or args.verify):
        model = extract_model(out.assignment, cnf)
        if args.model:
            print(model.serialize())
        if args.verify:
            if verify(formula, model):
                print("c model verified")
            else:
                print("error: model does not satisfy the input formula", file=sys.stderr)
                code = EXIT_VERIFY

    if args.oracle:
        try:
            verdict = brute_force(formula)
        except OracleGuardError as exc:
            print(f"c oracle skipped: {exc}")
        else:
            expected = SAT if verdict.sat else UNSAT
            if expected != out.status:
                print(f"error: oracle says {expected}", file=sys.stderr)
                code = EXIT_VERIFY
            else:
                print("c oracle agrees")

    if args.stats:
        print(f"c normalize clauses={len(nf.clauses)} boxes={nf.m} diamonds={nf.n} "
              f"atoms={len(nf.atoms)} seconds={t_norm:.4f}")
        print(f"c encoding {cnf.label} vars={cnf.num_vars} clauses={cnf.num_clauses} "
              f"seconds={t_enc:.4f}")
        s = out.stats
        print(f"c solve decisions={s.get('decisions', 0)} conflicts={s.get('conflicts', 0)} "
              f"seconds={t_solve:.4f}")
        print(f"c total seconds={time.perf_counter() - start:.4f}")
    return code


if __name__ == "__main__":
    sys.exit(main())
