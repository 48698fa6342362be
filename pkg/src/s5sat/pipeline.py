"""Formula in, verdict and verified model out."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .encoder import REACH, CNFInstance, encode
from .formula import Formula
from .kripke import KripkeModel, extract_model, verify
from .normalizer import normalize
from .solver import SAT, TIMEOUT, SolverTimeout, solve


class VerificationError(RuntimeError):
    pass


@dataclass
class Result:
    status: str
    model: KripkeModel | None = None
    cnf: CNFInstance | None = None
    stats: dict = field(default_factory=dict)


def decide(f: Formula, encoding: str = REACH, enrichments=(), timeout: float | None = None,
           method: str = "cdcl", check: bool = True) -> Result:
    """Normalize, encode, solve and (when satisfiable) rebuild a model.

    With ``check`` the model is verified against ``f`` itself and a
    ``VerificationError`` is raised on mismatch.
    """
    stats = {}
    start = time.perf_counter()
    nf = normalize(f)
    stats["normalize"] = {
        "clauses": len(nf.clauses), "boxes": nf.m, "diamonds": nf.n,
        "atoms": len(nf.atoms), "seconds": time.perf_counter() - start,
    }
    t = time.perf_counter()
    cnf = encode(nf, encoding, enrichments)
    stats["encode"] = {"encoding": cnf.label, **cnf.stats, "seconds": time.perf_counter() - t}
    t = time.perf_counter()
    try:
        out = solve(cnf, budget=timeout, method=method)
    except SolverTimeout:
        stats["solve"] = {"seconds": time.perf_counter() - t}
        return Result(TIMEOUT, cnf=cnf, stats=stats)
    stats["solve"] = {**out.stats, "seconds": time.perf_counter() - t}
    model = None
    if out.status == SAT:
        model = extract_model(out.assignment, cnf)
        if check and not verify(f, model):
            raise VerificationError("extracted model does not satisfy the input formula")
    stats["total_seconds"] = time.perf_counter() - start
    return Result(out.status, model, cnf, stats)
