"""Satisfiability checking for modal logic S5 via SAT encodings."""

from .encoder import encode
from .formula import S5NF, And, Atom, Box, Diamond, Iff, Implies, Not, Or
from .kripke import KripkeModel, evaluate, extract_model, verify
from .normalizer import normalize
from .oracle import brute_force
from .parser import parse, render
from .pipeline import decide
from .solver import solve

__all__ = [
    "And", "Atom", "Box", "Diamond", "Iff", "Implies", "KripkeModel", "Not", "Or", "S5NF",
    "brute_force", "decide", "encode", "evaluate", "extract_model", "normalize", "parse",
    "render", "solve", "verify",
]
