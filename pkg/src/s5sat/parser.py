"""Reading and printing S5 formulas.

Native syntax, tightest binding first::

    ~  box dia [] <>      prefix operators
    &                     conjunction
    |                     disjunction
    ->                    implication (right associative)
    <->                   equivalence (left associative)

The InToHyLo reader accepts the ``begin ... end`` wrapper used by modal
benchmark suites, with ``[r1]`` / ``<r1>`` modalities and ``true``/``false``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import (
    RESERVED_PREFIX, TOP_ATOM, And, Atom, Box, Diamond, Formula, Iff, Implies,
    Not, Or,
)

NATIVE = "native"
INTOHYLO = "intohylo"
FORMATS = (NATIVE, INTOHYLO)

KEYWORDS = {"box", "dia"}
INTOHYLO_KEYWORDS = {"begin", "end", "true", "false"}


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


_NATIVE_TOKENS = [
    ("WS", r"[ \t\r]+"),
    ("NL", r"\n"),
    ("COMMENT", r"%[^\n]*"),
    ("IFF", r"<->"),
    ("DIA", r"<>"),
    ("IMP", r"->"),
    ("BOX", r"\[\]"),
    ("NOT", r"~"),
    ("AND", r"&"),
    ("OR", r"\|"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("ID", r"[a-zA-Z_][a-zA-Z0-9_]*"),
]

_INTOHYLO_TOKENS = [
    ("WS", r"[ \t\r]+"),
    ("NL", r"\n"),
    ("COMMENT", r"%[^\n]*"),
    ("IFF", r"<->"),
    ("MBOX", r"\[\s*r?(\d*)\s*\]"),
    ("MDIA", r"<\s*r?(\d*)\s*>"),
    ("IMP", r"->"),
    ("NOT", r"[~!-]"),
    ("AND", r"&"),
    ("OR", r"\|"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("ID", r"[a-zA-Z_][a-zA-Z0-9_]*"),
]


def _tokenize(text: str, table) -> list[Token]:
    pattern = re.compile("|".join(f"(?P<{k}>{p})" for k, p in table))
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = pattern.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "NL":
            line += 1
            line_start = m.end()
        elif kind not in ("WS", "COMMENT"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, tokens, intohylo=False, allow_reserved=False):
        self.toks = tokens
        self.i = 0
        self.intohylo = intohylo
        self.allow_reserved = allow_reserved

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def take(self, kind) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            self.error(f"expected {kind}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def formula(self) -> Formula:
        left = self.implication()
        while self.tok.kind == "IFF":
            self.i += 1
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.tok.kind == "IMP":
            self.i += 1
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        args = [self.conjunction()]
        while self.tok.kind == "OR":
            self.i += 1
            args.append(self.conjunction())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conjunction(self) -> Formula:
        args = [self.unary()]
        while self.tok.kind == "AND":
            self.i += 1
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Formula:
        tok = self.tok
        kind = tok.kind
        if kind == "NOT":
            self.i += 1
            return Not(self.unary())
        if kind in ("BOX", "DIA"):
            self.i += 1
            return (Box if kind == "BOX" else Diamond)(self.unary())
        if kind in ("MBOX", "MDIA"):
            index = re.search(r"\d+", tok.text)
            if index is not None and int(index.group()) != 1:
                self.error(f"modality index {index.group()} is not supported (S5 is mono-modal)")
            self.i += 1
            return (Box if kind == "MBOX" else Diamond)(self.unary())
        if kind == "LP":
            self.i += 1
            f = self.formula()
            self.take("RP")
            return f
        if kind == "ID":
            return self.identifier()
        self.error(f"unexpected {tok.text or 'end of input'!r}")

    def identifier(self) -> Formula:
        tok = self.take("ID")
        name = tok.text
        if not self.intohylo and name in KEYWORDS:
            if name == "box":
                return Box(self.unary())
            return Diamond(self.unary())
        if self.intohylo and name in ("true", "false"):
            top = Atom(TOP_ATOM)
            return Or((top, Not(top))) if name == "true" else And((top, Not(top)))
        if self.intohylo and name in INTOHYLO_KEYWORDS:
            self.error(f"unexpected keyword {name!r}", tok)
        if name.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            self.error(f"atom names starting with {RESERVED_PREFIX!r} are reserved", tok)
        return Atom(name)


def parse(text: str, fmt: str = NATIVE, allow_reserved: bool = False) -> Formula:
    """Parse ``text`` into a formula; -> and <-> are kept (see ``desugar``).

    ``allow_reserved`` admits ``__``-prefixed atoms, which only occur when
    re-reading rendered normal forms.
    """
    if fmt == NATIVE:
        p = _Parser(_tokenize(text, _NATIVE_TOKENS), allow_reserved=allow_reserved)
        f = p.formula()
        p.take("EOF")
        return f
    if fmt == INTOHYLO:
        return _parse_intohylo(text)
    raise ValueError(f"unknown format {fmt!r}")


def _parse_intohylo(text: str) -> Formula:
    p = _Parser(_tokenize(text, _INTOHYLO_TOKENS), intohylo=True)
    wrapped = p.tok.kind == "ID" and p.tok.text == "begin"
    if wrapped:
        p.i += 1
    f = p.formula()
    if wrapped:
        end = p.take("ID")
        if end.text != "end":
            p.error("expected 'end'", end)
    p.take("EOF")
    return f


def format_for_path(path: str) -> str:
    return INTOHYLO if path.endswith(".intohylo") else NATIVE


# --------------------------------------------------------------------------
# Rendering
# --------------------------------------------------------------------------

def render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = render(f.arg)
        if isinstance(f.arg, (And, Or, Implies, Iff)):
            inner = f"({inner})"
        return "~" + inner
    if isinstance(f, Box):
        return f"box({render(f.arg)})"
    if isinstance(f, Diamond):
        return f"dia({render(f.arg)})"
    if isinstance(f, (And, Or)):
        sep = " & " if isinstance(f, And) else " | "
        return sep.join(_wrap(a, (And, Or, Implies, Iff)) for a in f.args)
    if isinstance(f, Implies):
        return f"{_wrap(f.left, (Implies, Iff))} -> {_wrap(f.right, (Iff,))}"
    if isinstance(f, Iff):
        return f"{_wrap(f.left, (Iff,))} <-> {_wrap(f.right, (Iff,))}"
    raise TypeError(f"cannot render {type(f).__name__}")


def _wrap(f: Formula, kinds) -> str:
    s = render(f)
    return f"({s})" if isinstance(f, kinds) else s
