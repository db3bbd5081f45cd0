"""Propositional formulas over named atoms: conjunction and implication.

Grammar: identifiers are atoms, ``&`` is conjunction (left associative),
``->`` is implication (right associative, binds weakest).  Parentheses
group as usual.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

Formula = Union["Atom", "Conj", "Impl"]


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Conj:
    left: Formula
    right: Formula

    def __str__(self):
        return f"{_paren(self.left, conj_child=True)} & {_paren(self.right, conj_child=True)}"


@dataclass(frozen=True)
class Impl:
    left: Formula
    right: Formula

    def __str__(self):
        lhs = f"({self.left})" if isinstance(self.left, Impl) else str(self.left)
        return f"{lhs} -> {self.right}"


def _paren(f: Formula, conj_child: bool = False) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Conj):
        # print conjunctions fully parenthesized so association is visible
        return f"({f})"
    return f"({f})"


def atoms(f: Formula) -> frozenset:
    if isinstance(f, Atom):
        return frozenset([f])
    return atoms(f.left) | atoms(f.right)


def is_conjunctive(f: Formula) -> bool:
    """True when f contains no implication."""
    if isinstance(f, Atom):
        return True
    if isinstance(f, Conj):
        return is_conjunctive(f.left) and is_conjunctive(f.right)
    return False


def conj_atoms_in_order(f: Formula) -> Tuple[Atom, ...]:
    """Atoms of a conjunction-only formula, left to right with repeats."""
    if isinstance(f, Atom):
        return (f,)
    if isinstance(f, Conj):
        return conj_atoms_in_order(f.left) + conj_atoms_in_order(f.right)
    raise ValueError("formula contains an implication")


def left_assoc_conj(parts) -> Formula:
    """Fold parts into (((p0 & p1) & p2) & ...)."""
    parts = list(parts)
    if not parts:
        raise ValueError("need at least one conjunct")
    out = parts[0]
    for p in parts[1:]:
        out = Conj(out, p)
    return out


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(->|&|\(|\)|[A-Za-z_][A-Za-z_0-9]*)")


def _tokenize(text: str) -> Iterator[str]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:]!r}")
            break
        yield m.group(1)
        pos = m.end()


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ValueError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> Formula:
        f = self.impl()
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return f

    def impl(self) -> Formula:
        left = self.conj()
        if self.peek() == "->":
            self.take()
            return Impl(left, self.impl())
        return left

    def conj(self) -> Formula:
        out = self.atom()
        while self.peek() == "&":
            self.take()
            out = Conj(out, self.atom())
        return out

    def atom(self) -> Formula:
        tok = self.take()
        if tok == "(":
            f = self.impl()
            self.expect(")")
            return f
        if tok is None or tok in ("&", "->", ")"):
            raise ValueError(f"unexpected token {tok!r}")
        return Atom(tok)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()
