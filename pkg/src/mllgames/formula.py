"""Multiplicative formulas and sequents: syntax trees, parsing, printing.

Concrete syntax (ASCII)::

    sequent = formula (',' formula)*
    par     = tensor ('|' tensor)*
    tensor  = atomic ('*' atomic)*
    atomic  = atom ['^'] | '(' par ')'

``*`` binds tighter than ``|``, both associate to the left and ``^`` is
postfix negation, allowed on atoms only.  The extended grammar used by the
polarity calculus adds ``!``/``?`` prefixes, ``&``/``+`` and ``-o``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence, Union

__all__ = [
    "Lit", "Tensor", "Par", "With", "Plus", "Lollipop", "OfCourse", "WhyNot",
    "Dual", "Formula", "ExtendedFormula", "Sequent", "Occurrence",
    "ParseError", "NegationOnCompound", "parse_sequent", "parse_formula",
    "parse_extended", "negate", "literal_occurrences", "is_balanced",
    "polarity", "with_p_premise_ok", "BINARY_POLARITY", "UNARY_POLARITY",
]

_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Lit:
    atom: str
    negated: bool = False

    def __post_init__(self):
        if not isinstance(self.atom, str) or not _ATOM_RE.fullmatch(self.atom):
            raise ValueError(f"bad atom name {self.atom!r}")

    def __str__(self):
        return self.atom + ("^" if self.negated else "")


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return _show(self)


@dataclass(frozen=True)
class Par:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return _show(self)


# Extended connectives: only the polarity calculus accepts these.

@dataclass(frozen=True)
class With:
    left: "ExtendedFormula"
    right: "ExtendedFormula"

    def __str__(self):
        return _show(self)


@dataclass(frozen=True)
class Plus:
    left: "ExtendedFormula"
    right: "ExtendedFormula"

    def __str__(self):
        return _show(self)


@dataclass(frozen=True)
class Lollipop:
    left: "ExtendedFormula"
    right: "ExtendedFormula"

    def __str__(self):
        return _show(self)


@dataclass(frozen=True)
class OfCourse:
    body: "ExtendedFormula"

    def __str__(self):
        return _show(self)


@dataclass(frozen=True)
class WhyNot:
    body: "ExtendedFormula"

    def __str__(self):
        return _show(self)


@dataclass(frozen=True)
class Dual:
    """Linear negation of a compound extended formula."""
    body: "ExtendedFormula"

    def __str__(self):
        return _show(self)


Formula = Union[Lit, Tensor, Par]
ExtendedFormula = Union[Lit, Tensor, Par, With, Plus, Lollipop, OfCourse, WhyNot, Dual]


class Occurrence(NamedTuple):
    index: int
    atom: str
    negated: bool


@dataclass(frozen=True)
class Sequent:
    formulas: tuple

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        if not self.formulas:
            raise ValueError("a sequent needs at least one formula")
        for f in self.formulas:
            _check_multiplicative(f)

    def __str__(self):
        return ", ".join(_show(f) for f in self.formulas)

    def __len__(self):
        return len(self.formulas)

    def __iter__(self):
        return iter(self.formulas)

    @property
    def atoms(self) -> list[str]:
        """Atoms in order of first occurrence."""
        seen = {}
        for occ in literal_occurrences(self):
            seen.setdefault(occ.atom, None)
        return list(seen)

    def literals(self) -> list[Lit]:
        return [lit for f in self.formulas for lit in _leaves(f)]


def _check_multiplicative(f):
    if isinstance(f, Lit):
        return
    if isinstance(f, (Tensor, Par)):
        _check_multiplicative(f.left)
        _check_multiplicative(f.right)
        return
    raise TypeError(f"not a multiplicative formula: {f!r}")


def _leaves(f) -> Iterator[Lit]:
    if isinstance(f, Lit):
        yield f
    elif isinstance(f, (OfCourse, WhyNot, Dual)):
        yield from _leaves(f.body)
    else:
        yield from _leaves(f.left)
        yield from _leaves(f.right)


# --- printing -------------------------------------------------------------

# binding strength; larger binds tighter
_PREC = {Lollipop: 0, With: 1, Plus: 1, Par: 2, Tensor: 3}
_SYMBOL = {Lollipop: "-o", With: "&", Plus: "+", Par: "|", Tensor: "*"}


def _show(f) -> str:
    if isinstance(f, Lit):
        return str(f)
    if isinstance(f, OfCourse):
        return "!" + _show_unary_arg(f.body)
    if isinstance(f, WhyNot):
        return "?" + _show_unary_arg(f.body)
    if isinstance(f, Dual):
        return "(" + _show(f.body) + ")^"
    prec = _PREC[type(f)]
    if isinstance(f, Lollipop):
        # right associative
        left = _wrap(f.left, _PREC[type(f.left)] <= prec if type(f.left) in _PREC else False)
        right = _wrap(f.right, _PREC[type(f.right)] < prec if type(f.right) in _PREC else False)
    else:
        left = _wrap(f.left, _PREC[type(f.left)] < prec if type(f.left) in _PREC else False)
        right = _wrap(f.right, _PREC[type(f.right)] <= prec if type(f.right) in _PREC else False)
    return f"{left} {_SYMBOL[type(f)]} {right}"


def _show_unary_arg(f) -> str:
    if isinstance(f, (Lit, OfCourse, WhyNot, Dual)):
        return _show(f)
    return "(" + _show(f) + ")"


def _wrap(f, paren: bool) -> str:
    text = _show(f)
    return f"({text})" if paren else text


# --- parsing --------------------------------------------------------------

class ParseError(ValueError):
    """Malformed formula text; ``position`` is a character offset."""

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        where = "end-of-input" if position >= len(text) else f"position {position}"
        super().__init__(f"syntax error at {where}: expected {expected}")


class NegationOnCompound(ParseError):
    def __init__(self, position: int, text: str = ""):
        super().__init__(position, "atom before '^'", text)
        self.args = (f"'^' after ')' at position {position}: negation applies to atoms only",)


_TOKEN_RE = re.compile(r"\s*(?:(-o)|([a-z][A-Za-z0-9_]*)|([*|,()^!?&+]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(len(text) - len(text[pos:].lstrip()), "atom, operator or parenthesis", text)
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, extended: bool):
        self.text = text
        self.extended = extended
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.tokens[self.i][0]

    @property
    def pos(self) -> int:
        return self.tokens[self.i][1]

    def advance(self) -> str:
        tok = self.tok
        self.i += 1
        return tok

    def expect_eof(self):
        if self.tok != "<eof>":
            raise ParseError(self.pos, "',' or end of input", self.text)

    def sequent(self) -> Sequent:
        formulas = [self.par()]
        while self.tok == ",":
            self.advance()
            formulas.append(self.par())
        self.expect_eof()
        return Sequent(tuple(formulas))

    def lollipop(self):
        left = self.additive()
        if self.tok == "-o":
            self.advance()
            return Lollipop(left, self.lollipop())
        return left

    def additive(self):
        node = self.par()
        while self.tok in ("&", "+"):
            cls = With if self.advance() == "&" else Plus
            node = cls(node, self.par())
        return node

    def par(self):
        node = self.tensor()
        while self.tok == "|":
            self.advance()
            node = Par(node, self.tensor())
        return node

    def tensor(self):
        node = self.unary()
        while self.tok == "*":
            self.advance()
            node = Tensor(node, self.unary())
        return node

    def unary(self):
        if self.extended and self.tok in ("!", "?"):
            cls = OfCourse if self.advance() == "!" else WhyNot
            return cls(self.unary())
        return self.atomic()

    def atomic(self):
        tok, pos = self.tokens[self.i]
        if tok == "(":
            self.advance()
            inner = self.lollipop() if self.extended else self.par()
            if self.tok != ")":
                raise ParseError(self.pos, "')'", self.text)
            self.advance()
            while self.tok == "^":
                if not self.extended:
                    raise NegationOnCompound(self.pos, self.text)
                self.advance()
                inner = negate(inner) if isinstance(inner, Lit) else (
                    inner.body if isinstance(inner, Dual) else Dual(inner))
            return inner
        if _ATOM_RE.fullmatch(tok):
            self.advance()
            negated = False
            while self.tok == "^":
                self.advance()
                negated = not negated
            return Lit(tok, negated)
        raise ParseError(pos, "atomic", self.text)


def parse_sequent(text: str) -> Sequent:
    """Parse ``"a^ | a^, a * a"`` style text into a :class:`Sequent`."""
    return _Parser(text, extended=False).sequent()


def parse_formula(text: str) -> Formula:
    seq = parse_sequent(text)
    if len(seq) != 1:
        raise ParseError(len(text), "a single formula", text)
    return seq.formulas[0]


def parse_extended(text: str) -> ExtendedFormula:
    """Parse one extended formula (adds ``! ? & + -o`` and ``(...)^``)."""
    p = _Parser(text, extended=True)
    f = p.lollipop()
    p.expect_eof()
    return f


# --- operations -----------------------------------------------------------

def negate(f):
    """De Morgan dual, kept in negation normal form."""
    if isinstance(f, Lit):
        return Lit(f.atom, not f.negated)
    if isinstance(f, Tensor):
        return Par(negate(f.left), negate(f.right))
    if isinstance(f, Par):
        return Tensor(negate(f.left), negate(f.right))
    if isinstance(f, Dual):
        return f.body
    return Dual(f)


def literal_occurrences(s: Sequent) -> list[Occurrence]:
    """Literal leaves of ``s`` numbered 1..n left to right."""
    return [Occurrence(i, lit.atom, lit.negated)
            for i, lit in enumerate(s.literals(), start=1)]


def is_balanced(s: Sequent) -> bool:
    counts = Counter((occ.atom, occ.negated) for occ in literal_occurrences(s))
    return all(counts[(atom, True)] == counts[(atom, False)] for atom, _ in counts)


# Polarity tables.  Binary columns: tensor, par, lollipop, with, plus.
BINARY_POLARITY: dict[tuple[int, int], tuple[int, int, int, int, int]] = {
    (+1, +1): (+1, +1, 0, +1, +1),
    (+1, 0): (0, 0, 0, 0, 0),
    (+1, -1): (0, 0, -1, 0, 0),
    (0, +1): (0, 0, 0, 0, 0),
    (0, 0): (0, 0, 0, 0, 0),
    (0, -1): (0, 0, 0, 0, 0),
    (-1, +1): (0, 0, +1, 0, 0),
    (-1, 0): (0, 0, 0, 0, 0),
    (-1, -1): (-1, -1, 0, -1, -1),
}
# Unary columns: of-course, why-not, negation.
UNARY_POLARITY: dict[int, tuple[int, int, int]] = {
    +1: (-1, +1, -1),
    0: (-1, +1, 0),
    -1: (-1, +1, +1),
}
_BINARY_COLUMN = {Tensor: 0, Par: 1, Lollipop: 2, With: 3, Plus: 4}
_UNARY_COLUMN = {OfCourse: 0, WhyNot: 1, Dual: 2}


def polarity(f: ExtendedFormula) -> int:
    """Syntactic polarity (+1, 0 or -1), read off the tables bottom-up."""
    if isinstance(f, Lit):
        return 0
    col = _UNARY_COLUMN.get(type(f))
    if col is not None:
        return UNARY_POLARITY[polarity(f.body)][col]
    return BINARY_POLARITY[polarity(f.left), polarity(f.right)][_BINARY_COLUMN[type(f)]]


def with_p_premise_ok(context: Sequence[ExtendedFormula]) -> bool:
    """Side condition of the polarised With rule: every context formula positive."""
    return all(polarity(f) == +1 for f in context)
