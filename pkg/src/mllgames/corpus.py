"""Exhaustive corpora of proof structures up to symmetry.

A shape is a sequent skeleton modulo associativity and commutativity of
tensor and par, exchange, and reading a top-level par as a comma.  A class
is a shape together with a perfect matching of its leaves, modulo the
automorphisms of the shape.  Every class is realised over at most two
atoms: links alternate between ``a`` and ``b`` and the first end of each
link is the negative literal.

Net-hood is invariant under all of these symmetries (and under renaming the
atom or swapping the signs of a single link), so checking one
representative per class covers every proof structure of the given size.
"""
from __future__ import annotations

import functools
import itertools
from typing import Iterator

from .formula import Lit, Par, Sequent, Tensor
from .proofnet import Linking, enumerate_linkings

__all__ = [
    "shapes", "matchings", "structure_classes", "corpus", "labelled_sequents",
    "labelled_corpus", "parse_corpus_spec",
]


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


@functools.lru_cache(maxsize=None)
def _trees(n: int, root: str) -> tuple:
    # trees with n leaves whose root connective is ``root``; children are
    # leaves or trees with the other connective (flattened by associativity)
    other = "P" if root == "T" else "T"
    found = set()
    for parts in _partitions(n, n):
        if len(parts) < 2:
            continue
        options = [[("L",)] if p == 1 else _trees(p, other) for p in parts]
        for combo in itertools.product(*options):
            found.add((root, tuple(sorted(combo))))
    return tuple(sorted(found))


def _formulas(n: int) -> tuple:
    return (("L",),) if n == 1 else _trees(n, "T")


@functools.lru_cache(maxsize=None)
def shapes(n: int) -> tuple:
    """Sequent skeletons with ``n`` leaves, one per symmetry class."""
    found = set()
    for parts in _partitions(n, n):
        for combo in itertools.product(*(_formulas(p) for p in parts)):
            found.add(tuple(sorted(combo)))
    return tuple(sorted(found))


def matchings(items: list) -> Iterator[list]:
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in matchings(rest):
            yield [(first, items[k])] + m


def _canon(tree, label, it):
    if tree[0] == "L":
        return ("L", label[next(it)])
    return (tree[0], tuple(sorted(_canon(c, label, it) for c in tree[1])))


def _class_key(shape, matching, n):
    best = None
    for perm in itertools.permutations(range(n // 2)):
        label = [0] * n
        for k, (x, y) in enumerate(matching):
            label[x] = label[y] = perm[k]
        it = iter(range(n))
        key = tuple(sorted(_canon(f, label, it) for f in shape))
        if best is None or key < best:
            best = key
    return best


def _realise(shape, matching) -> tuple[Sequent, Linking]:
    n = 2 * len(matching)
    link_of = {}
    for x, y in matching:
        link_of[x] = link_of[y] = (x, y)
    ordered = sorted(matching)
    atom = {p: "ab"[k % 2] for k, p in enumerate(ordered)}
    it = iter(range(n))

    def build(tree):
        if tree[0] == "L":
            i = next(it)
            p = link_of[i]
            return Lit(atom[p], negated=(i == p[0]))
        cls = Tensor if tree[0] == "T" else Par
        kids = [build(c) for c in tree[1]]
        out = kids[0]
        for k in kids[1:]:
            out = cls(out, k)
        return out

    formulas = tuple(build(f) for f in shape)
    return Sequent(formulas), Linking((x + 1, y + 1) for x, y in matching)


def structure_classes(n: int) -> Iterator[tuple[Sequent, Linking]]:
    """One proof structure per class with ``n`` literals (``n`` even)."""
    if n % 2:
        return
    for shape in shapes(n):
        seen = set()
        for m in matchings(list(range(n))):
            key = _class_key(shape, m, n)
            if key not in seen:
                seen.add(key)
                yield _realise(shape, m)


# sign-and-atom relabellings of the literal codes a, a^, b, b^ = 0, 1, 2, 3
_RENAMINGS = [(0, 1, 2, 3), (1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2),
              (2, 3, 0, 1), (3, 2, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0)]


def _build(shape, codes) -> Sequent:
    it = iter(codes)

    def build(tree):
        if tree[0] == "L":
            c = next(it)
            return Lit("ab"[c // 2], negated=bool(c % 2))
        cls = Tensor if tree[0] == "T" else Par
        kids = [build(c) for c in tree[1]]
        out = kids[0]
        for k in kids[1:]:
            out = cls(out, k)
        return out

    return Sequent(tuple(build(f) for f in shape))


def labelled_sequents(n: int) -> Iterator[Sequent]:
    """Balanced sequents with ``n`` literals over atoms a, b, up to symmetry."""
    for shape in shapes(n):
        seen = set()
        for codes in itertools.product(range(4), repeat=n):
            count = [codes.count(k) for k in range(4)]
            if count[0] != count[1] or count[2] != count[3]:
                continue
            if count[2] and not count[0]:
                continue
            best = min(
                tuple(sorted(_canon(f, [r[c] for c in codes], iter(range(n))) for f in shape))
                for r in _RENAMINGS)
            if best not in seen:
                seen.add(best)
                yield _build(shape, codes)


def labelled_corpus(max_literals: int = 6) -> Iterator[tuple[Sequent, Linking]]:
    """Every linking of every labelled sequent up to ``max_literals``."""
    for n in range(2, max_literals + 1, 2):
        for s in labelled_sequents(n):
            for lk in enumerate_linkings(s):
                yield s, lk


def corpus(max_literals: int = 8) -> Iterator[tuple[Sequent, Linking]]:
    for n in range(2, max_literals + 1, 2):
        yield from structure_classes(n)


def parse_corpus_spec(text: str) -> int:
    """``classes:N`` (or just ``N``): all classes with at most N literals."""
    body = text.split(":", 1)[1] if text.startswith("classes:") else text
    try:
        n = int(body)
    except ValueError:
        raise ValueError(f"bad corpus spec {text!r}; expected classes:N with N a literal bound") from None
    if n < 2:
        raise ValueError("corpus bound must be at least 2")
    return n
