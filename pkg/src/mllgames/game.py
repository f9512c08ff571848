"""Finite games and the multiplicative constructions on them.

A game has a set of moves labelled ``P`` or ``O`` and a prefix-closed set of
alternating positions.  All games here are finite, so there are no infinite
plays and no winning set to record.

Compound games keep their formation tree and decide membership of a move
sequence incrementally through :meth:`Game.step`, which carries a small
state (the restriction to every constituent plus, for every connective, the
side and label of the last move below it).  ``positions`` enumerates the
full position set from that when it is actually needed.
"""
from __future__ import annotations

import json
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .formula import Dual, Lit, Lollipop, OfCourse, Par, Sequent, Tensor, WhyNot

__all__ = [
    "P", "O", "Game", "ExplicitGame", "Composite", "MissingAtom", "GamePolarity",
    "flip_label", "unit", "one_move", "game_B", "game_C", "builtin_game",
    "BUILTIN_GAMES", "dual", "combine", "tensor", "par", "lollipop",
    "sum_games", "instantiate", "validate_game", "game_polarity", "polarize",
    "to_document", "from_document", "dumps", "loads", "polarized_instance",
]

P = "P"
O = "O"


def flip_label(label: str) -> str:
    return O if label == P else P


class MissingAtom(KeyError):
    def __init__(self, atom: str):
        super().__init__(atom)
        self.atom = atom

    def __str__(self):
        return f"no game assigned to atom {self.atom!r}"


class Game:
    """Base class.  Subclasses provide ``labels``, ``start`` and ``step``."""

    labels: Mapping[str, str]

    def start(self):
        raise NotImplementedError

    def step(self, state, move: str):
        """State after ``move``, or None if the extended sequence is not a position."""
        raise NotImplementedError

    @property
    def moves(self) -> list[str]:
        return sorted(self.labels)

    def label(self, move: str) -> str:
        return self.labels[move]

    def o_moves(self) -> list[str]:
        return [m for m in self.moves if self.labels[m] == O]

    def p_moves(self) -> list[str]:
        return [m for m in self.moves if self.labels[m] == P]

    def state_of(self, seq: Sequence[str]):
        state = self.start()
        for m in seq:
            state = self.step(state, m)
            if state is None:
                return None
        return state

    def is_position(self, seq: Sequence[str]) -> bool:
        return self.state_of(seq) is not None

    def extensions(self, seq: Sequence[str]) -> list[str]:
        """Moves ``m`` with ``seq + (m,)`` a position."""
        state = self.state_of(seq)
        if state is None:
            return []
        return [m for m in self.moves if self.step(state, m) is not None]

    def opening_moves(self) -> list[str]:
        return self.extensions(())

    @cached_property
    def positions(self) -> frozenset:
        found = {()}
        frontier = [((), self.start())]
        moves = self.moves
        while frontier:
            nxt = []
            for seq, state in frontier:
                for m in moves:
                    st = self.step(state, m)
                    if st is not None:
                        s2 = seq + (m,)
                        found.add(s2)
                        nxt.append((s2, st))
            frontier = nxt
        return frozenset(found)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Game):
            return NotImplemented
        return dict(self.labels) == dict(other.labels) and self.positions == other.positions

    def __hash__(self):
        return hash(frozenset(self.labels.items()))

    def __repr__(self):
        return f"<{type(self).__name__} {len(self.labels)} moves>"


class ExplicitGame(Game):
    """A game given by listing its moves and positions."""

    def __init__(self, labels: Mapping[str, str], positions: Iterable[Sequence[str]]):
        self.labels = dict(labels)
        for m, lab in self.labels.items():
            if lab not in (P, O):
                raise ValueError(f"move {m!r} has label {lab!r}; expected P or O")
        self.__dict__["positions"] = frozenset(tuple(s) for s in positions)

    def start(self):
        return ()

    def step(self, state, move):
        s = state + (move,)
        return s if s in self.positions else None

    def is_position(self, seq):
        return tuple(seq) in self.positions


def unit() -> ExplicitGame:
    """The empty game: no moves, only the empty position."""
    return ExplicitGame({}, [()])


def one_move(label: str, name: str = "b") -> ExplicitGame:
    return ExplicitGame({name: label}, [(), (name,)])


def game_B() -> ExplicitGame:
    """One Opponent move ``b``."""
    return one_move(O, "b")


def game_C() -> ExplicitGame:
    """Opponent plays ``a'``, then Player may answer ``b'``."""
    return ExplicitGame({"a'": O, "b'": P}, [(), ("a'",), ("a'", "b'")])


# --- compound games -------------------------------------------------------
#
# Formation trees are tuples: ("leaf", prefix, game, flipped) or
# (kind, left, right) with kind "tensor" / "par".  The labels of a leaf are
# those of its game, flipped when ``flipped`` is set.

def _retag(tree, tag: str, flip: bool):
    if tree[0] == "leaf":
        _, prefix, g, flipped = tree
        return ("leaf", tag + prefix, g, flipped != flip)
    kind, left, right = tree
    if flip:
        kind = "par" if kind == "tensor" else "tensor"
    return (kind, _retag(left, tag, flip), _retag(right, tag, flip))


def _as_tree(g: Game, tag: str, flip: bool):
    if isinstance(g, Composite):
        return _retag(g.tree, tag, flip)
    return ("leaf", tag, g, flip)


class Composite(Game):
    """A game built from constituent games by tensor and par."""

    def __init__(self, tree, operands: Optional[tuple] = None):
        self.tree = tree
        self.operands = operands
        self._leaves = []      # (prefix, game)
        self._switcher = []    # per connective: label allowed to change side
        self._info = {}        # move -> (leaf, base move, label, path)
        self.labels = {}
        self._build(tree, [])
        self._start = (tuple(g.start() for _, g in self._leaves),
                       (None,) * len(self._switcher))

    def _build(self, tree, path):
        if tree[0] == "leaf":
            _, prefix, g, flipped = tree
            idx = len(self._leaves)
            self._leaves.append((prefix, g))
            frozen_path = tuple(path)
            for m, lab in g.labels.items():
                lab = flip_label(lab) if flipped else lab
                mid = prefix + m
                if mid in self._info:
                    raise ValueError(f"duplicate move id {mid!r}")
                self._info[mid] = (idx, m, lab, frozen_path)
                self.labels[mid] = lab
            return
        kind, left, right = tree
        ni = len(self._switcher)
        self._switcher.append(O if kind == "tensor" else P)
        self._build(left, path + [(ni, 0)])
        self._build(right, path + [(ni, 1)])

    @property
    def constituents(self) -> list[tuple[str, Game]]:
        return list(self._leaves)

    def start(self):
        return self._start

    def step(self, state, move):
        info = self._info.get(move)
        if info is None:
            return None
        leaf, base, lab, path = info
        leaves, nodes = state
        switcher = self._switcher
        for ni, side in path:
            last = nodes[ni]
            if last is not None:
                if last[1] == lab:
                    return None
                if last[0] != side and lab != switcher[ni]:
                    return None
        local = self._leaves[leaf][1].step(leaves[leaf], base)
        if local is None:
            return None
        if path:
            nodes = list(nodes)
            for ni, side in path:
                nodes[ni] = (side, lab)
            nodes = tuple(nodes)
        return (leaves[:leaf] + (local,) + leaves[leaf + 1:], nodes)

    def why_illegal(self, seq: Sequence[str], move: str) -> Optional[str]:
        """Name the position constraint that ``seq + (move,)`` breaks."""
        state = self.state_of(seq)
        if state is None:
            return "prefix is not a position"
        info = self._info.get(move)
        if info is None:
            return "unknown move"
        leaf, base, lab, path = info
        leaves, nodes = state
        for ni, side in path:
            last = nodes[ni]
            if last is not None:
                if last[1] == lab:
                    return "alternation"
                if last[0] != side and lab != self._switcher[ni]:
                    return "component switching"
        if self._leaves[leaf][1].step(leaves[leaf], base) is None:
            return "constituent position"
        return None


def dual(g: Game) -> Game:
    """Swap the roles of Player and Opponent; positions unchanged."""
    if isinstance(g, Composite):
        if g.operands and g.operands[0] == "dual":
            return g.operands[1]
        return Composite(_retag(g.tree, "", True), ("dual", g))
    if isinstance(g, ExplicitGame):
        original = getattr(g, "_dual_of", None)
        if original is not None:
            return original
        d = ExplicitGame({m: flip_label(l) for m, l in g.labels.items()}, g.positions)
        d._dual_of = g
        return d
    raise TypeError(f"cannot dualise {g!r}")


def combine(kind: str, a: Game, b: Game) -> Composite:
    """``tensor``, ``par`` or ``lollipop`` of two games; moves tagged ``1.`` / ``2.``."""
    if kind == "tensor":
        tree = ("tensor", _as_tree(a, "1.", False), _as_tree(b, "2.", False))
    elif kind == "par":
        tree = ("par", _as_tree(a, "1.", False), _as_tree(b, "2.", False))
    elif kind == "lollipop":
        tree = ("par", _as_tree(a, "1.", True), _as_tree(b, "2.", False))
    else:
        raise ValueError(f"unknown connective {kind!r}")
    return Composite(tree, (kind, a, b))


def tensor(a: Game, b: Game) -> Composite:
    return combine("tensor", a, b)


def par(a: Game, b: Game) -> Composite:
    return combine("par", a, b)


def lollipop(a: Game, b: Game) -> Composite:
    return combine("lollipop", a, b)


def sum_games(*games: Game) -> ExplicitGame:
    """Disjoint union: a play runs entirely inside one summand (tags ``1.``, ``2.``, ...)."""
    labels = {}
    positions = {()}
    for k, g in enumerate(games, start=1):
        tag = f"{k}."
        labels.update({tag + m: lab for m, lab in g.labels.items()})
        positions.update(tuple(tag + m for m in s) for s in g.positions)
    return ExplicitGame(labels, positions)


def instantiate(s: Sequent, assignment: Mapping[str, Game]) -> Composite:
    """The game of ``s`` with atoms read as games; occurrence ``i`` tags moves ``i.``.

    The commas of the sequent are read as par.
    """
    counter = iter(range(1, 10 ** 9))

    def rec(f):
        if isinstance(f, Lit):
            if f.atom not in assignment:
                raise MissingAtom(f.atom)
            return ("leaf", f"{next(counter)}.", assignment[f.atom], f.negated)
        kind = "tensor" if isinstance(f, Tensor) else "par"
        return (kind, rec(f.left), rec(f.right))

    trees = [rec(f) for f in s.formulas]
    tree = trees[0]
    for t in trees[1:]:
        tree = ("par", tree, t)
    return Composite(tree, ("instance", s, dict(assignment)))


BUILTIN_GAMES = ("unit", "B", "Bdual", "C", "Cflip")


def builtin_game(name: str) -> Game:
    if name == "unit":
        return unit()
    if name == "B":
        return game_B()
    if name == "Bdual":
        return dual(game_B())
    if name == "C":
        return game_C()
    if name == "Cflip":
        return dual(game_C())
    raise KeyError(f"unknown builtin game {name!r}; choose from {', '.join(BUILTIN_GAMES)}")


def validate_game(g: Game) -> list[str]:
    """Violations of the game axioms (empty list when the game is well formed)."""
    problems = []
    pos = g.positions
    if () not in pos:
        problems.append("empty position missing")
    for s in sorted(pos, key=lambda t: (len(t), t)):
        for m in s:
            if m not in g.labels:
                problems.append(f"position {list(s)} uses unknown move {m!r}")
                break
        else:
            for x, y in zip(s, s[1:]):
                if g.labels[x] == g.labels[y]:
                    problems.append(f"position {list(s)} is not alternating")
                    break
        if s and s[:-1] not in pos:
            problems.append(f"position {list(s)} has missing prefix {list(s[:-1])}")
    return problems


class GamePolarity(int):
    """+1, 0 or -1; ``empty`` marks a game with no opening move at all (reported as 0)."""

    empty: bool

    def __new__(cls, value: int, empty: bool = False):
        obj = super().__new__(cls, value)
        obj.empty = empty
        return obj


def game_polarity(g: Game) -> GamePolarity:
    labels = {g.labels[m] for m in g.opening_moves()}
    if not labels:
        return GamePolarity(0, empty=True)
    if labels == {P}:
        return GamePolarity(+1)
    if labels == {O}:
        return GamePolarity(-1)
    return GamePolarity(0)


def polarize(sign: str, g: Game) -> ExplicitGame:
    """Keep only positions opened by Player (``+``) or by Opponent (``-``)."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    banned = O if sign == "+" else P
    kept = [s for s in g.positions if not s or g.labels[s[0]] != banned]
    return ExplicitGame(g.labels, kept)


# --- serialisation --------------------------------------------------------

def to_document(g: Game) -> dict:
    return {
        "moves": [{"id": m, "label": g.labels[m]} for m in g.moves],
        "positions": [list(s) for s in sorted(g.positions, key=lambda t: (len(t), t))],
    }


def from_document(doc: Mapping) -> ExplicitGame:
    try:
        labels = {m["id"]: m["label"] for m in doc["moves"]}
        positions = [tuple(s) for s in doc["positions"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(
            'game document needs "moves": [{"id", "label"}] and "positions": [[move ids]]'
        ) from exc
    return ExplicitGame(labels, positions)


def dumps(g: Game) -> str:
    return json.dumps(to_document(g), indent=2)


def loads(text: str) -> ExplicitGame:
    return from_document(json.loads(text))


def polarized_instance(f, atom_game: Optional[Game] = None) -> Game:
    """A game for an extended formula built from atoms, ``!``, ``?``, negation and
    the multiplicatives.

    ``!F`` and ``?F`` are read as the negative and positive parts of the game
    for ``F``; atoms default to the disjoint union of B and its dual, a game
    whose openings belong to both players.  Additive connectives are rejected.
    """
    if atom_game is None:
        atom_game = sum_games(game_B(), dual(game_B()))
    if isinstance(f, Lit):
        return dual(atom_game) if f.negated else atom_game
    if isinstance(f, OfCourse):
        return polarize("-", polarized_instance(f.body, atom_game))
    if isinstance(f, WhyNot):
        return polarize("+", polarized_instance(f.body, atom_game))
    if isinstance(f, Dual):
        return dual(polarized_instance(f.body, atom_game))
    kinds = {Tensor: "tensor", Par: "par", Lollipop: "lollipop"}
    if type(f) not in kinds:
        raise ValueError(f"no game construction for {type(f).__name__}")
    return combine(kinds[type(f)], polarized_instance(f.left, atom_game),
                   polarized_instance(f.right, atom_game))
