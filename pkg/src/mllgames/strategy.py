"""Strategies on finite games, winning, composition and the structural morphisms.

Strategies are stored extensionally as prefix-closed sets of positions.
History-free strategies are also available as partial maps from O-moves to
P-moves; :func:`induce` turns such a map into the strategy it generates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .game import O, P, Game, dual, lollipop, tensor, unit

__all__ = [
    "Strategy", "CounterStrategy", "HistoryFreeFunction", "Play",
    "NotHistoryFree", "NonStrategyResult", "ChatteringDivergence",
    "validate_strategy", "validate_counter_strategy", "induce",
    "canonical_function", "is_winning", "is_winning_by_enumeration",
    "wins", "counter_strategies", "counter_from_play", "enumerate_strategies", "play_out",
    "compose_sets", "compose_exec", "copycat", "copycat_function",
    "tensor_hf", "apply_hf", "curry_hf", "uncurry_hf", "iso_function",
    "structural_iso", "lollipop_parts",
]


class NotHistoryFree(ValueError):
    pass


class NonStrategyResult(ValueError):
    def __init__(self, violations):
        super().__init__("composite is not a strategy: " + "; ".join(violations))
        self.violations = list(violations)


class ChatteringDivergence(RuntimeError):
    def __init__(self, trace):
        shown = " -> ".join(f"{side}:{m}" for side, m in trace)
        super().__init__(f"internal moves repeat without exit: {shown}")
        self.trace = list(trace)


class _PositionSet:
    def __init__(self, game: Game, positions: Iterable[Sequence[str]]):
        self.game = game
        self.positions = frozenset(tuple(s) for s in positions)

    def __contains__(self, s):
        return tuple(s) in self.positions

    def __iter__(self):
        return iter(sorted(self.positions, key=lambda t: (len(t), t)))

    def __len__(self):
        return len(self.positions)

    def __eq__(self, other):
        if not isinstance(other, _PositionSet):
            return NotImplemented
        return self.positions == other.positions

    def __hash__(self):
        return hash(self.positions)

    def __repr__(self):
        shown = ", ".join("·".join(s) or "ε" for s in self)
        return f"{type(self).__name__}({{{shown}}})"

    def maximal(self) -> list[tuple]:
        prefixes = {s[:-1] for s in self.positions if s}
        return [s for s in self if s not in prefixes]

    def to_document(self) -> list[list[str]]:
        return [list(s) for s in self]


class Strategy(_PositionSet):
    """A Player strategy: a prefix-closed set of positions."""


class CounterStrategy(_PositionSet):
    """An Opponent strategy (roles in the determinacy and closure clauses swapped)."""


@dataclass(frozen=True)
class Play:
    moves: tuple
    loser: str  # the side to move at the end

    def __str__(self):
        return " ".join(self.moves) or "ε"


class HistoryFreeFunction:
    """Partial map from O-moves to P-moves of ``game``."""

    def __init__(self, game: Game, mapping: Mapping[str, str]):
        self.game = game
        self.mapping = dict(mapping)
        labels = game.labels
        for o, p in self.mapping.items():
            if labels.get(o) != O:
                raise ValueError(f"{o!r} is not an O-move of the game")
            if labels.get(p) != P:
                raise ValueError(f"{p!r} is not a P-move of the game")

    def __call__(self, move: str) -> Optional[str]:
        return self.mapping.get(move)

    def __eq__(self, other):
        if not isinstance(other, HistoryFreeFunction):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self):
        return hash(frozenset(self.mapping.items()))

    def __repr__(self):
        return f"HistoryFreeFunction({self.mapping})"

    def restrict(self, domain: Iterable[str]) -> "HistoryFreeFunction":
        keep = set(domain)
        return HistoryFreeFunction(self.game, {o: p for o, p in self.mapping.items() if o in keep})

    def dumps(self) -> str:
        return "".join(f"{o} -> {p}\n" for o, p in sorted(self.mapping.items()))

    @classmethod
    def loads(cls, game: Game, text: str) -> "HistoryFreeFunction":
        mapping = {}
        for n, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "->" not in line:
                raise ValueError(f"line {n}: expected 'o-move -> p-move'")
            o, p = (part.strip() for part in line.split("->", 1))
            mapping[o] = p
        return cls(game, mapping)


# --- validation -----------------------------------------------------------

def _check(g: Game, positions: frozenset, mover_free: str) -> list[str]:
    # mover_free: the side whose every legal extension must be present
    problems = []
    if () not in positions:
        problems.append("empty position missing")
    labels = g.labels
    moves = g.moves
    states = {(): g.start()}
    for s in sorted(positions, key=lambda t: (len(t), t)):
        shown = "·".join(s) or "ε"
        if s:
            if s[:-1] not in positions:
                problems.append(f"{shown} has a missing prefix")
            prev = states.get(s[:-1])
            if prev is None:
                prev = g.state_of(s[:-1])
            state = None if prev is None else g.step(prev, s[-1])
            if state is None:
                problems.append(f"{shown} is not a position of the game")
                continue
            states[s] = state
            if labels[s[0]] != O:
                problems.append(f"(s1) {shown} does not start with an O-move")
                continue
        to_move = O if len(s) % 2 == 0 else P
        state = states[s]
        ext = [m for m in moves if labels[m] == to_move and g.step(state, m) is not None]
        if to_move == mover_free:
            missing = [m for m in ext if s + (m,) not in positions]
            if missing:
                problems.append(f"(s3) {shown} lacks extension(s) {', '.join(missing)}")
        else:
            chosen = [m for m in ext if s + (m,) in positions]
            if len(chosen) > 1:
                problems.append(f"(s2) {shown} has several answers {', '.join(chosen)}")
    return problems


def validate_strategy(g: Game, sigma) -> list[str]:
    """Violations of membership, prefix closure and (s1)-(s3); empty when valid."""
    positions = sigma.positions if isinstance(sigma, _PositionSet) else frozenset(map(tuple, sigma))
    return _check(g, positions, O)


def validate_counter_strategy(g: Game, tau) -> list[str]:
    positions = tau.positions if isinstance(tau, _PositionSet) else frozenset(map(tuple, tau))
    return _check(g, positions, P)


# --- history-free strategies ---------------------------------------------

def induce(g: Game, f: HistoryFreeFunction) -> Strategy:
    labels = g.labels
    found = {()}
    frontier = [((), g.start())]
    while frontier:
        nxt = []
        for s, state in frontier:
            if len(s) % 2 == 0:
                for m in g.moves:
                    if labels[m] == O:
                        st = g.step(state, m)
                        if st is not None:
                            nxt.append((s + (m,), st))
            else:
                p = f(s[-1])
                if p is not None:
                    st = g.step(state, p)
                    if st is not None:
                        nxt.append((s + (p,), st))
        for s, _ in nxt:
            found.add(s)
        frontier = nxt
    return Strategy(g, found)


def canonical_function(g: Game, sigma: Strategy) -> HistoryFreeFunction:
    """The least function inducing ``sigma``; NotHistoryFree if there is none."""
    mapping = {}
    for s in sigma.positions:
        if len(s) % 2 == 0 and s:
            o, p = s[-2], s[-1]
            if mapping.setdefault(o, p) != p:
                raise NotHistoryFree(f"{o} is answered by both {mapping[o]} and {p}")
    f = HistoryFreeFunction(g, mapping)
    if induce(g, f) != sigma:
        raise NotHistoryFree("answers depend on more than the last O-move")
    return f


# --- winning --------------------------------------------------------------

def is_winning(g: Game, sigma: Strategy) -> bool:
    """Fast criterion: Player is never left to move without an answer."""
    return all(len(s) % 2 == 0 for s in sigma.maximal())


def _options(g: Game, s: tuple, positions, side_free: str):
    """Enumerate sub-strategies below ``s`` (as sets of positions)."""
    labels = g.labels
    to_move = O if len(s) % 2 == 0 else P
    ext = [m for m in g.extensions(s) if labels[m] == to_move]
    if to_move == side_free:
        parts = [list(_options(g, s + (m,), positions, side_free)) for m in ext]
        for combo in itertools.product(*parts):
            out = {s}
            for part in combo:
                out |= part
            yield frozenset(out)
    else:
        yield frozenset({s})
        for m in ext:
            for sub in _options(g, s + (m,), positions, side_free):
                yield sub | {s}


def counter_strategies(g: Game) -> Iterator[CounterStrategy]:
    for pos in _options(g, (), None, P):
        yield CounterStrategy(g, pos)


def enumerate_strategies(g: Game) -> Iterator[Strategy]:
    for pos in _options(g, (), None, O):
        yield Strategy(g, pos)


def play_out(g: Game, sigma, tau) -> Play:
    """The unique maximal play common to ``sigma`` and ``tau``."""
    both = sigma.positions & tau.positions
    s = ()
    while True:
        nxt = [m for m in g.extensions(s) if s + (m,) in both]
        if not nxt:
            break
        s = s + (nxt[0],)
    return Play(s, O if len(s) % 2 == 0 else P)


def counter_from_play(g: Game, moves: Sequence[str]) -> CounterStrategy:
    """Opponent follows ``moves`` and gives up as soon as Player deviates."""
    moves = tuple(moves)
    labels = g.labels
    found = {moves[:k] for k in range(len(moves) + 1)}
    for k in range(1, len(moves) + 1, 2):
        s = moves[:k]
        found.update(s + (m,) for m in g.extensions(s) if labels[m] == P)
    return CounterStrategy(g, found)


def is_winning_by_enumeration(g: Game, sigma: Strategy) -> bool:
    return all(play_out(g, sigma, tau).loser == O for tau in counter_strategies(g))


def wins(g: Game, f: HistoryFreeFunction) -> bool:
    """``is_winning(g, induce(g, f))`` without materialising the strategy."""
    labels = g.labels
    o_moves = [m for m in g.moves if labels[m] == O]
    seen = set()
    stack = [g.start()]
    while stack:
        state = stack.pop()
        for m in o_moves:
            st = g.step(state, m)
            if st is None:
                continue
            p = f.mapping.get(m)
            if p is None:
                return False
            st2 = g.step(st, p)
            if st2 is None:
                return False
            if st2 not in seen:
                seen.add(st2)
                stack.append(st2)
    return True


# --- composition ----------------------------------------------------------

def lollipop_parts(g: Game) -> tuple[Game, Game]:
    ops = getattr(g, "operands", None)
    if not ops or ops[0] != "lollipop":
        raise ValueError("expected a game built with lollipop")
    return ops[1], ops[2]


def compose_sets(sigma: Strategy, tau: Strategy) -> Strategy:
    """sigma;tau by search over interaction sequences, hiding the middle game."""
    a, b = lollipop_parts(sigma.game)
    b2, c = lollipop_parts(tau.game)
    if b is not b2 and b != b2:
        raise ValueError("middle games differ")
    target = lollipop(a, c)
    sp, tp = sigma.positions, tau.positions
    a_moves = [("A", m) for m in a.moves]
    b_moves = [("B", m) for m in b.moves]
    c_moves = [("C", m) for m in c.moves]
    result = {()}
    start = ((), (), (), None)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for left, right, out, last in frontier:
            for comp, m in a_moves + b_moves + c_moves:
                if {comp, last} == {"A", "C"}:
                    continue
                nl, nr, no = left, right, out
                if comp == "A":
                    nl = left + ("1." + m,)
                    no = out + ("1." + m,)
                    if nl not in sp:
                        continue
                elif comp == "C":
                    nr = right + ("2." + m,)
                    no = out + ("2." + m,)
                    if nr not in tp:
                        continue
                else:
                    nl = left + ("2." + m,)
                    nr = right + ("1." + m,)
                    if nl not in sp or nr not in tp:
                        continue
                key = (nl, nr, no, comp)
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
                    result.add(no)
        frontier = nxt
    composite = Strategy(target, result)
    problems = validate_strategy(target, composite)
    if problems:
        raise NonStrategyResult(problems)
    return composite


def compose_exec(f: HistoryFreeFunction, g: HistoryFreeFunction) -> HistoryFreeFunction:
    """Execution formula: bounce each external O-move between f and g until it exits."""
    a, b = lollipop_parts(f.game)
    b2, c = lollipop_parts(g.game)
    if b is not b2 and dict(b.labels) != dict(b2.labels):
        raise ValueError("middle games differ")
    target = lollipop(a, c)
    h = {}
    for move in target.o_moves():
        side, m = ("f", move) if move.startswith("1.") else ("g", move)
        trace = []
        visited = set()
        while True:
            if (side, m) in visited:
                raise ChatteringDivergence(trace + [(side, m)])
            visited.add((side, m))
            trace.append((side, m))
            out = (f if side == "f" else g)(m)
            if out is None:
                break
            if side == "f":
                if out.startswith("1."):
                    h[move] = out
                    break
                side, m = "g", "1." + out[2:]
            else:
                if out.startswith("2."):
                    h[move] = out
                    break
                side, m = "f", "2." + out[2:]
    return HistoryFreeFunction(target, h)


# --- copycat and the structural morphisms ---------------------------------

def copycat_function(g: Game) -> HistoryFreeFunction:
    mapping = {}
    for m, lab in g.labels.items():
        if lab == O:
            mapping["2." + m] = "1." + m
        else:
            mapping["1." + m] = "2." + m
    return HistoryFreeFunction(lollipop(g, g), mapping)


def copycat(g: Game) -> Strategy:
    f = copycat_function(g)
    return induce(f.game, f)


def _retag(prefix_map: Sequence[tuple[str, str]], move: str) -> str:
    for old, new in prefix_map:
        if move.startswith(old):
            return new + move[len(old):]
    raise ValueError(f"no retagging rule for {move!r}")


def tensor_hf(f: HistoryFreeFunction, f2: HistoryFreeFunction) -> HistoryFreeFunction:
    """f (x) f2 on (A (x) A') -o (B (x) B')."""
    a, b = lollipop_parts(f.game)
    a2, b2 = lollipop_parts(f2.game)
    game = lollipop(tensor(a, a2), tensor(b, b2))
    into_f = [("1.", "1.1."), ("2.", "2.1.")]
    into_f2 = [("1.", "1.2."), ("2.", "2.2.")]
    mapping = {}
    for o, p in f.mapping.items():
        mapping[_retag(into_f, o)] = _retag(into_f, p)
    for o, p in f2.mapping.items():
        mapping[_retag(into_f2, o)] = _retag(into_f2, p)
    return HistoryFreeFunction(game, mapping)


def iso_function(src: Game, tgt: Game, beta: Mapping[str, str]) -> HistoryFreeFunction:
    """Copycat on src -o tgt along the move bijection ``beta``."""
    game = lollipop(src, tgt)
    if sorted(beta) != src.moves or sorted(beta.values()) != tgt.moves:
        raise ValueError("beta is not a bijection between the move sets")
    mapping = {}
    for m, n in beta.items():
        left, right = "1." + m, "2." + n
        if game.labels[left] == game.labels[right]:
            raise ValueError(f"{m} and {n} carry different labels")
        if game.labels[left] == O:
            mapping[left] = right
        else:
            mapping[right] = left
    return HistoryFreeFunction(game, mapping)


def apply_hf(a: Game, b: Game) -> HistoryFreeFunction:
    """Application on ((A -o B) (x) A) -o B."""
    game = lollipop(tensor(lollipop(a, b), a), b)
    mapping = {}
    pairs = [("2." + m, "1.1.2." + m) for m in b.moves]
    pairs += [("1.1.1." + m, "1.2." + m) for m in a.moves]
    for x, y in pairs:
        if game.labels[x] == O:
            mapping[x] = y
        else:
            mapping[y] = x
    return HistoryFreeFunction(game, mapping)


_CURRY = [("1.1.", "1."), ("1.2.", "2.1."), ("2.", "2.2.")]
_UNCURRY = [("1.", "1.1."), ("2.1.", "1.2."), ("2.2.", "2.")]


def curry_hf(f: HistoryFreeFunction) -> HistoryFreeFunction:
    """(A (x) B) -o C  to  A -o (B -o C), by retagging."""
    left, c = lollipop_parts(f.game)
    ops = getattr(left, "operands", None)
    if not ops or ops[0] != "tensor":
        raise ValueError("expected a function on (A (x) B) -o C")
    a, b = ops[1], ops[2]
    game = lollipop(a, lollipop(b, c))
    return HistoryFreeFunction(
        game, {_retag(_CURRY, o): _retag(_CURRY, p) for o, p in f.mapping.items()})


def uncurry_hf(f: HistoryFreeFunction) -> HistoryFreeFunction:
    a, right = lollipop_parts(f.game)
    b, c = lollipop_parts(right)
    game = lollipop(tensor(a, b), c)
    return HistoryFreeFunction(
        game, {_retag(_UNCURRY, o): _retag(_UNCURRY, p) for o, p in f.mapping.items()})


def structural_iso(kind: str, *games: Game, inverse: bool = False) -> HistoryFreeFunction:
    """assoc(A,B,C), symm(A,B), unit_l(A), unit_r(A) or dual_intro(A) as copycats."""
    arity = {"assoc": 3, "symm": 2, "unit_l": 1, "unit_r": 1, "dual_intro": 1}
    if kind not in arity:
        raise ValueError(f"unknown isomorphism {kind!r}")
    if len(games) != arity[kind]:
        raise ValueError(f"{kind} takes {arity[kind]} game(s)")
    if kind == "assoc":
        a, b, c = games
        src, tgt = tensor(tensor(a, b), c), tensor(a, tensor(b, c))
        rules = [("1.1.", "1."), ("1.2.", "2.1."), ("2.", "2.2.")]
    elif kind == "symm":
        a, b = games
        src, tgt = tensor(a, b), tensor(b, a)
        rules = [("1.", "2."), ("2.", "1.")]
    elif kind == "unit_l":
        (a,) = games
        src, tgt = tensor(unit(), a), a
        rules = [("2.", "")]
    elif kind == "unit_r":
        (a,) = games
        src, tgt = tensor(a, unit()), a
        rules = [("1.", "")]
    else:
        (a,) = games
        src, tgt = lollipop(a, unit()), dual(a)
        rules = [("1.", "")]
    beta = {m: _retag(rules, m) for m in src.moves}
    if inverse:
        return iso_function(tgt, src, {v: k for k, v in beta.items()})
    return iso_function(src, tgt, beta)
