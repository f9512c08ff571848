"""Deciding whether a linking denotes a winning strategy, by the reduction to simple sequents.

``full_check`` gives every axiom link its own atom, rewrites the resulting
binary sequent into simple ones (literals and tensors of two literals) and
looks for a cycle in each.  A cycle yields an explicit instantiation and an
Opponent play that leaves Player without a legal answer.

``semantic_oracle`` is the independent check: it plays the denoted strategy
against every assignment from a small catalog of games.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .formula import Lit, Par, Sequent, Tensor, literal_occurrences
from .game import (
    BUILTIN_GAMES, Game, builtin_game, sum_games,
    to_document, unit,
)
from .proofnet import (
    Linking, ProofStructure, binary_relabel, build_graph, find_cycle,
)
from .semantics import denote
from .strategy import Play, wins

__all__ = [
    "Valid", "Invalid", "Verdict", "NotBinary", "NotSimple",
    "simplify_to_simple", "is_simple", "check_simple", "full_check",
    "semantic_oracle", "lift_instantiation", "verdict_document",
]


class NotBinary(ValueError):
    pass


class NotSimple(ValueError):
    pass


@dataclass(frozen=True)
class Valid:
    sequent: Sequent
    linking: Linking
    simple: tuple = ()  # simple sequents checked, each acyclic
    ok = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Invalid:
    sequent: Sequent            # the simple sequent carrying the cycle
    cycle: tuple                # closed node path
    instantiation: Mapping[str, Game]
    play: Play
    source: Optional[Sequent] = None   # the binary sequent it came from
    names: Mapping[str, str] = field(default_factory=dict)  # atom -> game name
    ok = False

    def __bool__(self):
        return False

    def describe_cycle(self) -> str:
        return " - ".join(str(n) for n in self.cycle)


Verdict = Union[Valid, Invalid]


# --- binary sequents and the rewriting ------------------------------------

def _check_binary(s: Sequent) -> None:
    count = {}
    for o in literal_occurrences(s):
        count.setdefault(o.atom, [0, 0])[o.negated] += 1
    bad = [a for a, c in count.items() if c != [1, 1]]
    if bad:
        raise NotBinary(f"atom(s) {', '.join(sorted(bad))} do not occur exactly once with each sign")


def _rewrite(f) -> Optional[list]:
    """Rewrite the innermost-leftmost redex of ``f``; None if there is none."""
    if isinstance(f, Lit):
        return None
    for k, child in enumerate((f.left, f.right)):
        sub = _rewrite(child)
        if sub is not None:
            return [type(f)(r, f.right) if k == 0 else type(f)(f.left, r) for r in sub]
    if not isinstance(f, Tensor):
        return None
    if not isinstance(f.right, Lit):
        a, inner, mirrored = f.left, f.right, False
    elif not isinstance(f.left, Lit):
        a, inner, mirrored = f.right, f.left, True
    else:
        return None
    b, c = inner.left, inner.right

    def t(x, y):
        return Tensor(y, x) if mirrored else Tensor(x, y)

    if isinstance(inner, Par):
        # A (x) (B | C)  ~>  (A (x) B) | C  and  (A (x) C) | B
        return [Par(t(a, b), c), Par(t(a, c), b)]
    # A (x) (B (x) C)  ~>  A (x) (B | C)  and  A | (B (x) C)
    return [t(a, Par(b, c)), Par(a, inner) if not mirrored else Par(inner, a)]


def _split_pars(formulas) -> tuple:
    out = []
    for f in formulas:
        if isinstance(f, Par):
            out.extend(_split_pars((f.left, f.right)))
        else:
            out.append(f)
    return tuple(out)


def simplify_to_simple(b: Sequent) -> list[Sequent]:
    """Rewrite a binary sequent into simple binary sequents, preserving provability."""
    _check_binary(b)
    done = []
    work = [_split_pars(b.formulas)]
    while work:
        formulas = work.pop(0)
        for k, f in enumerate(formulas):
            sub = _rewrite(f)
            if sub is not None:
                work[:0] = [_split_pars(formulas[:k] + (r,) + formulas[k + 1:]) for r in sub]
                break
        else:
            done.append(Sequent(formulas))
    return done


def is_simple(s: Sequent) -> bool:
    for f in s.formulas:
        if isinstance(f, Tensor):
            if not (isinstance(f.left, Lit) and isinstance(f.right, Lit)):
                return False
        elif not isinstance(f, Lit):
            return False
    return True


def _unique_linking(s: Sequent) -> Linking:
    where = {}
    for o in literal_occurrences(s):
        where.setdefault(o.atom, []).append(o.index)
    return Linking(tuple(v) for v in where.values())


def check_simple(s: Sequent) -> Verdict:
    """Valid if the unique structure is acyclic, otherwise a defeating play."""
    try:
        _check_binary(s)
    except NotBinary as exc:
        raise NotSimple(str(exc)) from None
    if not is_simple(s):
        raise NotSimple(f"{s} has a formula that is neither a literal nor a tensor of two literals")
    phi = _unique_linking(s)
    ps = ProofStructure(s, phi)
    cycle = find_cycle(build_graph(ps, {}))
    if cycle is None:
        return Valid(s, phi, (s,))

    mate = {}
    counter = itertools.count(1)
    for f in s.formulas:
        if isinstance(f, Lit):
            next(counter)
        else:
            i, j = next(counter), next(counter)
            mate[i], mate[j] = j, i
    link = phi.as_map()

    # c[0] = x, c[1] = mate(x), c[2] = link(c[1]), ... , c[-1] = link(x)
    x = min(n for n in cycle if isinstance(n, int))
    c = [x]
    while True:
        c.append(mate[c[-1]])
        nxt = link[c[-1]]
        if nxt == x:
            break
        c.append(nxt)
    n = len(c) // 2
    # Opponent plays at odd positions of the walk, Player copies along the links
    occ = literal_occurrences(s)
    names = {a: "unit" for a in s.atoms}
    for k in range(1, 2 * n, 2):
        o = occ[c[k] - 1]
        names[o.atom] = "Bdual" if o.negated else "B"
    instantiation = {a: builtin_game(g) for a, g in names.items()}
    moves = [f"{c[2 * n - 1]}.b"]
    for k in range(n - 1):
        moves += [f"{c[2 * k]}.b", f"{c[2 * k + 1]}.b"]
    return Invalid(s, tuple(cycle), instantiation, Play(tuple(moves), "P"), names=names)


def full_check(s: Sequent, phi: Linking) -> Verdict:
    """Valid iff every simple sequent reached from the binary form is acyclic."""
    ps = ProofStructure(s, phi)
    binary = binary_relabel(ps)
    checked = []
    for simple in simplify_to_simple(binary):
        verdict = check_simple(simple)
        if not verdict:
            return Invalid(verdict.sequent, verdict.cycle, verdict.instantiation,
                           verdict.play, source=binary, names=verdict.names)
        checked.append(simple)
    return Valid(s, phi, tuple(checked))


def lift_instantiation(ps: ProofStructure, verdict: Invalid) -> dict:
    """Carry a per-link instantiation back to the atoms of ``ps`` through disjoint unions."""
    binary = binary_relabel(ps)
    original = literal_occurrences(ps.sequent)
    fresh = literal_occurrences(binary)
    per_atom = {}
    for o, f in zip(original, fresh):
        if not o.negated:
            per_atom.setdefault(o.atom, []).append(f.atom)
    return {a: sum_games(*(verdict.instantiation.get(k, unit()) for k in links))
            for a, links in per_atom.items()}


def semantic_oracle(s: Sequent, phi: Linking, catalog=BUILTIN_GAMES,
                    verdict: Optional[Verdict] = None) -> bool:
    """Is the denoted strategy winning at every catalog assignment and at the
    counterexample instantiation, if ``full_check`` produced one?"""
    ps = ProofStructure(s, phi)
    games = [builtin_game(name) for name in catalog]
    for combo in itertools.product(games, repeat=len(s.atoms)):
        f = denote(ps, dict(zip(s.atoms, combo)))
        if not wins(f.game, f):
            return False
    if verdict is None:
        verdict = full_check(s, phi)
    if not verdict:
        f = denote(ps, lift_instantiation(ps, verdict))
        if not wins(f.game, f):
            return False
    return True


def verdict_document(v: Verdict) -> dict:
    if v:
        return {
            "verdict": "valid",
            "sequent": str(v.sequent),
            "linking": str(v.linking),
            "simple_sequents": [{"sequent": str(x), "acyclic": True} for x in v.simple],
        }
    return {
        "verdict": "invalid",
        "binary_sequent": str(v.source) if v.source else None,
        "simple_sequent": str(v.sequent),
        "cycle": [str(n) for n in v.cycle],
        "instantiation": {a: v.names.get(a) or to_document(g) for a, g in v.instantiation.items()},
        "play": [{"move": m, "by": "O" if k % 2 == 0 else "P"} for k, m in enumerate(v.play.moves)],
        "loser": v.play.loser,
    }
