"""Proof structures as uniform history-free strategies, and the way back.

A uniform strategy is represented by its proof structure: at any
instantiation it copies each Opponent move in occurrence ``i`` to the same
move in occurrence ``phi(i)``.  Arbitrary families enter only as schemas,
i.e. callables from an assignment to a history-free function.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .formula import Sequent, literal_occurrences
from .game import O, P, Game, dual, game_B, game_C, instantiate, unit
from .proofnet import Linking, ProofStructure
from .strategy import HistoryFreeFunction

__all__ = [
    "UniformStrategy", "StrategySchema", "Embedding", "NotLinkingForm",
    "denote", "schema_of", "extract_linking", "check_embedding",
    "naturality_probe", "catalog_embeddings",
]

StrategySchema = Callable[[Mapping[str, Game]], HistoryFreeFunction]


class NotLinkingForm(ValueError):
    pass


@dataclass(frozen=True)
class UniformStrategy:
    structure: ProofStructure

    @property
    def sequent(self) -> Sequent:
        return self.structure.sequent

    @property
    def linking(self) -> Linking:
        return self.structure.linking


def denote(u, assignment: Mapping[str, Game]) -> HistoryFreeFunction:
    """The copy function of ``u`` on the instantiated game."""
    ps = u.structure if isinstance(u, UniformStrategy) else u
    game = instantiate(ps.sequent, assignment)
    phi = ps.linking.as_map()
    labels = game.labels
    mapping = {}
    for move, lab in labels.items():
        if lab != O:
            continue
        i, base = move.split(".", 1)
        target = f"{phi[int(i)]}.{base}"
        if labels.get(target) == P:
            mapping[move] = target
    return HistoryFreeFunction(game, mapping)


def schema_of(u) -> StrategySchema:
    return lambda assignment: denote(u, assignment)


def _probe_assignment(s: Sequent, i: int, positive: Game) -> dict:
    occ = literal_occurrences(s)[i - 1]
    assignment = {a: unit() for a in s.atoms}
    # occurrence i must see ``positive`` itself, whatever its sign
    assignment[occ.atom] = dual(positive) if occ.negated else positive
    return assignment


def _occurrence(move: str) -> tuple[int, str]:
    i, base = move.split(".", 1)
    return int(i), base


def extract_linking(s: Sequent, schema: StrategySchema) -> Linking:
    """Recover the axiom links a schema follows, probing with the games B and C.

    The schema may return any callable from moves to moves (or None), so
    that ill-formed oracles can be probed too.
    """
    occ = literal_occurrences(s)
    phi = {}
    for o in occ:
        i = o.index
        f = schema(_probe_assignment(s, i, game_B()))
        answer = f(f"{i}.b")
        if answer is None:
            raise NotLinkingForm(f"no answer to {i}.b")
        j, base = _occurrence(answer)
        if base != "b":
            raise NotLinkingForm(f"{i}.b answered with a different move {answer}")
        if j == i or j < 1 or j > len(occ):
            raise NotLinkingForm(f"{i}.b answered inside its own constituent")
        mate = occ[j - 1]
        if mate.atom != o.atom or mate.negated == o.negated:
            raise NotLinkingForm(f"{i}.b answered in {j}, which is not a dual literal")
        phi[i] = j
    for i, j in phi.items():
        if phi.get(j) != i:
            raise NotLinkingForm(f"not an involution: {i} -> {j} but {j} -> {phi.get(j)}")
        f = schema(_probe_assignment(s, i, game_C()))
        got = f(f"{i}.a'")
        if got != f"{j}.a'":
            raise NotLinkingForm(f"{i}.a' not copied to {j}.a' (got {got})")
        back = f(f"{j}.b'")
        if back != f"{i}.b'":
            raise NotLinkingForm(f"{j}.b' not copied to {i}.b' (got {back})")
    return Linking({tuple(sorted(p)) for p in phi.items()})


@dataclass(frozen=True)
class Embedding:
    source: Game
    target: Game
    mapping: Mapping[str, str]

    def __call__(self, move: str) -> str:
        return self.mapping[move]


def check_embedding(e: Embedding) -> list[str]:
    problems = []
    if sorted(e.mapping) != e.source.moves:
        problems.append("map is not total on the source moves")
    if len(set(e.mapping.values())) != len(e.mapping):
        problems.append("map is not one-to-one")
    for m, n in sorted(e.mapping.items()):
        if n not in e.target.labels:
            problems.append(f"{m} -> {n}: not a target move")
        elif e.source.labels.get(m) != e.target.labels[n]:
            problems.append(f"(e1) {m} -> {n} changes the label")
    if not problems:
        for s in e.source.positions:
            image = tuple(e.mapping[m] for m in s)
            if not e.target.is_position(image):
                problems.append(f"(e2) image of {'·'.join(s)} is not a position")
    return problems


def naturality_probe(s: Sequent, schema: StrategySchema,
                     embeddings: Mapping[str, Embedding]) -> bool:
    """Does the schema commute with the move maps induced by ``embeddings``?"""
    src = {a: e.source for a, e in embeddings.items()}
    tgt = {a: e.target for a, e in embeddings.items()}
    f_src, f_tgt = schema(src), schema(tgt)
    atom_of = {o.index: o.atom for o in literal_occurrences(s)}

    def lift(move):
        i, base = _occurrence(move)
        return f"{i}.{embeddings[atom_of[i]](base)}"

    for move in f_src.game.o_moves():
        out = f_src(move)
        image = f_tgt(lift(move))
        if (out is None) != (image is None):
            return False
        if out is not None and lift(out) != image:
            return False
    return True


def catalog_embeddings() -> list[Embedding]:
    """Identities on the probe games plus the embeddings of B into C and of duals."""
    games = [unit(), game_B(), dual(game_B()), game_C(), dual(game_C())]
    out = [Embedding(g, g, {m: m for m in g.moves}) for g in games]
    out += [Embedding(unit(), g, {}) for g in games[1:]]
    out.append(Embedding(game_B(), game_C(), {"b": "a'"}))
    out.append(Embedding(dual(game_B()), dual(game_C()), {"b": "a'"}))
    return out
