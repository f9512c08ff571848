"""Proof structures for MLL+MIX: linkings, switchings and the acyclicity test."""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Optional, Union

from .formula import Lit, Sequent, Tensor, literal_occurrences

__all__ = [
    "Linking", "ProofStructure", "Node", "FormationGraph", "NetCheck",
    "InvalidLinking", "SwitchingMismatch", "parse_linking",
    "enumerate_linkings", "connective_nodes", "par_nodes", "switchings",
    "build_graph", "is_proof_net", "binary_relabel", "prove", "find_cycle",
]


class InvalidLinking(ValueError):
    pass


class SwitchingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Linking:
    """Axiom links as unordered pairs of 1-based occurrence indices."""
    pairs: frozenset

    def __init__(self, pairs):
        norm = frozenset(tuple(sorted(p)) for p in pairs)
        object.__setattr__(self, "pairs", norm)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def as_map(self) -> dict[int, int]:
        phi = {}
        for i, j in self.pairs:
            phi[i] = j
            phi[j] = i
        return phi

    def __call__(self, i: int) -> int:
        return self.as_map()[i]

    def __str__(self):
        return ",".join(f"{i}-{j}" for i, j in self.sorted_pairs())

    def __lt__(self, other):
        return self.sorted_pairs() < other.sorted_pairs()

    def validate(self, s: Sequent) -> None:
        occ = literal_occurrences(s)
        n = len(occ)
        seen = [i for p in self.pairs for i in p]
        if len(seen) != len(set(seen)):
            raise InvalidLinking(f"occurrence used twice in {self}")
        if sorted(seen) != list(range(1, n + 1)):
            raise InvalidLinking(f"linking {self} does not cover occurrences 1..{n}")
        for i, j in self.pairs:
            a, b = occ[i - 1], occ[j - 1]
            if i == j or a.atom != b.atom or a.negated == b.negated:
                raise InvalidLinking(f"{i}-{j} does not join dual literals")


def parse_linking(text: str) -> Linking:
    """Parse ``"1-4,2-3"``."""
    pairs = []
    for chunk in text.replace(" ", "").split(","):
        if not chunk:
            continue
        try:
            i, j = chunk.split("-")
            pairs.append((int(i), int(j)))
        except ValueError:
            raise InvalidLinking(f"bad link {chunk!r}; expected i-j pairs like 1-4,2-3") from None
    return Linking(pairs)


@dataclass(frozen=True)
class ProofStructure:
    sequent: Sequent
    linking: Linking

    def __post_init__(self):
        self.linking.validate(self.sequent)


class Node(NamedTuple):
    """A connective node: formula number (1-based) and L/R path from its root."""
    kind: str
    formula: int
    path: str

    def __str__(self):
        where = f"{self.formula}" + (f".{self.path}" if self.path else "")
        return f"{self.kind}[{where}]"


GraphNode = Union[Node, int]


def _walk(s: Sequent):
    """Yield (node, children) in preorder; leaves are occurrence indices."""
    counter = itertools.count(1)
    out = []

    def rec(f, k, path):
        if isinstance(f, Lit):
            return next(counter)
        kind = "tensor" if isinstance(f, Tensor) else "par"
        node = Node(kind, k, path)
        slot = len(out)
        out.append(None)
        left = rec(f.left, k, path + "L")
        right = rec(f.right, k, path + "R")
        out[slot] = (node, left, right)
        return node

    roots = [rec(f, k, "") for k, f in enumerate(s.formulas, start=1)]
    return out, roots


def connective_nodes(s: Sequent) -> list[Node]:
    return [n for n, _, _ in _walk(s)[0]]


def par_nodes(s: Sequent) -> list[Node]:
    return [n for n in connective_nodes(s) if n.kind == "par"]


def switchings(s: Sequent) -> Iterator[dict[Node, str]]:
    """All switchings, lexicographic with L before R over pars in preorder."""
    pars = par_nodes(s)
    for choice in itertools.product("LR", repeat=len(pars)):
        yield dict(zip(pars, choice))


@dataclass(frozen=True)
class FormationGraph:
    nodes: tuple
    edges: tuple  # (u, v, kind) with kind "tree" or "axiom"

    def edge_set(self) -> set[frozenset]:
        return {frozenset((u, v)) for u, v, _ in self.edges}


def build_graph(ps: ProofStructure, sw: Mapping[Node, str]) -> FormationGraph:
    table, _ = _walk(ps.sequent)
    pars = {n for n, _, _ in table if n.kind == "par"}
    if set(sw) != pars:
        raise SwitchingMismatch(
            f"switching covers {sorted(map(str, sw))}, sequent has pars {sorted(map(str, pars))}")
    nodes = [n for n, _, _ in table] + list(range(1, len(literal_occurrences(ps.sequent)) + 1))
    edges = []
    for node, left, right in table:
        if node.kind == "tensor":
            edges += [(node, left, "tree"), (node, right, "tree")]
        else:
            side = sw[node]
            if side not in ("L", "R"):
                raise SwitchingMismatch(f"switch value {side!r} for {node}")
            edges.append((node, left if side == "L" else right, "tree"))
    edges += [(i, j, "axiom") for i, j in ps.linking.sorted_pairs()]
    return FormationGraph(tuple(nodes), tuple(edges))


def find_cycle(graph: FormationGraph) -> Optional[list]:
    """A cycle as a closed node path (first node repeated at the end), or None."""
    parent = {n: n for n in graph.nodes}
    adj = {n: [] for n in graph.nodes}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in graph.edges:
        ru, rv = root(u), root(v)
        if ru == rv:
            path = _forest_path(adj, v, u)
            return _normalise_cycle(graph.nodes, path)
        parent[ru] = rv
        adj[u].append(v)
        adj[v].append(u)
    return None


def _forest_path(adj, src, dst) -> list:
    prev = {src: None}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in prev:
                    prev[y] = x
                    nxt.append(y)
        frontier = nxt
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path


def _normalise_cycle(order, path: list) -> list:
    # start at the earliest node (connectives in preorder, then leaves),
    # heading towards the earlier of its two neighbours
    rank = {n: k for k, n in enumerate(order)}
    k = min(range(len(path)), key=lambda i: rank[path[i]])
    cyc = path[k:] + path[:k]
    if len(cyc) > 2 and rank[cyc[-1]] < rank[cyc[1]]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc + [cyc[0]]


@dataclass(frozen=True)
class NetCheck:
    """Outcome of the switching test; truthy when the structure is a net."""
    ok: bool
    switching: Optional[dict] = None
    cycle: Optional[list] = None
    checked: int = 0

    def __bool__(self):
        return self.ok

    def describe_cycle(self) -> str:
        return " - ".join(str(n) for n in self.cycle) if self.cycle else ""


class _Compiled:
    """Integer-coded formation trees for the inner switching loop."""

    def __init__(self, s: Sequent):
        table, _ = _walk(s)
        self.n_leaves = len(literal_occurrences(s))
        self.nodes = [n for n, _, _ in table] + list(range(1, self.n_leaves + 1))
        index = {n: k for k, n in enumerate(self.nodes)}
        self.fixed = []
        self.par_choices = []
        for node, left, right in table:
            if node.kind == "tensor":
                self.fixed += [(index[node], index[left]), (index[node], index[right])]
            else:
                self.par_choices.append(((index[node], index[left]), (index[node], index[right])))
        self.index = index


def _has_cycle(n: int, edges) -> bool:
    parent = list(range(n))
    for u, v in edges:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u == v:
            return True
        parent[u] = v
    return False


def is_proof_net(ps: ProofStructure) -> NetCheck:
    """Exhaustive switching test; on failure, witness the first bad switching."""
    comp = _Compiled(ps.sequent)
    axioms = [(comp.index[i], comp.index[j]) for i, j in ps.linking.sorted_pairs()]
    base = comp.fixed + axioms
    n = len(comp.nodes)
    count = 0
    for choice in itertools.product((0, 1), repeat=len(comp.par_choices)):
        count += 1
        edges = base + [opts[c] for opts, c in zip(comp.par_choices, choice)]
        if _has_cycle(n, edges):
            pars = [comp.nodes[opts[0][0]] for opts in comp.par_choices]
            sw = {p: "LR"[c] for p, c in zip(pars, choice)}
            cycle = find_cycle(build_graph(ps, sw))
            return NetCheck(False, sw, cycle, count)
    return NetCheck(True, checked=count)


def enumerate_linkings(s: Sequent) -> list[Linking]:
    """Every perfect matching of dual literal occurrences, sorted."""
    occ = literal_occurrences(s)
    per_atom = {}
    for o in occ:
        neg, pos = per_atom.setdefault(o.atom, ([], []))
        (neg if o.negated else pos).append(o.index)
    choices = []
    for neg, pos in per_atom.values():
        if len(neg) != len(pos):
            return []
        choices.append([list(zip(neg, perm)) for perm in itertools.permutations(pos)])
    result = [Linking([p for part in combo for p in part])
              for combo in itertools.product(*choices)]
    return sorted(result, key=Linking.sorted_pairs)


def fresh_atoms() -> Iterator[str]:
    yield from string.ascii_lowercase
    for k in itertools.count(1):
        for c in string.ascii_lowercase:
            yield f"{c}{k}"


def binary_relabel(ps: ProofStructure) -> Sequent:
    """Give every axiom link its own atom, keeping signs and tree shape."""
    names = fresh_atoms()
    atom_of = {}
    for i, j in ps.linking.sorted_pairs():
        atom_of[i] = atom_of[j] = next(names)
    counter = itertools.count(1)

    def rec(f):
        if isinstance(f, Lit):
            return Lit(atom_of[next(counter)], f.negated)
        return type(f)(rec(f.left), rec(f.right))

    return Sequent(tuple(rec(f) for f in ps.sequent.formulas))


def prove(s: Sequent) -> list[Linking]:
    """All linkings of ``s`` that pass the acyclicity test."""
    return [lk for lk in enumerate_linkings(s) if is_proof_net(ProofStructure(s, lk))]
