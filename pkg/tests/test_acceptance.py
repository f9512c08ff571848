"""Acceptance criteria, one test each.

Every test records a single ``[PASS]`` / ``[FAIL]`` line before asserting;
conftest prints them in the terminal summary.  Running this file directly
with ``python tests/test_acceptance.py`` prints the same lines as it goes.
"""
import itertools
import sys
import time

from mllgames.completeness import full_check, semantic_oracle
from mllgames.formula import (
    BINARY_POLARITY, UNARY_POLARITY, Dual, Lit, Lollipop, OfCourse, Par,
    Tensor, WhyNot, parse_sequent, polarity,
)
from mllgames.game import (
    BUILTIN_GAMES, builtin_game, combine, dual, game_B, game_C, game_polarity,
    lollipop, par, polarized_instance, tensor,
)
from mllgames.proofnet import (
    Node, ProofStructure, build_graph, enumerate_linkings, is_proof_net,
    parse_linking,
)
from mllgames.semantics import (
    NotLinkingForm, denote, extract_linking, schema_of,
)
from mllgames.strategy import (
    ChatteringDivergence, NotHistoryFree, apply_hf, canonical_function,
    compose_exec, compose_sets, copycat, copycat_function, counter_from_play,
    curry_hf, enumerate_strategies, induce, is_winning,
    is_winning_by_enumeration, play_out, structural_iso, tensor_hf,
    uncurry_hf, validate_strategy,
)

try:
    from conftest import structure_corpus
except ImportError:  # pragma: no cover - direct execution from elsewhere
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    from conftest import structure_corpus


RESULTS = []


def report(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    RESULTS.append(line)
    if __name__ == "__main__":
        print(line, flush=True)
    return ok


def catalog():
    return [builtin_game(n) for n in BUILTIN_GAMES]


# 1 -------------------------------------------------------------------------

def test_criterion_1_corpus_equivalence():
    start = time.time()
    disagreements = []
    nets = 0
    pairs = structure_corpus()
    for s, lk in pairs:
        net = bool(is_proof_net(ProofStructure(s, lk)))
        verdict = full_check(s, lk)
        oracle = semantic_oracle(s, lk, verdict=verdict)
        nets += net
        if not (net == bool(verdict) == oracle):
            disagreements.append((str(s), str(lk), net, bool(verdict), oracle))
    ok = not disagreements
    report(1, ok, f"{len(pairs)} structures ({nets} nets), "
                  f"{len(disagreements)} disagreements, {time.time() - start:.0f}s")
    assert ok, disagreements[:5]


# 2 -------------------------------------------------------------------------

def test_criterion_2_soundness_on_catalog():
    games = catalog()
    checked = failures = 0
    for s, lk in structure_corpus():
        ps = ProofStructure(s, lk)
        if not is_proof_net(ps):
            continue
        for combo in itertools.product(games, repeat=len(s.atoms)):
            f = denote(ps, dict(zip(s.atoms, combo)))
            sigma = induce(f.game, f)
            checked += 1
            if validate_strategy(f.game, sigma) or not is_winning(f.game, sigma):
                failures += 1
    ok = failures == 0 and checked > 0
    report(2, ok, f"{checked} net instantiations, {failures} failures")
    assert ok


# 3 -------------------------------------------------------------------------

def _replays(verdict):
    g = verdict.sequent
    (lk,) = enumerate_linkings(g)
    f = denote(ProofStructure(g, lk), verdict.instantiation)
    sigma = induce(f.game, f)
    play = play_out(f.game, sigma, counter_from_play(f.game, verdict.play.moves))
    legal_p = [m for m in f.game.extensions(play.moves) if f.game.labels[m] == "P"]
    return (play.moves == verdict.play.moves and play.loser == "P"
            and len(play.moves) % 2 == 1 and not legal_p)


def test_criterion_3_counterexamples_self_certify():
    invalid = certified = 0
    for s, lk in structure_corpus():
        v = full_check(s, lk)
        if v:
            continue
        invalid += 1
        certified += _replays(v)
    ok = invalid > 0 and certified == invalid
    report(3, ok, f"{certified}/{invalid} invalid verdicts replay with Player stuck")
    assert ok


# 4 -------------------------------------------------------------------------

def _winning(a, b):
    g = lollipop(a, b)
    return [s for s in enumerate_strategies(g) if is_winning(g, s)]


def test_criterion_4_composition_coherence():
    b, c = game_B(), game_C()
    wide = catalog() + [tensor(b, dual(b)), par(c, b), tensor(c, dual(c))]
    narrow = catalog() + [tensor(b, dual(b))]
    problems = []
    pairs = triples = 0
    won = {}

    def W(i, j, games):
        key = (id(games), i, j)
        if key not in won:
            won[key] = _winning(games[i], games[j])
        return won[key]

    n = len(wide)
    for i, j, k in itertools.product(range(n), repeat=3):
        for s in W(i, j, wide):
            for t in W(j, k, wide):
                pairs += 1
                st = compose_sets(s, t)
                if not is_winning(st.game, st):
                    problems.append("composite not winning")
                try:
                    f, g = canonical_function(s.game, s), canonical_function(t.game, t)
                except NotHistoryFree:
                    continue
                try:
                    h = compose_exec(f, g)
                except ChatteringDivergence as exc:
                    problems.append(f"chattering: {exc}")
                    continue
                if induce(h.game, h) != st:
                    problems.append("execution formula differs from set composition")
    for i, j in itertools.product(range(n), repeat=2):
        for s in W(i, j, wide):
            if compose_sets(copycat(wide[i]), s) != s or compose_sets(s, copycat(wide[j])) != s:
                problems.append("identity law")
    m = len(narrow)
    for i, j, k, l in itertools.product(range(m), repeat=4):
        for s in W(i, j, narrow):
            for t in W(j, k, narrow):
                st = compose_sets(s, t)
                for u in W(k, l, narrow):
                    triples += 1
                    if compose_sets(st, u) != compose_sets(s, compose_sets(t, u)):
                        problems.append("associativity")
    ok = not problems
    report(4, ok, f"{pairs} composable pairs, {triples} triples, {len(problems)} problems, "
                  f"no chattering" if ok else f"{len(problems)} problems")
    assert ok, problems[:5]


# 5 -------------------------------------------------------------------------

def test_criterion_5_star_autonomous():
    games = catalog()
    morphisms = problems = 0
    for a, b, c in itertools.product(games, repeat=3):
        g = lollipop(tensor(a, b), c)
        for sigma in enumerate_strategies(g):
            if not is_winning(g, sigma):
                continue
            try:
                f = canonical_function(g, sigma)
            except NotHistoryFree:
                continue
            morphisms += 1
            lam = curry_hf(f)
            if uncurry_hf(lam) != f or curry_hf(uncurry_hf(lam)) != lam:
                problems += 1
            beta = compose_exec(tensor_hf(lam, copycat_function(b)), apply_hf(b, c))
            if beta != f:
                problems += 1
    isos = 0
    arities = {"assoc": 3, "symm": 2, "unit_l": 1, "unit_r": 1, "dual_intro": 1}
    for kind, k in arities.items():
        for gs in itertools.product(games, repeat=k):
            f = structural_iso(kind, *gs)
            g = structural_iso(kind, *gs, inverse=True)
            src, tgt = f.game.operands[1], f.game.operands[2]
            isos += 1
            if compose_exec(f, g) != copycat_function(src):
                problems += 1
            if compose_exec(g, f) != copycat_function(tgt):
                problems += 1
            if compose_sets(induce(f.game, f), induce(g.game, g)) != copycat(src):
                problems += 1
    ok = problems == 0 and morphisms > 0
    report(5, ok, f"beta and curry round trip on {morphisms} morphisms, "
                  f"{isos} isomorphisms, {problems} problems")
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_extraction():
    mismatches = 0
    pairs = structure_corpus()
    for s, lk in pairs:
        if extract_linking(s, schema_of(ProofStructure(s, lk))) != lk:
            mismatches += 1

    s = parse_sequent("a^, a, a^, a")
    honest = schema_of(ProofStructure(s, parse_linking("1-2,3-4")))

    def same_sign(assignment):
        m = dict(honest(assignment).mapping)
        m["1.b"] = "3.b"
        return m.get

    def not_involutive(assignment):
        m = dict(honest(assignment).mapping)
        if "2.b'" in m:
            m["2.b'"] = "3.b'"
        return m.get

    def move_dependent(assignment):
        m = dict(honest(assignment).mapping)
        if "1.a'" in m:
            m["1.a'"] = "4.a'"
        return m.get

    def silent(assignment):
        return {}.get

    rejected = 0
    for bad in (same_sign, not_involutive, move_dependent, silent):
        try:
            extract_linking(s, bad)
        except NotLinkingForm:
            rejected += 1
    ok = mismatches == 0 and rejected == 4
    report(6, ok, f"{len(pairs) - mismatches}/{len(pairs)} linkings recovered, "
                  f"{rejected}/4 non-uniform schemas rejected")
    assert ok


# 7 -------------------------------------------------------------------------

# transcription of the tables: rows (left, right) -> tensor, par, lollipop, with, plus
TABLE_BINARY = {
    (+1, +1): (+1, +1, 0, +1, +1), (+1, 0): (0, 0, 0, 0, 0), (+1, -1): (0, 0, -1, 0, 0),
    (0, +1): (0, 0, 0, 0, 0), (0, 0): (0, 0, 0, 0, 0), (0, -1): (0, 0, 0, 0, 0),
    (-1, +1): (0, 0, +1, 0, 0), (-1, 0): (0, 0, 0, 0, 0), (-1, -1): (-1, -1, 0, -1, -1),
}
TABLE_UNARY = {+1: (-1, +1, -1), 0: (-1, +1, 0), -1: (-1, +1, +1)}


def _exponential_shapes(depth):
    leaves = [OfCourse(Lit("a")), WhyNot(Lit("a")), OfCourse(Lit("b")), WhyNot(Lit("b"))]
    if depth == 0:
        return leaves
    smaller = _exponential_shapes(depth - 1)
    out = list(smaller)
    for x, y in itertools.product(smaller, repeat=2):
        out += [Tensor(x, y), Par(x, y), Lollipop(x, y)]
    out += [Dual(x) for x in smaller]
    return out


def test_criterion_7_polarity():
    rows = 0
    wit = {+1: WhyNot(Lit("a")), 0: Lit("a"), -1: OfCourse(Lit("a"))}
    for (x, y), expected in TABLE_BINARY.items():
        from mllgames.formula import Plus, With
        got = tuple(polarity(k(wit[x], wit[y])) for k in (Tensor, Par, Lollipop, With, Plus))
        rows += got == expected == BINARY_POLARITY[x, y]
    for x, expected in TABLE_UNARY.items():
        got = tuple(polarity(k(wit[x])) for k in (OfCourse, WhyNot, Dual))
        rows += got == expected == UNARY_POLARITY[x]
    compared = agree = 0
    for f in _exponential_shapes(1):
        gp = game_polarity(polarized_instance(f))
        if gp.empty:
            continue
        compared += 1
        agree += int(gp) == polarity(f)
    ok = rows == 12 and compared == agree and compared > 0
    report(7, ok, f"{rows}/12 table rows match, game polarity agrees on {agree}/{compared} formulas")
    assert ok


# 8 -------------------------------------------------------------------------

def _cycle_schema(n):
    atoms = [f"a{k}" for k in range(1, n + 1)]
    text = ", ".join(f"{atoms[k]}^ * {atoms[(k + 1) % n]}" for k in range(n))
    return parse_sequent(text)


def test_criterion_8_golden_examples():
    checks = []
    ps = ProofStructure(parse_sequent("a^ | a^, a * a"), parse_linking("1-4,2-3"))
    par_node, tens = Node("par", 1, ""), Node("tensor", 2, "")
    edges = build_graph(ps, {par_node: "L"}).edge_set()
    checks.append(bool(is_proof_net(ps)))
    checks.append(edges == {frozenset(e) for e in
                            [(par_node, 1), (tens, 3), (tens, 4), (1, 4), (2, 3)]})
    plays = []
    for n in (2, 3):
        s = _cycle_schema(n)
        (lk,) = enumerate_linkings(s)
        v = full_check(s, lk)
        checks.append(not v and len(v.play.moves) == 2 * n - 1)
        (blk,) = enumerate_linkings(v.sequent)
        f = denote(ProofStructure(v.sequent, blk), v.instantiation)
        labels = [f.game.labels[m] for m in v.play.moves]
        checks.append(labels == ["O", "P"] * (n - 1) + ["O"])
        # Opponent opens in the mate of literal 1, Player copies into 1, ...
        phi = lk.as_map()
        checks.append(v.play.moves[0] == f"{phi[1]}.b" and v.play.moves[1] == "1.b")
        checks.append(_replays(v))
        plays.append(" ".join(v.play.moves))
    ok = all(checks)
    report(8, ok, f"net and switching graph reproduced; cycle plays {plays[0]!r} / {plays[1]!r}")
    assert ok


# 9 -------------------------------------------------------------------------

def test_criterion_9_winning_checks_agree():
    base = catalog()
    games = list(base)
    for a, b in itertools.product(base, repeat=2):
        for kind in ("tensor", "par", "lollipop"):
            games.append(combine(kind, a, b))
    strategies = disagreements = invalid = 0
    for g in games:
        for sigma in enumerate_strategies(g):
            if validate_strategy(g, sigma):
                invalid += 1
                continue
            strategies += 1
            if is_winning(g, sigma) != is_winning_by_enumeration(g, sigma):
                disagreements += 1
    ok = disagreements == 0 and invalid == 0
    report(9, ok, f"{strategies} strategies on {len(games)} games, {disagreements} disagreements")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
