import pytest

from mllgames.completeness import (
    Invalid, NotBinary, NotSimple, Valid, check_simple, full_check, is_simple,
    lift_instantiation, semantic_oracle, simplify_to_simple, verdict_document,
)
from mllgames.formula import parse_sequent
from mllgames.proofnet import (
    ProofStructure, binary_relabel, enumerate_linkings, is_proof_net, parse_linking,
)
from mllgames.semantics import denote
from mllgames.strategy import counter_from_play, induce, play_out, wins


def _seqs(texts):
    return [str(s) for s in texts]


def test_simplify_examples():
    assert _seqs(simplify_to_simple(parse_sequent("a^ | b^, b * a"))) == ["a^, b^, b * a"]
    assert _seqs(simplify_to_simple(parse_sequent("a * (b | c), a^, b^, c^"))) == [
        "a * b, c, a^, b^, c^", "a * c, b, a^, b^, c^"]
    assert _seqs(simplify_to_simple(parse_sequent("a^, a"))) == ["a^, a"]


def test_simplify_tensor_of_tensor():
    out = simplify_to_simple(parse_sequent("a * (b * c), a^, b^, c^"))
    assert all(is_simple(s) for s in out)
    assert len(out) >= 2


def test_not_binary():
    with pytest.raises(NotBinary):
        simplify_to_simple(parse_sequent("a^, a, a"))


def test_check_simple_examples():
    assert isinstance(check_simple(parse_sequent("a^, b^, b * a")), Valid)
    assert isinstance(check_simple(parse_sequent("a^, a")), Valid)
    v = check_simple(parse_sequent("a^ * b, b^ * a"))
    assert isinstance(v, Invalid)
    assert len(v.cycle) - 1 == 6
    assert v.play.moves == ("4.b", "1.b", "2.b")
    assert v.play.loser == "P"


def test_not_simple():
    with pytest.raises(NotSimple):
        check_simple(parse_sequent("a^ | b^, b * a"))
    with pytest.raises(NotSimple):
        check_simple(parse_sequent("a^, a, a^, a"))


def test_full_check_examples():
    s = parse_sequent("a^ | a^, a * a")
    assert full_check(s, parse_linking("1-4,2-3"))
    bad = full_check(parse_sequent("a^ * a^, a * a"), parse_linking("1-3,2-4"))
    assert isinstance(bad, Invalid)
    assert str(bad.source) == "a^ * b^, a * b"
    assert full_check(parse_sequent("a^, a"), parse_linking("1-2"))


def test_oracle_examples():
    assert semantic_oracle(parse_sequent("a^, a"), parse_linking("1-2"))
    assert not semantic_oracle(parse_sequent("a^ * a^, a * a"), parse_linking("1-3,2-4"))


def _replay(v):
    g = v.sequent
    lk = next(iter(enumerate_linkings(g)))
    f = denote(ProofStructure(g, lk), v.instantiation)
    sigma = induce(f.game, f)
    play = play_out(f.game, sigma, counter_from_play(f.game, v.play.moves))
    return f, sigma, play


def test_invalid_verdict_replays():
    v = full_check(parse_sequent("a^ * a^, a * a"), parse_linking("1-3,2-4"))
    f, sigma, play = _replay(v)
    assert play.moves == v.play.moves and play.loser == "P"
    assert not f.game.extensions(play.moves) or all(
        play.moves + (m,) not in sigma for m in f.game.extensions(play.moves))


def test_lifted_counterexample_defeats_original():
    s = parse_sequent("a^ * a^, a * a")
    lk = parse_linking("1-3,2-4")
    v = full_check(s, lk)
    ps = ProofStructure(s, lk)
    f = denote(ps, lift_instantiation(ps, v))
    assert not wins(f.game, f)


def test_verdict_documents():
    good = verdict_document(full_check(parse_sequent("a^, a"), parse_linking("1-2")))
    assert good["verdict"] == "valid"
    bad = verdict_document(full_check(parse_sequent("a^ * b, b^ * a"), parse_linking("1-4,2-3")))
    assert bad["verdict"] == "invalid"
    assert [p["by"] for p in bad["play"]] == ["O", "P", "O"]
    assert bad["loser"] == "P"


def test_simplification_preserves_nethood(full_corpus):
    for s, lk in full_corpus[:2500]:
        ps = ProofStructure(s, lk)
        outs = simplify_to_simple(binary_relabel(ps))
        assert all(is_simple(x) for x in outs)
        nets = [bool(is_proof_net(ProofStructure(x, next(iter(enumerate_linkings(x))))))
                for x in outs]
        assert bool(is_proof_net(ps)) == all(nets)
