"""Command line front end.

Exit codes: 0 for a positive answer (net, valid, winning), 1 for a negative
one, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, TextIO

from . import completeness, corpus
from .formula import ParseError, parse_extended, parse_sequent, polarity
from .game import (
    BUILTIN_GAMES, Composite, Game, MissingAtom, builtin_game, game_polarity,
    lollipop, loads, polarized_instance,
)
from .proofnet import (
    InvalidLinking, ProofStructure, is_proof_net, parse_linking, prove,
)
from .semantics import denote
from .strategy import (
    ChatteringDivergence, HistoryFreeFunction, compose_exec, compose_sets,
    induce, wins,
)

SEQUENT_GRAMMAR = """\
sequent := formula (',' formula)*
formula := tensor ('|' tensor)*        par, left associative
tensor  := atomic ('*' atomic)*        binds tighter than '|'
atomic  := atom ['^'] | '(' formula ')'
atom    := lower-case letter followed by letters, digits or '_'
negation '^' applies to atoms only"""

EXTENDED_GRAMMAR = """\
formula := with ('-o' formula)?        right associative
with    := par (('&' | '+') par)*
par     := tensor ('|' tensor)*
tensor  := unary ('*' unary)*
unary   := ('!' | '?') unary | atomic ['^']
atomic  := atom | '(' formula ')'"""

LINKS_GRAMMAR = "links := i-j (',' i-j)*    e.g. 1-4,2-3 (occurrences numbered from 1, left to right)"

ASSIGN_GRAMMAR = f"""\
assignment file: one line per atom
  atom = NAME        NAME one of {', '.join(BUILTIN_GAMES)}
  atom = PATH        PATH a JSON game document
                     {{"moves": [{{"id": "b", "label": "O"}}], "positions": [[], ["b"]]}}
lines starting with '#' are ignored; inline form "a=B,b=C" is accepted too"""

FUNCTION_GRAMMAR = "function file: one 'o-move -> p-move' pair per line"


class UsageError(Exception):
    def __init__(self, message: str, grammar: str = ""):
        super().__init__(message)
        self.grammar = grammar


def _sequent(text):
    try:
        return parse_sequent(text)
    except ParseError as exc:
        raise UsageError(str(exc), SEQUENT_GRAMMAR) from None


def _structure(seq_text, links_text):
    s = _sequent(seq_text)
    if links_text is None:
        raise UsageError("--links is required", LINKS_GRAMMAR)
    try:
        return ProofStructure(s, parse_linking(links_text))
    except InvalidLinking as exc:
        raise UsageError(str(exc), LINKS_GRAMMAR) from None


def _game_ref(ref: str, base: str = ".") -> Game:
    ref = ref.strip()
    if ref in BUILTIN_GAMES:
        return builtin_game(ref)
    path = ref if os.path.isabs(ref) else os.path.join(base, ref)
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError:
        raise UsageError(f"unknown game {ref!r}", ASSIGN_GRAMMAR) from None
    except ValueError as exc:
        raise UsageError(f"{ref}: {exc}", ASSIGN_GRAMMAR) from None


def _assignment(spec: Optional[str], atoms) -> dict:
    if spec is None:
        return {a: builtin_game("B") for a in atoms}
    if os.path.exists(spec):
        with open(spec) as fh:
            lines = fh.read().splitlines()
        base = os.path.dirname(os.path.abspath(spec))
    elif "=" in spec:
        lines, base = spec.split(","), "."
    else:
        raise UsageError(f"no assignment file {spec!r}", ASSIGN_GRAMMAR)
    out = {}
    for n, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"assignment line {n}: {line!r}", ASSIGN_GRAMMAR)
        atom, ref = (x.strip() for x in line.split("=", 1))
        out[atom] = _game_ref(ref, base)
    missing = [a for a in atoms if a not in out]
    if missing:
        raise UsageError(f"no game for atom(s) {', '.join(missing)}", ASSIGN_GRAMMAR)
    return out


def _emit(out: TextIO, fmt: str, text: str, doc) -> None:
    if fmt == "structured":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# --- commands -------------------------------------------------------------

def cmd_check_net(args, out) -> int:
    ps = _structure(args.sequent, args.links)
    check = is_proof_net(ps)
    if check:
        text = "PROOF NET"
        doc = {"net": True, "switchings_checked": check.checked}
    else:
        sw = " ".join(f"{p}={side}" for p, side in check.switching.items())
        text = f"NOT A PROOF NET\nswitching: {sw or '(no pars)'}\ncycle: {check.describe_cycle()}"
        doc = {"net": False,
               "switching": {str(p): side for p, side in check.switching.items()},
               "cycle": [str(n) for n in check.cycle]}
    _emit(out, args.format, text, doc)
    return 0 if check else 1


def cmd_prove(args, out) -> int:
    s = _sequent(args.sequent)
    nets = prove(s)
    k = len(nets)
    text = f"{k} net{'' if k == 1 else 's'}" + (": " + "; ".join(map(str, nets)) if nets else "")
    _emit(out, args.format, text, {"sequent": str(s), "nets": [str(n) for n in nets]})
    return 0 if nets else 1


def cmd_denote(args, out) -> int:
    ps = _structure(args.sequent, args.links)
    f = denote(ps, _assignment(args.assign, ps.sequent.atoms))
    ok = wins(f.game, f)
    text = f.dumps() + ("winning" if ok else "not winning")
    _emit(out, args.format, text, {"function": f.mapping, "winning": ok})
    return 0 if ok else 1


def _load_function(path: str, game: Game) -> HistoryFreeFunction:
    try:
        with open(path) as fh:
            return HistoryFreeFunction.loads(game, fh.read())
    except OSError:
        raise UsageError(f"cannot read {path}", FUNCTION_GRAMMAR) from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}", FUNCTION_GRAMMAR) from None


def cmd_compose(args, out) -> int:
    a, b, c = (_game_ref(r) for r in (args.a, args.b, args.c))
    f = _load_function(args.left, lollipop(a, b))
    g = _load_function(args.right, lollipop(b, c))
    try:
        h = compose_exec(f, g)
    except ChatteringDivergence as exc:
        _emit(out, args.format, f"DIVERGENCE\n{exc}", {"divergence": [list(t) for t in exc.trace]})
        return 1
    agree = induce(h.game, h) == compose_sets(induce(f.game, f), induce(g.game, g)) \
        if args.check else None
    text = h.dumps() + ("" if agree is None else f"agrees with set composition: {'yes' if agree else 'no'}")
    _emit(out, args.format, text, {"function": h.mapping, "agrees": agree})
    return 1 if agree is False else 0


def _corpus_run(args, out, what: str) -> int:
    try:
        bound = corpus.parse_corpus_spec(args.corpus)
    except ValueError as exc:
        raise UsageError(str(exc), "corpus := classes:N   (all structure classes with at most N literals)")
    total = disagree = nets = 0
    for s, phi in corpus.corpus(bound):
        total += 1
        net = bool(is_proof_net(ProofStructure(s, phi)))
        v = completeness.full_check(s, phi)
        answer = bool(v) if what == "complete" else completeness.semantic_oracle(s, phi, verdict=v)
        nets += net
        if answer != net:
            disagree += 1
            out.write(f"disagreement: {s} with {phi}\n")
    _emit(out, args.format, f"{total} structures, {nets} nets, {disagree} disagreements",
          {"structures": total, "nets": nets, "disagreements": disagree})
    return 0 if disagree == 0 else 1


def cmd_complete(args, out) -> int:
    if args.corpus:
        return _corpus_run(args, out, "complete")
    ps = _structure(args.sequent, args.links)
    v = completeness.full_check(ps.sequent, ps.linking)
    if v:
        text = "VALID\n" + "\n".join(f"acyclic: {x}" for x in v.simple)
    else:
        inst = ", ".join(f"{a} = {n}" for a, n in sorted(v.names.items()))
        lines = [f"{'O' if k % 2 == 0 else 'P'} {m}" for k, m in enumerate(v.play.moves)]
        text = "\n".join([
            "INVALID",
            f"binary sequent: {v.source}",
            f"simple sequent: {v.sequent}",
            f"cycle: {v.describe_cycle()}",
            f"instantiation: {inst}",
            "play:", *("  " + ln for ln in lines),
            "Player stuck: Player loses",
        ])
    _emit(out, args.format, text, completeness.verdict_document(v))
    return 0 if v else 1


def cmd_oracle(args, out) -> int:
    if args.corpus:
        return _corpus_run(args, out, "oracle")
    ps = _structure(args.sequent, args.links)
    ok = completeness.semantic_oracle(ps.sequent, ps.linking)
    _emit(out, args.format, "true" if ok else "false", {"winning": ok})
    return 0 if ok else 1


def cmd_polarity(args, out) -> int:
    try:
        f = parse_extended(args.formula)
    except ParseError as exc:
        raise UsageError(str(exc), EXTENDED_GRAMMAR) from None
    p = polarity(f)
    doc = {"formula": args.formula, "polarity": p}
    text = f"{p:+d}" if p else "0"
    try:
        gp = game_polarity(polarized_instance(f))
        doc["game_polarity"] = None if gp.empty else int(gp)
        text += f"\ngame: {'empty' if gp.empty else (f'{int(gp):+d}' if gp else '0')}"
    except ValueError:
        pass
    _emit(out, args.format, text, doc)
    return 0


def play_session(game: Composite, f: HistoryFreeFunction, lines, out: TextIO,
                 prompt: bool = False) -> int:
    """Human (or script) as Opponent against ``f``; 0 if Player wins."""
    history = []
    state = game.start()

    def legal_o():
        return [m for m in game.o_moves() if game.step(state, m) is not None]

    def show_moves():
        out.write("O-moves: " + (" ".join(legal_o()) or "(none)") + "\n")

    if not legal_o():
        out.write("no O-moves remain: Opponent loses\n")
        return 0
    show_moves()
    for raw in lines:
        line = raw.strip()
        if not line:
            continue
        if line == ":quit":
            out.write("quit\n")
            return 0
        if line == ":moves":
            show_moves()
            continue
        if line == ":history":
            out.write(("history: " + " ".join(history) if history else "history: (empty)") + "\n")
            continue
        if line not in game.labels:
            out.write(f"unknown move {line!r}; legal O-moves: {' '.join(legal_o())}\n")
            continue
        if game.labels[line] != "O":
            out.write(f"{line} is a Player move; legal O-moves: {' '.join(legal_o())}\n")
            continue
        nxt = game.step(state, line)
        if nxt is None:
            reason = game.why_illegal(history, line)
            out.write(f"illegal move {line}: {reason}; legal O-moves: {' '.join(legal_o())}\n")
            continue
        state = nxt
        history.append(line)
        out.write(f"O plays {line}\n")
        answer = f(line)
        after = None if answer is None else game.step(state, answer)
        if after is None:
            out.write("Player stuck: Player loses\n")
            return 1
        state = after
        history.append(answer)
        out.write(f"P plays {answer}\n")
        if not legal_o():
            out.write("no O-moves remain: Opponent loses\n")
            return 0
        show_moves()
    out.write("input ended\n")
    return 0


def cmd_play(args, out, stdin) -> int:
    ps = _structure(args.sequent, args.links)
    assignment = _assignment(args.assign, ps.sequent.atoms)
    f = denote(ps, assignment)
    lines = args.moves.split(",") if args.moves else stdin
    return play_session(f.game, f, lines, out)


# --- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mllgames", description="Games, strategies and proof nets for MLL+MIX.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "structured"), default="text")
        return p

    p = common(sub.add_parser("check-net", help="switching test for a proof structure"))
    p.add_argument("sequent")
    p.add_argument("--links")

    p = common(sub.add_parser("prove", help="list every linking that is a proof net"))
    p.add_argument("sequent")

    p = common(sub.add_parser("denote", help="copy function of a structure at an assignment"))
    p.add_argument("sequent")
    p.add_argument("--links")
    p.add_argument("--assign")

    p = common(sub.add_parser("compose", help="compose f: A -o B with g: B -o C"))
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--left", required=True, help="function file for A -o B")
    p.add_argument("--right", required=True, help="function file for B -o C")
    p.add_argument("--check", action="store_true", help="compare with set composition")

    for name, text in (("complete", "run the completeness pipeline"),
                       ("oracle", "check winning over the game catalog")):
        p = common(sub.add_parser(name, help=text))
        p.add_argument("sequent", nargs="?")
        p.add_argument("--links")
        p.add_argument("--corpus", help="classes:N")

    p = common(sub.add_parser("polarity", help="polarity of an extended formula"))
    p.add_argument("formula")

    p = sub.add_parser("play", help="play Opponent against the denoted strategy")
    p.add_argument("sequent")
    p.add_argument("--links")
    p.add_argument("--assign")
    p.add_argument("--moves", help="comma separated Opponent input instead of stdin")
    return parser


def run(argv=None, out: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    commands = {
        "check-net": cmd_check_net, "prove": cmd_prove, "denote": cmd_denote,
        "compose": cmd_compose, "complete": cmd_complete, "oracle": cmd_oracle,
        "polarity": cmd_polarity,
    }
    try:
        if args.command in ("complete", "oracle") and not args.corpus and not args.sequent:
            raise UsageError("give a sequent with --links, or --corpus", SEQUENT_GRAMMAR)
        if args.command == "play":
            return cmd_play(args, out, stdin)
        return commands[args.command](args, out)
    except UsageError as exc:
        out.write(f"error: {exc}\n")
        if exc.grammar:
            out.write(exc.grammar + "\n")
        return 2
    except MissingAtom as exc:
        out.write(f"error: {exc}\n{ASSIGN_GRAMMAR}\n")
        return 2


def main() -> None:
    sys.exit(run())
