import pytest
from hypothesis import given

from mllgames.formula import (
    BINARY_POLARITY, UNARY_POLARITY, Lit, NegationOnCompound, ParseError, Par,
    Sequent, Tensor, is_balanced, literal_occurrences, negate, parse_extended,
    parse_formula, parse_sequent, polarity, with_p_premise_ok,
)
from strategies import formulas, sequents


def test_parse_paper_example():
    s = parse_sequent("a^ | a^, a * a")
    assert len(s) == 2
    assert [str(x) for x in s.literals()] == ["a^", "a^", "a", "a"]
    assert s.formulas[0] == Par(Lit("a", True), Lit("a", True))


def test_parse_single_atom():
    s = parse_sequent("a")
    assert s.formulas == (Lit("a"),)


def test_dangling_operator():
    with pytest.raises(ParseError) as info:
        parse_sequent("a *")
    assert info.value.position == 3
    assert info.value.expected == "atomic"
    assert "end-of-input" in str(info.value)


def test_negation_on_compound():
    with pytest.raises(NegationOnCompound):
        parse_sequent("(a * b)^")


def test_precedence_and_associativity():
    assert parse_formula("a * b | c") == Par(Tensor(Lit("a"), Lit("b")), Lit("c"))
    assert parse_formula("a | b | c") == Par(Par(Lit("a"), Lit("b")), Lit("c"))
    assert parse_formula("a * (b * c)") == Tensor(Lit("a"), Tensor(Lit("b"), Lit("c")))


def test_printer_uses_minimal_parentheses():
    assert str(parse_sequent("(a * b) | (c * d), (a | b) * c")) == "a * b | c * d, (a | b) * c"
    assert str(parse_formula("a * (b * c)")) == "a * (b * c)"


@pytest.mark.parametrize("text", ["", ",", "a,,b", "A", "a b", "a ^ b"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_sequent(text)


@given(sequents)
def test_print_parse_round_trip(s):
    assert parse_sequent(str(s)) == s
    assert literal_occurrences(parse_sequent(str(s))) == literal_occurrences(s)


def test_negate_examples():
    assert negate(parse_formula("a * b")) == parse_formula("a^ | b^")
    assert negate(Lit("a", True)) == Lit("a")


@given(formulas)
def test_negate_involution(f):
    assert negate(negate(f)) == f


@given(sequents)
def test_negation_swaps_signs(s):
    flipped = Sequent(tuple(negate(f) for f in s.formulas))
    before = literal_occurrences(s)
    after = literal_occurrences(flipped)
    assert [(o.atom, not o.negated) for o in before] == [(o.atom, o.negated) for o in after]


def test_occurrences():
    occ = literal_occurrences(parse_sequent("a^ | a^, a * a"))
    assert [(o.index, o.atom, o.negated) for o in occ] == [
        (1, "a", True), (2, "a", True), (3, "a", False), (4, "a", False)]
    assert is_balanced(parse_sequent("a^ | a^, a * a"))
    assert is_balanced(parse_sequent("a^, a"))
    assert not is_balanced(parse_sequent("a, a"))


def test_polarity_examples():
    assert polarity(parse_extended("!a")) == -1
    assert polarity(parse_extended("?a")) == +1
    assert polarity(parse_extended("a * b")) == 0
    assert polarity(parse_extended("a^")) == 0


# the two tables, transcribed independently of the implementation
BINARY = """
+ + | + + 0 + +
+ 0 | 0 0 0 0 0
+ - | 0 0 - 0 0
0 + | 0 0 0 0 0
0 0 | 0 0 0 0 0
0 - | 0 0 0 0 0
- + | 0 0 + 0 0
- 0 | 0 0 0 0 0
- - | - - 0 - -
"""
UNARY = """
+ | - + -
0 | - + 0
- | - + +
"""
SIGN = {"+": 1, "0": 0, "-": -1}
WITNESS = {1: "?a", 0: "a", -1: "!a"}


def _rows(table):
    for line in table.strip().splitlines():
        left, right = line.split("|")
        yield [SIGN[x] for x in left.split()], [SIGN[x] for x in right.split()]


def test_binary_table_via_lookup():
    for (x, y), expected in _rows(BINARY):
        got = [polarity(parse_extended(f"({WITNESS[x]}) {op} ({WITNESS[y]})"))
               for op in ("*", "|", "-o", "&", "+")]
        assert got == expected
        assert list(BINARY_POLARITY[x, y]) == expected


def test_unary_table_via_lookup():
    for (x,), expected in _rows(UNARY):
        w = WITNESS[x]
        got = [polarity(parse_extended(f"!({w})")), polarity(parse_extended(f"?({w})")),
               polarity(parse_extended(f"({w})^"))]
        assert got == expected
        assert list(UNARY_POLARITY[x]) == expected


def test_with_side_condition():
    assert with_p_premise_ok([parse_extended("?a"), parse_extended("?b")])
    assert with_p_premise_ok([])
    assert not with_p_premise_ok([parse_extended("a")])


def test_extended_lollipop_is_right_associative():
    f = parse_extended("a -o b -o c")
    assert str(f.right) == "b -o c"


def test_sequent_rejects_extended_connectives():
    with pytest.raises(TypeError):
        Sequent((parse_extended("!a"),))
