import pytest
from hypothesis import given, settings, strategies as st
from somlogic.concepts import (
    Top, Bot, Atom, Not, And, Or, StrictInclusion, DefeasibleInclusion,
    FuzzyInclusion, FuzzyAssertion, CheckAxiom, Prob, CondProb,
    ProbGivenElement, Likelihood, InclusionDegree, Membership, Plausibility,
    COMPARATORS)
from somlogic.exceptions import ParseError, ValidationError
from somlogic.parser import (
    tokenize, parse_concept, parse_statement, parse_axiom, parse_query,
    parse_kb_statement, parse_query_file, print_concept, print_axiom,
    print_query, print_individual)

A, B, C = Atom("A"), Atom("B"), Atom("C")

# names that are special at the start of a statement are legal atoms
NAMES = st.sampled_from(["A", "B", "bird", "Penguin", "x_1", "T", "P", "deg",
                         "mem", "plaus", "elem"])
ELEMENT_IDS = st.from_regex(r"[A-Za-z0-9_.:-]{1,8}", fullmatch=True)
INDIVIDUALS = st.one_of(NAMES, ELEMENT_IDS)
DEGREES = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
CMPS = st.sampled_from(COMPARATORS)

CONCEPTS = st.recursive(
    st.one_of(st.builds(Atom, NAMES), st.just(Top()), st.just(Bot())),
    lambda children: st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children)),
    max_leaves=12)

AXIOMS = st.one_of(
    st.builds(StrictInclusion, CONCEPTS, CONCEPTS),
    st.builds(DefeasibleInclusion, CONCEPTS, CONCEPTS),
    st.builds(FuzzyInclusion, CONCEPTS, CONCEPTS, CMPS, DEGREES),
    st.builds(FuzzyAssertion, CONCEPTS, INDIVIDUALS, CMPS, DEGREES))

QUERIES = st.one_of(
    st.builds(CheckAxiom, AXIOMS),
    st.builds(Prob, CONCEPTS),
    st.builds(CondProb, CONCEPTS, CONCEPTS),
    st.builds(ProbGivenElement, CONCEPTS, ELEMENT_IDS),
    st.builds(Likelihood, ELEMENT_IDS, CONCEPTS),
    st.builds(InclusionDegree, CONCEPTS, CONCEPTS),
    st.builds(Membership, CONCEPTS, INDIVIDUALS),
    st.builds(Plausibility, NAMES, NAMES))


@settings(max_examples=1000, deadline=None)
@given(QUERIES)
def test_print_parse_round_trip(query):
    assert parse_query(print_query(query)) == query


@settings(max_examples=200, deadline=None)
@given(CONCEPTS)
def test_concept_round_trip(concept):
    assert parse_concept(print_concept(concept)) == concept


@settings(max_examples=200, deadline=None)
@given(AXIOMS)
def test_printing_is_canonical(axiom):
    text = print_axiom(axiom)
    assert print_axiom(parse_axiom(text)) == text


def test_precedence():
    assert parse_concept("not A and B or C") == Or(And(Not(A), B), C)
    assert parse_concept("A or B and C") == Or(A, And(B, C))
    assert parse_concept("not not A") == Not(Not(A))
    assert parse_concept("top and (bot or A)") == And(Top(), Or(Bot(), A))


def test_left_associativity():
    assert parse_concept("A and B and C") == And(And(A, B), C)
    assert parse_concept("A or B or C") == Or(Or(A, B), C)


def test_minimal_parentheses():
    assert print_concept(And(A, And(B, C))) == "A and (B and C)"
    assert print_concept(And(And(A, B), C)) == "A and B and C"
    assert print_concept(Or(And(A, B), C)) == "A and B or C"
    assert print_concept(And(Or(A, B), C)) == "(A or B) and C"
    assert print_concept(Not(And(A, B))) == "not (A and B)"
    assert print_concept(Not(Not(A))) == "not not A"


def test_str_uses_printer():
    assert str(And(A, Not(B))) == "A and not B"
    assert str(DefeasibleInclusion(A, B)) == "T(A) <= B"
    assert str(Plausibility("A", "B")) == "plaus(A, B)"


def test_statements():
    assert parse_statement("A <= B") == StrictInclusion(A, B)
    assert parse_statement("T(A and B) <= C") == \
        DefeasibleInclusion(And(A, B), C)
    assert parse_statement("A <= B >= 0.7") == \
        FuzzyInclusion(A, B, ">=", 0.7)
    assert parse_statement("A <= B <= 0.7") == \
        FuzzyInclusion(A, B, "<=", 0.7)
    assert parse_statement("A(dumbo) > 0.5") == \
        FuzzyAssertion(A, "dumbo", ">", 0.5)
    assert parse_statement("A(elem:s-1) < 1") == \
        FuzzyAssertion(A, "s-1", "<", 1.0)
    assert parse_statement("A(42) >= 0") == FuzzyAssertion(A, "42", ">=", 0)


def test_assertion_applies_to_whole_concept():
    assert parse_statement("not A(x) >= 0.5") == \
        FuzzyAssertion(Not(A), "x", ">=", 0.5)


def test_queries():
    assert parse_query("P(A)") == Prob(A)
    assert parse_query("P(A | B or C)") == CondProb(A, Or(B, C))
    assert parse_query("P(A | elem:s1)") == ProbGivenElement(A, "s1")
    assert parse_query("P(elem:bmu:0:1 | A)") == Likelihood("bmu:0:1", A)
    assert parse_query("deg(A <= not B)") == InclusionDegree(A, Not(B))
    assert parse_query("mem(A and B, s1)") == Membership(And(A, B), "s1")
    assert parse_query("plaus(A, B)") == Plausibility("A", "B")
    assert parse_query("A <= B") == CheckAxiom(StrictInclusion(A, B))


def test_heads_as_atoms():
    assert parse_statement("T <= P") == \
        StrictInclusion(Atom("T"), Atom("P"))
    assert parse_statement("P(P)") == Prob(Atom("P"))
    assert print_axiom(FuzzyAssertion(Atom("P"), "x", ">=", 0.5)) == \
        "(P)(x) >= 0.5"


def test_print_individual():
    assert print_individual("dumbo") == "dumbo"
    assert print_individual("and") == "elem:and"
    assert print_individual("s-1") == "elem:s-1"
    assert print_individual("42") == "elem:42"


def test_print_queries():
    assert print_query(ProbGivenElement(A, "x")) == "P(A | elem:x)"
    assert print_query(Likelihood("x", A)) == "P(elem:x | A)"
    assert print_query(InclusionDegree(A, B)) == "deg(A <= B)"
    assert print_query(Membership(A, "x")) == "mem(A, x)"
    assert print_query(CheckAxiom(FuzzyInclusion(A, B, ">=", 0.5))) == \
        "A <= B >= 0.5"


def test_comments_and_whitespace():
    assert parse_statement("  A   <=\tB  # trailing comment") == \
        StrictInclusion(A, B)


def test_tokenize_positions():
    tokens = tokenize("A <=\n  not B", first_line=3)
    assert [(cur.kind, cur.value, cur.line, cur.column)
            for cur in tokens] == [
                ("ident", "A", 3, 1), ("op", "<=", 3, 3),
                ("keyword", "not", 4, 3), ("ident", "B", 4, 7),
                ("eof", "", 4, 8)]


def test_error_position():
    with pytest.raises(ParseError) as err:
        parse_statement("A <=")
    assert err.value.line == 1
    assert err.value.column == 5
    assert "identifier" in err.value.expected
    assert "end of input" in str(err.value)


@pytest.mark.parametrize("text,fragment", [
    ("A and T(B) <= C", "only allowed as the left-hand side"),
    ("T(A) <= B >= 0.5", "can not carry a degree"),
    ("A <= B )", "unexpected ')'"),
    ("and <= B", "unexpected 'and'"),
    ("A <= B $", "unexpected character '$'"),
    ("elem: <= A", "missing element id"),
    ("mem(A, )", "unexpected ')'"),
    ("P(A", "unexpected end of input"),
    ("plaus(A and B, C)", "unexpected 'and'"),
    ("A", "unexpected end of input"),
])
def test_syntax_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_statement(text)
    assert fragment in str(err.value)


def test_degree_out_of_range():
    with pytest.raises(ValidationError):
        parse_statement("A <= B >= 1.5")


def test_keyword_category():
    with pytest.raises(ValidationError):
        Atom("top")
    with pytest.raises(ValidationError):
        Atom("1abc")


def test_axiom_expected():
    with pytest.raises(ParseError) as err:
        parse_axiom("P(A)")
    assert "expected an axiom" in str(err.value)


def test_invalid_utf8():
    with pytest.raises(ParseError) as err:
        parse_statement(b"A <= \xff")
    assert err.value.column == 6


def test_deep_nesting():
    text = "(" * 5000 + "A" + ")" * 5000
    with pytest.raises(ParseError) as err:
        parse_concept(text)
    assert "nests too deeply" in str(err.value)


def test_kb_statement():
    assert parse_kb_statement("T(A) <= B @ plausibility=0.25") == \
        (DefeasibleInclusion(A, B), 0.25)
    assert parse_kb_statement("A <= B") == (StrictInclusion(A, B), None)
    with pytest.raises(ParseError):
        parse_kb_statement("T(A) <= B @ weight=0.25")
    with pytest.raises(ParseError):
        parse_kb_statement("P(A) @ plausibility=0.25")


def test_query_file():
    text = "A <= B\n" \
           "\n" \
           "   # a comment\n" \
           "A <=\n" \
           "P(A)\n" \
           "A <= B >= 3\n"
    res = parse_query_file(text)
    assert [cur.line for cur in res] == [1, 4, 5, 6]
    assert res[0].statement == CheckAxiom(StrictInclusion(A, B))
    assert res[0].error is None
    assert res[1].statement is None
    assert isinstance(res[1].error, ParseError)
    assert res[1].error.line == 4
    assert res[2].statement == Prob(A)
    assert isinstance(res[3].error, ValidationError)
    assert res[1].text == "A <="


if __name__ == "__main__":
    pytest.main([__file__, "-v", "-s"])
