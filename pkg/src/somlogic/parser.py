"""Parser and printer for the concept, axiom and query language

Concrete syntax, one statement per line, ``#`` starting a comment::

    concept := or
    or      := and ("or" and)*
    and     := unary ("and" unary)*
    unary   := "not" unary | "top" | "bot" | IDENT | "(" concept ")"

    statement := concept "<=" concept                      strict inclusion
               | "T(" concept ")" "<=" concept             typicality inclusion
               | concept "<=" concept CMP NUMBER           fuzzy inclusion
               | concept "(" individual ")" CMP NUMBER     fuzzy assertion
               | "P(" concept ")"
               | "P(" concept "|" concept ")"
               | "P(" concept "|" "elem:" ID ")"
               | "P(" "elem:" ID "|" concept ")"
               | "deg(" concept "<=" concept ")"
               | "mem(" concept "," individual ")"
               | "plaus(" IDENT "," IDENT ")"

    CMP        := ">=" | "<=" | ">" | "<"
    individual := "elem:" ID | IDENT | NUMBER

``not`` binds tightest, then ``and``, then ``or``; both binary operators
associate to the left. ``T``, ``P``, ``deg``, ``mem`` and ``plaus`` are only
special at the start of a statement when directly followed by ``(``. A fuzzy
assertion applies the individual to the whole concept expression before the
parenthesis, so ``not A(x) >= 0.5`` reads as ``(not A)(x) >= 0.5``.
"""
import re
from collections import namedtuple
from somlogic.concepts import (
    IDENTIFIER, KEYWORDS, COMPARATORS, Node, Concept, Top, Bot, Atom, Not,
    And, Or, Axiom, StrictInclusion, DefeasibleInclusion, FuzzyInclusion,
    FuzzyAssertion, Query, CheckAxiom, Prob, CondProb, ProbGivenElement,
    Likelihood, InclusionDegree, Membership, Plausibility)
from somlogic.exceptions import ParseError, ValidationError

Token = namedtuple("Token", "kind value line column")

_TOKEN_PATTERN = re.compile(r"""
    (?P<newline>\n)
  | (?P<space>[ \t\r\f\v]+)
  | (?P<comment>\#[^\n]*)
  | (?P<element>elem:(?P<element_id>[^\s(),|#]*))
  | (?P<number>-?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op><=|>=|[<>(),|@=])
""", re.VERBOSE)

# statement heads recognised when followed by an opening parenthesis
_HEADS = frozenset(["T", "P", "deg", "mem", "plaus"])

_PRECEDENCE = {Or: 1, And: 2, Not: 3}

StatementLine = namedtuple("StatementLine", "line text statement error")


def tokenize(text, first_line=1):
    """Splits statement text into tokens

    :param str text: source text
    :param int first_line: line number of the first line of ``text``
    :returns: tokens, terminated by an ``eof`` token
    :rtype: :class:`list` of :class:`Token`
    """
    retval = []
    line = first_line
    line_start = 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise ParseError(
                "unexpected character {0!r}".format(text[pos]), line, column)
        kind = match.lastgroup
        if kind == "element_id":
            kind = "element"
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind == "element":
            element_id = match.group("element_id")
            if not element_id:
                raise ParseError("missing element id after 'elem:'",
                                 line, column + 5, ["element id"])
            retval.append(Token("element", element_id, line, column))
        elif kind == "ident" and match.group() in KEYWORDS:
            retval.append(Token("keyword", match.group(), line, column))
        elif kind in ("number", "ident", "op"):
            retval.append(Token(kind, match.group(), line, column))
        pos = match.end()
    retval.append(Token("eof", "", line, pos - line_start + 1))
    return retval


def _describe(token):
    if token.kind == "eof":
        return "end of input"
    if token.kind == "element":
        return "'elem:{0}'".format(token.value)
    return repr(token.value)


class _Parser(object):
    """Recursive descent parser over a token list"""

    def __init__(self, tokens):
        self._tokens = tokens
        self._pos = 0

    def peek(self, ahead=0):
        """Token ``ahead`` positions after the current one"""
        index = min(self._pos + ahead, len(self._tokens) - 1)
        return self._tokens[index]

    def advance(self):
        """Consumes and returns the current token"""
        token = self.peek()
        if token.kind != "eof":
            self._pos += 1
        return token

    def error(self, expected, message=None, token=None):
        """Builds a positioned syntax error at the current token"""
        token = token or self.peek()
        if message is None:
            message = "unexpected {0}".format(_describe(token))
        return ParseError(message, token.line, token.column, expected)

    def at_op(self, *values):
        """Whether the current token is one of the given operators"""
        token = self.peek()
        return token.kind == "op" and token.value in values

    def at_keyword(self, value):
        """Whether the current token is the given keyword"""
        token = self.peek()
        return token.kind == "keyword" and token.value == value

    def expect_op(self, value):
        """Consumes an operator token or fails"""
        if not self.at_op(value):
            raise self.error(["'{0}'".format(value)])
        return self.advance()

    def expect_eof(self):
        """Fails unless every token has been consumed"""
        if self.peek().kind != "eof":
            raise self.error(["end of input"])

    # ------------------------------------------------------------- concepts
    def concept(self):
        """or := and ("or" and)*"""
        left = self.conjunction()
        while self.at_keyword("or"):
            self.advance()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        """and := unary ("and" unary)*"""
        left = self.unary()
        while self.at_keyword("and"):
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self):
        """unary := "not" unary | "top" | "bot" | IDENT | "(" concept ")" """
        token = self.peek()
        if token.kind == "keyword" and token.value == "not":
            self.advance()
            return Not(self.unary())
        if token.kind == "keyword" and token.value == "top":
            self.advance()
            return Top()
        if token.kind == "keyword" and token.value == "bot":
            self.advance()
            return Bot()
        if token.kind == "ident":
            nxt = self.peek(1)
            if token.value == "T" and nxt.kind == "op" and nxt.value == "(":
                raise self.error(
                    [], "typicality T(...) is only allowed as the left-hand "
                        "side of an inclusion")
            self.advance()
            return Atom(token.value)
        if token.kind == "op" and token.value == "(":
            self.advance()
            retval = self.concept()
            self.expect_op(")")
            return retval
        raise self.error(["identifier", "'not'", "'top'", "'bot'", "'('"])

    # ----------------------------------------------------------- statements
    def individual(self):
        """individual := "elem:" ID | IDENT | NUMBER"""
        token = self.peek()
        if token.kind in ("element", "ident", "number"):
            self.advance()
            return token.value
        raise self.error(["'elem:'", "identifier", "number"])

    def comparator(self):
        """CMP := ">=" | "<=" | ">" | "<" """
        if not self.at_op(*COMPARATORS):
            raise self.error(["'{0}'".format(cmp) for cmp in COMPARATORS])
        return self.advance().value

    def number(self):
        """Consumes a numeric literal"""
        token = self.peek()
        if token.kind != "number":
            raise self.error(["number"])
        self.advance()
        return float(token.value)

    def category(self):
        """Consumes a category name"""
        token = self.peek()
        if token.kind != "ident":
            raise self.error(["identifier"])
        self.advance()
        return Atom(token.value).name

    def statement(self):
        """Parses one axiom or query"""
        head, nxt = self.peek(), self.peek(1)
        if head.kind == "ident" and head.value in _HEADS and \
                nxt.kind == "op" and nxt.value == "(":
            self.advance()
            self.advance()
            return getattr(self, "_head_" + head.value)()

        lhs = self.concept()
        if self.at_op("<="):
            self.advance()
            rhs = self.concept()
            if self.at_op(*COMPARATORS):
                cmp = self.comparator()
                return FuzzyInclusion(lhs, rhs, cmp, self.number())
            return StrictInclusion(lhs, rhs)
        if self.at_op("("):
            self.advance()
            individual = self.individual()
            self.expect_op(")")
            cmp = self.comparator()
            return FuzzyAssertion(lhs, individual, cmp, self.number())
        raise self.error(["'<='", "'('", "'and'", "'or'"])

    def _head_T(self):  # pylint: disable=invalid-name
        lhs = self.concept()
        self.expect_op(")")
        self.expect_op("<=")
        rhs = self.concept()
        if self.at_op(*COMPARATORS):
            raise self.error(
                [], "typicality inclusions can not carry a degree")
        return DefeasibleInclusion(lhs, rhs)

    def _head_P(self):  # pylint: disable=invalid-name
        if self.peek().kind == "element":
            element = self.advance().value
            self.expect_op("|")
            concept = self.concept()
            self.expect_op(")")
            return Likelihood(element, concept)
        concept = self.concept()
        if self.at_op("|"):
            self.advance()
            if self.peek().kind == "element":
                retval = ProbGivenElement(concept, self.advance().value)
            else:
                retval = CondProb(concept, self.concept())
            self.expect_op(")")
            return retval
        if not self.at_op(")"):
            raise self.error(["'|'", "')'", "'and'", "'or'"])
        self.advance()
        return Prob(concept)

    def _head_deg(self):
        lhs = self.concept()
        self.expect_op("<=")
        rhs = self.concept()
        self.expect_op(")")
        return InclusionDegree(lhs, rhs)

    def _head_mem(self):
        concept = self.concept()
        self.expect_op(",")
        element = self.individual()
        self.expect_op(")")
        return Membership(concept, element)

    def _head_plaus(self):
        src = self.category()
        self.expect_op(",")
        dst = self.category()
        self.expect_op(")")
        return Plausibility(src, dst)

    def plausibility_suffix(self):
        """Optional ``@ plausibility=<decimal>`` suffix of KB files"""
        if not self.at_op("@"):
            return None
        self.advance()
        token = self.peek()
        if token.kind != "ident" or token.value != "plausibility":
            raise self.error(["'plausibility'"])
        self.advance()
        self.expect_op("=")
        return self.number()


def _run(text, rule, first_line=1):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as err:
            raise ParseError("input is not valid UTF-8", first_line,
                             err.start + 1)
    try:
        parser = _Parser(tokenize(text, first_line))
        return rule(parser)
    except RecursionError:
        raise ParseError("statement nests too deeply", first_line, 1)


def _whole(method):
    def rule(parser):
        retval = method(parser)
        parser.expect_eof()
        return retval
    return rule


def parse_concept(text):
    """Parses a boolean concept

    :param str text: concept in concrete syntax
    :rtype: :class:`~.concepts.Concept`
    """
    return _run(text, _whole(_Parser.concept))


def parse_statement(text, first_line=1):
    """Parses any axiom or query

    :param str text: one statement
    :param int first_line: line number used in error positions
    :returns: an :class:`~.concepts.Axiom` or a :class:`~.concepts.Query`
    """
    return _run(text, _whole(_Parser.statement), first_line)


def parse_axiom(text):
    """Parses an axiom

    :param str text: strict, typicality or fuzzy statement
    :rtype: :class:`~.concepts.Axiom`
    """
    retval = parse_statement(text)
    if not isinstance(retval, Axiom):
        raise ParseError("expected an axiom, found a query", 1, 1,
                         ["axiom"])
    return retval


def parse_query(text):
    """Parses a query; plain axioms become satisfaction checks

    :param str text: one statement
    :rtype: :class:`~.concepts.Query`
    """
    retval = parse_statement(text)
    if isinstance(retval, Axiom):
        return CheckAxiom(retval)
    return retval


def parse_kb_statement(text, first_line=1):
    """Parses one line of an extracted knowledge base file

    :param str text: an axiom optionally suffixed by ``@ plausibility=<n>``
    :param int first_line: line number used in error positions
    :returns: (axiom, plausibility or None)
    :rtype: :class:`tuple`
    """
    def rule(parser):
        axiom = parser.statement()
        if not isinstance(axiom, Axiom):
            raise ParseError("expected an axiom, found a query",
                             first_line, 1, ["axiom"])
        weight = parser.plausibility_suffix()
        parser.expect_eof()
        return axiom, weight
    return _run(text, rule, first_line)


def parse_query_file(text):
    """Parses a newline separated statement file line by line

    Lines holding only whitespace or comments are skipped. Errors are
    reported per line instead of aborting the whole file.

    :param str text: file content
    :rtype: :class:`list` of :class:`StatementLine`
    """
    retval = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        try:
            if len(tokenize(line, line_no)) == 1:
                continue
            statement = parse_statement(line, line_no)
            if isinstance(statement, Axiom):
                statement = CheckAxiom(statement)
            retval.append(StatementLine(line_no, line.strip(), statement,
                                        None))
        except (ParseError, ValidationError) as err:
            retval.append(StatementLine(line_no, line.strip(), None, err))
    return retval


# ------------------------------------------------------------------ PRINTER
def print_concept(concept, context=0):
    """Canonical, minimally parenthesised form of a concept

    :param concept: concept to print
    :param int context: binding strength required by the enclosing operator
    :rtype: :class:`str`
    """
    if isinstance(concept, Top):
        return "top"
    if isinstance(concept, Bot):
        return "bot"
    if isinstance(concept, Atom):
        return concept.name
    precedence = _PRECEDENCE[type(concept)]
    if isinstance(concept, Not):
        text = "not " + print_concept(concept.operand, precedence)
    else:
        word = " or " if isinstance(concept, Or) else " and "
        # left associative: only the right operand needs a tighter context
        text = print_concept(concept.left, precedence) + word + \
            print_concept(concept.right, precedence + 1)
    if precedence < context:
        return "(" + text + ")"
    return text


def _print_operand(concept):
    # a head name followed by "(" would start a query instead
    if isinstance(concept, (Top, Bot)) or (
            isinstance(concept, Atom) and concept.name not in _HEADS):
        return print_concept(concept)
    return "(" + print_concept(concept) + ")"


def print_individual(individual):
    """Prints an element reference, bare when it reads as an identifier

    :param str individual: element id
    :rtype: :class:`str`
    """
    if IDENTIFIER.match(individual) and individual not in KEYWORDS:
        return individual
    return "elem:" + individual


def _print_degree(value):
    return repr(float(value))


def print_axiom(axiom):
    """Canonical form of an axiom

    :param axiom: axiom to print
    :rtype: :class:`str`
    """
    if isinstance(axiom, StrictInclusion):
        return "{0} <= {1}".format(print_concept(axiom.lhs),
                                   print_concept(axiom.rhs))
    if isinstance(axiom, DefeasibleInclusion):
        return "T({0}) <= {1}".format(print_concept(axiom.lhs),
                                      print_concept(axiom.rhs))
    if isinstance(axiom, FuzzyInclusion):
        return "{0} <= {1} {2} {3}".format(
            print_concept(axiom.lhs), print_concept(axiom.rhs), axiom.cmp,
            _print_degree(axiom.degree))
    if isinstance(axiom, FuzzyAssertion):
        return "{0}({1}) {2} {3}".format(
            _print_operand(axiom.concept),
            print_individual(axiom.individual), axiom.cmp,
            _print_degree(axiom.degree))
    raise TypeError("not an axiom: {0!r}".format(axiom))


def print_query(query):
    """Canonical form of a query

    :param query: query to print
    :rtype: :class:`str`
    """
    # pylint: disable=too-many-return-statements
    if isinstance(query, CheckAxiom):
        return print_axiom(query.axiom)
    if isinstance(query, Prob):
        return "P({0})".format(print_concept(query.concept))
    if isinstance(query, CondProb):
        return "P({0} | {1})".format(print_concept(query.concept),
                                     print_concept(query.given))
    if isinstance(query, ProbGivenElement):
        return "P({0} | elem:{1})".format(print_concept(query.concept),
                                          query.element)
    if isinstance(query, Likelihood):
        return "P(elem:{0} | {1})".format(query.element,
                                          print_concept(query.concept))
    if isinstance(query, InclusionDegree):
        return "deg({0} <= {1})".format(print_concept(query.lhs),
                                        print_concept(query.rhs))
    if isinstance(query, Membership):
        return "mem({0}, {1})".format(print_concept(query.concept),
                                      print_individual(query.element))
    if isinstance(query, Plausibility):
        return "plaus({0}, {1})".format(query.src, query.dst)
    raise TypeError("not a query: {0!r}".format(query))


def print_node(node):
    """Prints any syntax tree node

    :param node: concept, axiom or query
    :rtype: :class:`str`
    """
    if isinstance(node, Concept):
        return print_concept(node)
    if isinstance(node, Axiom):
        return print_axiom(node)
    if isinstance(node, Query):
        return print_query(node)
    assert isinstance(node, Node)
    raise TypeError("unsupported node {0!r}".format(node))


if __name__ == "__main__":  # pragma: no cover
    pass
