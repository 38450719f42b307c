"""Abstract syntax of boolean concepts, axioms and queries

Nodes are immutable and compare structurally, so they can be used as set
members and dictionary keys (for instance in the axiom sets of a training
trace).
"""
import math
import re
from somlogic.exceptions import ValidationError

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Words of the concrete syntax that can not name a category
KEYWORDS = frozenset(["and", "or", "not", "top", "bot"])

COMPARATORS = (">=", "<=", ">", "<")


class Node(object):
    """Base class for all syntax tree nodes

    Derived classes list their attributes in ``_fields``; equality, hashing
    and the debug representation are derived from them.
    """
    _fields = ()

    def __init__(self, *values):
        assert len(values) == len(self._fields)
        for name, value in zip(self._fields, values):
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("syntax tree nodes are immutable")

    def _key(self):
        return (type(self),) + tuple(getattr(self, name)
                                     for name in self._fields)

    def __eq__(self, obj):
        if not isinstance(obj, Node):
            return False
        return self._key() == obj._key()  # pylint: disable=protected-access

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "{0}({1})".format(type(self).__name__, ", ".join(
            repr(getattr(self, name)) for name in self._fields))

    def __str__(self):
        # imported here to avoid a cycle with the printer
        from somlogic.parser import print_node  # pylint: disable=import-outside-toplevel
        return print_node(self)


# ------------------------------------------------------------------ CONCEPTS
class Concept(Node):
    """Base class for boolean concepts"""

    @property
    def children(self):
        """Direct sub-concepts

        :rtype: :class:`tuple`
        """
        return tuple(getattr(self, name) for name in self._fields
                     if isinstance(getattr(self, name), Concept))

    @property
    def depth(self):
        """Height of the concept tree, 1 for leaves

        :rtype: :class:`int`
        """
        return 1 + max([child.depth for child in self.children] or [0])

    @property
    def size(self):
        """Number of nodes in the concept tree

        :rtype: :class:`int`
        """
        return 1 + sum(child.size for child in self.children)

    def atoms(self):
        """Names of every category referenced by this concept

        :rtype: :class:`set` of :class:`str`
        """
        retval = set()
        for child in self.children:
            retval |= child.atoms()
        return retval


class Top(Concept):
    """The universal concept"""


class Bot(Concept):
    """The empty concept"""


class Atom(Concept):
    """A learned category

    :param str name: identifier naming the category
    """
    _fields = ("name",)

    def __init__(self, name):
        if not isinstance(name, str) or not IDENTIFIER.match(name):
            raise ValidationError("invalid category name {0!r}".format(name))
        if name in KEYWORDS:
            raise ValidationError(
                "keyword {0!r} can not name a category".format(name))
        super(Atom, self).__init__(name)

    def atoms(self):
        return {self.name}


class Not(Concept):
    """Complement of a concept"""
    _fields = ("operand",)


class And(Concept):
    """Intersection of two concepts"""
    _fields = ("left", "right")


class Or(Concept):
    """Union of two concepts"""
    _fields = ("left", "right")


# -------------------------------------------------------------------- AXIOMS
def _check_degree(degree):
    if isinstance(degree, bool) or not isinstance(degree, (int, float)):
        raise ValidationError("degree must be a number")
    degree = float(degree)
    if math.isnan(degree) or not 0.0 <= degree <= 1.0:
        raise ValidationError(
            "degree {0!r} lies outside [0, 1]".format(degree))
    return degree


def _check_comparator(cmp):
    if cmp not in COMPARATORS:
        raise ValidationError("unknown comparator {0!r}".format(cmp))
    return cmp


def compare(value, cmp, threshold, epsilon=0.0):
    """Evaluates ``value cmp threshold``

    Non-strict comparisons accept values within ``epsilon`` of the
    threshold; strict comparisons use the raw values.

    :param float value: left operand
    :param str cmp: one of ``>=``, ``<=``, ``>``, ``<``
    :param float threshold: right operand
    :param float epsilon: tolerance for the non-strict comparators
    :rtype: :class:`bool`
    """
    if cmp == ">=":
        return value >= threshold - epsilon
    if cmp == "<=":
        return value <= threshold + epsilon
    if cmp == ">":
        return value > threshold
    if cmp == "<":
        return value < threshold
    raise ValidationError("unknown comparator {0!r}".format(cmp))


class Axiom(Node):
    """Base class for statements that are satisfied or not by a model"""


class StrictInclusion(Axiom):
    """Concept inclusion ``lhs <= rhs``"""
    _fields = ("lhs", "rhs")


class DefeasibleInclusion(Axiom):
    """Typicality inclusion ``T(lhs) <= rhs``"""
    _fields = ("lhs", "rhs")


class FuzzyInclusion(Axiom):
    """Fuzzy concept inclusion ``lhs <= rhs cmp degree``"""
    _fields = ("lhs", "rhs", "cmp", "degree")

    def __init__(self, lhs, rhs, cmp, degree):
        super(FuzzyInclusion, self).__init__(
            lhs, rhs, _check_comparator(cmp), _check_degree(degree))


class FuzzyAssertion(Axiom):
    """Fuzzy concept assertion ``concept(individual) cmp degree``"""
    _fields = ("concept", "individual", "cmp", "degree")

    def __init__(self, concept, individual, cmp, degree):
        super(FuzzyAssertion, self).__init__(
            concept, str(individual), _check_comparator(cmp),
            _check_degree(degree))


# ------------------------------------------------------------------- QUERIES
class Query(Node):
    """Base class for statements evaluated against a model"""


class CheckAxiom(Query):
    """Satisfaction check of an axiom"""
    _fields = ("axiom",)


class Prob(Query):
    """Probability ``P(concept)``"""
    _fields = ("concept",)


class CondProb(Query):
    """Conditional probability ``P(concept | given)``"""
    _fields = ("concept", "given")


class ProbGivenElement(Query):
    """Probability of a concept given one element, ``P(C | elem:x)``"""
    _fields = ("concept", "element")


class Likelihood(Query):
    """Likelihood of an element given a concept, ``P(elem:x | C)``"""
    _fields = ("element", "concept")


class InclusionDegree(Query):
    """Fuzzy inclusion degree ``deg(lhs <= rhs)``"""
    _fields = ("lhs", "rhs")


class Membership(Query):
    """Fuzzy membership ``mem(concept, elem:x)``"""
    _fields = ("concept", "element")


class Plausibility(Query):
    """Plausibility of the typicality inclusion between two categories"""
    _fields = ("src", "dst")


if __name__ == "__main__":  # pragma: no cover
    pass
