"""Probabilities of fuzzy concepts over the domain of a trained map

The probability of a concept is the expected membership degree under a
discrete distribution over the domain. Only connective families whose
conjunction and disjunction add up pointwise give these sums the additivity
of a probability, so every query checks the family first.
"""
import csv
import io
import logging
import math
from collections import OrderedDict
import numpy as np
from somlogic.exceptions import (
    ProbabilityGuardError, UndefinedConditionalError, NameResolutionError,
    ValidationError, DataFormatError, EmptyDomainError)

# distributions summing to 1 within this tolerance are used as given
EXACT_TOLERANCE = 1e-12

# distributions within this tolerance are rescaled, anything further off is
# rejected
RENORMALIZE_TOLERANCE = 1e-6


class CrispSingleton(object):
    """Event holding exactly one domain element

    Membership is 1 at the element and 0 elsewhere. It can be passed as the
    conditioning event of :meth:`ProbModel.cond_prob`.

    :param str uid: element id
    """

    def __init__(self, uid):
        super(CrispSingleton, self).__init__()
        self.uid = uid

    def __repr__(self):
        return "CrispSingleton({0!r})".format(self.uid)


class ProbModel(object):
    """Distribution over the domain of a fuzzy model

    :param fuzzy: the fuzzy model
    :type fuzzy: :class:`~.fuzzy.FuzzyModel`
    :param dist:
        mapping of element id to probability mass. Elements left out get
        mass 0. Uniform over the domain when omitted.
    """

    def __init__(self, fuzzy, dist=None):
        super(ProbModel, self).__init__()
        self._log = logging.getLogger(__name__)
        self._fuzzy = fuzzy
        size = len(fuzzy.domain)
        if size == 0:
            raise EmptyDomainError("a distribution needs a non-empty domain")
        if dist is None:
            self._mass = np.full(size, 1.0 / size)
            self._uniform = True
        else:
            self._mass = self._check_mass(dist, size)
            self._uniform = bool(np.all(self._mass == self._mass[0]))
        self._mass.setflags(write=False)

    def _check_mass(self, dist, size):
        retval = np.zeros(size)
        for uid, mass in dist.items():
            mass = float(mass)
            if not math.isfinite(mass) or mass < 0:
                raise ValidationError(
                    "element {0} has invalid mass {1!r}".format(uid, mass))
            retval[self._fuzzy.element_index(uid)] = mass
        total = math.fsum(retval)
        if abs(total - 1.0) <= EXACT_TOLERANCE:
            return retval
        if abs(total - 1.0) <= RENORMALIZE_TOLERANCE:
            self._log.warning("distribution sums to %r, renormalizing", total)
            return retval / total
        raise ValidationError(
            "distribution sums to {0!r} instead of 1".format(total))

    @property
    def fuzzy(self):
        """Underlying fuzzy model

        :rtype: :class:`~.fuzzy.FuzzyModel`
        """
        return self._fuzzy

    @property
    def uniform(self):
        """Whether every element carries the same mass

        :rtype: :class:`bool`
        """
        return self._uniform

    def mass(self, uid):
        """Probability mass of one element

        :param str uid: element id
        :rtype: :class:`float`
        """
        return float(self._mass[self._fuzzy.element_index(uid)])

    def _guard(self):
        family = self._fuzzy.family
        if not family.pz_compatible:
            raise ProbabilityGuardError(
                "probabilities of fuzzy concepts are only additive under "
                "the zadeh and lukasiewicz connectives, not {0}".format(
                    family.name))

    def _event(self, event):
        if isinstance(event, CrispSingleton):
            retval = np.zeros(len(self._fuzzy.domain))
            retval[self._fuzzy.element_index(event.uid)] = 1.0
            return retval
        return self._fuzzy.values(event)

    def _expect(self, values):
        return float(np.dot(values, self._mass))

    def prob(self, concept):
        """Probability of a concept, the expected membership degree

        :param concept: boolean concept
        :rtype: :class:`float`
        """
        self._guard()
        return self._expect(self._fuzzy.values(concept))

    def cond_prob(self, concept, given):
        """Conditional probability P(concept | given) = P(given and concept)
        / P(given)

        :param concept: boolean concept
        :param given: boolean concept or :class:`CrispSingleton`
        :rtype: :class:`float`
        """
        self._guard()
        condition = self._event(given)
        denominator = self._expect(condition)
        if denominator == 0:
            raise UndefinedConditionalError(
                "conditioning event {0} has probability 0".format(given))
        joint = self._fuzzy.family.tnorm(condition,
                                         self._fuzzy.values(concept))
        return self._expect(joint) / denominator

    def prob_given_element(self, concept, uid):
        """Probability of a concept given one element, its membership degree

        :param concept: boolean concept
        :param str uid: element id, which must have positive mass
        :rtype: :class:`float`
        """
        self._guard()
        if self.mass(uid) == 0:
            raise UndefinedConditionalError(
                "element {0} has probability 0".format(uid))
        return self._fuzzy.membership(concept, uid)

    def concept_size(self, concept):
        """Sum of the membership degrees of a concept over the domain

        :param concept: boolean concept
        :rtype: :class:`float`
        """
        return float(np.sum(self._fuzzy.values(concept)))

    def likelihood(self, uid, concept):
        """Probability of an element given a concept

        Under a uniform distribution this is the membership degree of the
        element divided by the size of the concept, so larger concepts give
        each member a smaller likelihood. Other distributions use
        P({x} and C) / P(C).

        :param str uid: element id
        :param concept: boolean concept
        :rtype: :class:`float`
        """
        self._guard()
        index = self._fuzzy.element_index(uid)
        if self._uniform:
            size = self.concept_size(concept)
            if size == 0:
                raise UndefinedConditionalError(
                    "concept {0} has size 0".format(concept))
            return float(self._fuzzy.values(concept)[index]) / size
        denominator = self.prob(concept)
        if denominator == 0:
            raise UndefinedConditionalError(
                "concept {0} has probability 0".format(concept))
        joint = self._fuzzy.family.tnorm(
            self._event(CrispSingleton(uid)), self._fuzzy.values(concept))
        return self._expect(joint) / denominator


def parse_distribution(text, source="<string>"):
    """Parses an ``id,mass`` CSV distribution

    :param str text: CSV content
    :param str source: file name used in diagnostics
    :returns: element id to mass, in file order
    :rtype: :class:`collections.OrderedDict`
    """
    reader = csv.reader(io.StringIO(text))
    header = [cur.strip() for cur in next(reader, [])]
    if header[:2] != ["id", "mass"] or len(header) != 2:
        raise DataFormatError("header must be 'id,mass'", source)
    retval = OrderedDict()
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise DataFormatError(
                "line {0}: expected 2 fields, found {1}".format(
                    line_no, len(row)), source)
        uid = row[0].strip()
        if uid in retval:
            raise DataFormatError(
                "line {0}: duplicate id {1}".format(line_no, uid), source)
        try:
            retval[uid] = float(row[1])
        except ValueError as err:
            raise DataFormatError("line {0}: {1}".format(line_no, err),
                                  source)
    return retval


def load_distribution(path):
    """Reads an ``id,mass`` CSV distribution file

    :param str path: path to the file
    :rtype: :class:`collections.OrderedDict`
    """
    with open(path, encoding="utf-8", newline="") as handle:
        return parse_distribution(handle.read(), path)


def build_prob(fuzzy, dist=None):
    """Creates a probability model, reporting unknown ids as data errors

    :param fuzzy: fuzzy model
    :param dist: element id to mass, uniform when None
    :rtype: :class:`ProbModel`
    """
    try:
        return ProbModel(fuzzy, dist)
    except NameResolutionError as err:
        raise DataFormatError("distribution refers to {0}".format(
            str(err).replace("unknown ", "an unknown ")))


if __name__ == "__main__":  # pragma: no cover
    pass
