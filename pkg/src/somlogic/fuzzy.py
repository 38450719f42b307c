"""Fuzzy interpretation of a trained map

An element belongs to a learned category to the generalization degree of
the category towards it. Complex concepts combine these degrees with the
functions of a pluggable connective family.
"""
import csv
import logging
from collections import namedtuple
import numpy as np
from somlogic.concepts import (
    Top, Bot, Atom, Not, And, Or, FuzzyInclusion,
    FuzzyAssertion, StrictInclusion, compare)
from somlogic.cwm import build_domain
from somlogic.exceptions import (
    NameResolutionError, EmptyDomainError, UndefinedCategoryError,
    ValidationError, ConfigurationError)
from somlogic.metrics import category_stats, pairwise_distances
from somlogic.utils.plugin_api import get_connective_family

# tolerance of the non-strict comparisons against axiom degrees
EPSILON = 1e-9

FuzzyResult = namedtuple("FuzzyResult", "holds degree witness")


class FuzzyModel(object):
    """Fuzzy interpretation over a finite domain

    :param list domain: :class:`~.cwm.DomainElement` objects
    :param categories: mapping of category name to
        :class:`~.metrics.CategoryStats`
    :param family: connective family, Zadeh logic when omitted
    :type family: :class:`~.utils.connectives.ConnectiveFamily`
    """

    def __init__(self, domain, categories, family=None):
        super(FuzzyModel, self).__init__()
        self._log = logging.getLogger(__name__)
        self._domain = tuple(domain)
        self._index = {}
        for position, element in enumerate(self._domain):
            if element.uid in self._index:
                raise ValidationError(
                    "duplicate domain element id " + element.uid)
            self._index[element.uid] = position
        self._categories = dict(categories)
        for stats in self._categories.values():
            if stats.b == 0:
                raise UndefinedCategoryError(
                    "category {0} has no best-matching units".format(
                        stats.name))
        self._family = family if family is not None else \
            get_connective_family()
        if self._domain:
            self._points = np.vstack([cur.vector for cur in self._domain])
        else:
            self._points = np.zeros((0, 0))
        self._atoms = {}

    @classmethod
    def from_cwm(cls, model, family=None):
        """Fuzzy model over the domain and categories of a preferential one

        :param model: preferential model
        :type model: :class:`~.cwm.CwmModel`
        :param family: connective family
        :rtype: :class:`FuzzyModel`
        """
        return cls(model.domain, model.categories, family)

    @property
    def domain(self):
        """Domain elements in construction order

        :rtype: :class:`tuple`
        """
        return self._domain

    @property
    def element_ids(self):
        """Ids of the domain elements

        :rtype: :class:`list` of :class:`str`
        """
        return [cur.uid for cur in self._domain]

    @property
    def categories(self):
        """Category name to representation

        :rtype: :class:`dict`
        """
        return self._categories

    @property
    def family(self):
        """Connective family interpreting the boolean operators

        :rtype: :class:`~.utils.connectives.ConnectiveFamily`
        """
        return self._family

    def element_index(self, uid):
        """Position of an element in the domain

        :param str uid: element id
        :rtype: :class:`int`
        """
        try:
            return self._index[uid]
        except KeyError:
            raise NameResolutionError("unknown domain element " + str(uid))

    def _atom(self, name):
        # memoized per category; arrays are read-only so sharing is safe
        if name in self._atoms:
            return self._atoms[name]
        try:
            stats = self._categories[name]
        except KeyError:
            raise NameResolutionError("unknown category " + str(name))
        if self._domain:
            distances = pairwise_distances(
                self._points, stats.bmu_vectors).min(axis=1)
        else:
            distances = np.zeros(0)
        retval = atom_degrees(distances, stats.d_max)
        retval.setflags(write=False)
        self._atoms[name] = retval
        return retval

    def values(self, concept):
        """Membership degree of every domain element

        :param concept: boolean concept
        :returns: array parallel to :attr:`domain`
        :rtype: :class:`numpy.ndarray`
        """
        size = len(self._domain)
        if isinstance(concept, Top):
            return np.ones(size)
        if isinstance(concept, Bot):
            return np.zeros(size)
        if isinstance(concept, Atom):
            return self._atom(concept.name)
        if isinstance(concept, Not):
            return np.asarray(self._family.negation(
                self.values(concept.operand)), dtype=float)
        if isinstance(concept, And):
            return np.asarray(self._family.tnorm(
                self.values(concept.left), self.values(concept.right)),
                              dtype=float)
        if isinstance(concept, Or):
            return np.asarray(self._family.snorm(
                self.values(concept.left), self.values(concept.right)),
                              dtype=float)
        raise TypeError("not a concept: {0!r}".format(concept))

    def membership(self, concept, uid):
        """Degree to which an element belongs to a concept

        :param concept: boolean concept
        :param str uid: element id
        :rtype: :class:`float`
        """
        index = self.element_index(uid)
        return float(self.values(concept)[index])

    def inclusion_degree(self, lhs, rhs):
        """Degree of the inclusion of lhs in rhs

        The smallest implication degree over the domain, together with the
        element attaining it (the smallest id when several do).

        :param lhs: concept
        :param rhs: concept
        :returns: (degree, witness element id)
        :rtype: :class:`tuple`
        """
        if not self._domain:
            raise EmptyDomainError(
                "inclusion degree needs a non-empty domain")
        degrees = np.asarray(self._family.implication(
            self.values(lhs), self.values(rhs)), dtype=float)
        degrees = np.broadcast_to(degrees, (len(self._domain),))
        value = float(degrees.min())
        witness = min(self._domain[i].uid
                      for i in np.flatnonzero(degrees == value))
        return value, witness

    def check_fuzzy_axiom(self, axiom):
        """Evaluates a fuzzy inclusion or assertion

        A strict inclusion is read as a fuzzy inclusion of degree 1.

        :param axiom: the axiom to check
        :returns: whether it holds, the degree reached and, for
            inclusions, the element attaining it
        :rtype: :class:`FuzzyResult`
        """
        if isinstance(axiom, StrictInclusion):
            axiom = FuzzyInclusion(axiom.lhs, axiom.rhs, ">=", 1.0)
        if isinstance(axiom, FuzzyInclusion):
            degree, witness = self.inclusion_degree(axiom.lhs, axiom.rhs)
        elif isinstance(axiom, FuzzyAssertion):
            degree = self.membership(axiom.concept, axiom.individual)
            witness = None
        else:
            raise TypeError("not a fuzzy axiom: {0!r}".format(axiom))
        return FuzzyResult(
            compare(degree, axiom.cmp, axiom.degree, EPSILON), degree,
            witness)

    def extract_fuzzy_kb(self, threshold=0.0):
        """Fuzzy inclusions between learned categories

        :param float threshold: smallest degree of an emitted inclusion
        :returns: (axiom, degree) pairs ordered by category pair
        :rtype: :class:`list`
        """
        if not 0.0 <= threshold <= 1.0:
            raise ConfigurationError("threshold must lie in [0, 1]")
        names = sorted(self._categories)
        retval = []
        for ci in names:
            for cj in names:
                if ci == cj:
                    continue
                degree, _ = self.inclusion_degree(Atom(ci), Atom(cj))
                if compare(degree, ">=", threshold, EPSILON):
                    retval.append(
                        (FuzzyInclusion(Atom(ci), Atom(cj), ">=", degree),
                         degree))
        return retval


def atom_degrees(distances, d_max):
    """Generalization degrees e^(-d/d_max) of an array of distances

    A zero precision gives degree 1 at distance 0 and 0 elsewhere.

    :param distances: nonnegative distances
    :param float d_max: category precision
    :rtype: :class:`numpy.ndarray`
    """
    distances = np.asarray(distances, dtype=float)
    if d_max > 0:
        return np.exp(-(distances / d_max))
    return np.where(distances == 0.0, 1.0, 0.0)


def build_fuzzy(som_map, stimuli, probes=(), family=None):
    """Builds the fuzzy model of a trained map

    :param som_map: map trained on ``stimuli``
    :param list stimuli: labeled training stimuli
    :param list probes: extra stimuli added to the domain
    :param family: connective family, Zadeh logic when omitted
    :rtype: :class:`FuzzyModel`
    """
    return FuzzyModel(build_domain(som_map, stimuli, probes),
                      category_stats(som_map, stimuli), family)


def save_membership_csv(path, model):
    """Dumps the atom memberships of every element for external plotting

    :param str path: output CSV path
    :param model: fuzzy model
    :type model: :class:`FuzzyModel`
    """
    names = sorted(model.categories)
    columns = [model.values(Atom(name)) for name in names]
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id", "kind"] + names)
        for position, element in enumerate(model.domain):
            writer.writerow([element.uid, element.kind] +
                            [repr(float(col[position])) for col in columns])


if __name__ == "__main__":  # pragma: no cover
    pass
