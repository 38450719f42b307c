"""Concept-wise multipreference model of a trained map

The domain holds the training stimuli, one element per distinct
best-matching unit vector and any probe stimuli. Every learned category
ranks the domain by distance from its representation; the rankings combine
into a global preference in which a more specific category overrides the
rankings of the categories it is more specific than.
"""
import logging
import re
from collections import OrderedDict
import numpy as np
from somlogic.concepts import (
    Top, Bot, Atom, Not, And, Or, StrictInclusion, DefeasibleInclusion)
from somlogic.exceptions import (
    NameResolutionError, SpecificityCycleError, ValidationError,
    DataFormatError, UndefinedCategoryError, ConfigurationError)
from somlogic.metrics import (
    category_stats, pairwise_distances, bmu_set_distance, plausibility)
from somlogic.parser import parse_kb_statement, print_axiom
from somlogic.stimulus import validate_dataset

INPUT_STIMULUS = "InputStimulus"
BMU_ELEMENT = "BmuElement"
PROBE = "Probe"

GENERAL = "General"
FAST_EXACT = "FastExact"
FAST_SUFFICIENT = "FastSufficient"

DEFAULT_DISTANCE_BUDGET = 2000000

# rows of the domain compared at once when searching for global minima
_CHUNK = 256

_SPECIFICITY_LINE = re.compile(
    r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*>\s*([A-Za-z_][A-Za-z0-9_]*)\s*\Z")


class DomainElement(object):
    """Member of the interpretation domain

    :param str uid: element id, unique within a model
    :param vector: point of the input space
    :param str kind: one of InputStimulus, BmuElement or Probe
    """

    def __init__(self, uid, vector, kind):
        super(DomainElement, self).__init__()
        assert kind in (INPUT_STIMULUS, BMU_ELEMENT, PROBE)
        self._uid = uid
        self._vector = np.array(vector, dtype=float)
        self._vector.setflags(write=False)
        self._kind = kind

    def __repr__(self):
        return "DomainElement({0!r}, {1})".format(self._uid, self._kind)

    @property
    def uid(self):
        """Element id

        :rtype: :class:`str`
        """
        return self._uid

    @property
    def vector(self):
        """Read-only coordinates of the element

        :rtype: :class:`numpy.ndarray`
        """
        return self._vector

    @property
    def kind(self):
        """What the element stands for: InputStimulus, BmuElement or Probe

        :rtype: :class:`str`
        """
        return self._kind


class CheckResult(object):
    """Outcome of an axiom check

    :param bool holds: whether the axiom is satisfied
    :param str method: General, FastExact or FastSufficient
    :param str counterexample: violating element id, general checks only
    :param float plausibility: plausibility of a typicality inclusion
    """

    def __init__(self, holds, method, counterexample=None, plausibility=None):
        super(CheckResult, self).__init__()
        assert method in (GENERAL, FAST_EXACT, FAST_SUFFICIENT)
        assert counterexample is None or (not holds and method == GENERAL)
        self.holds = bool(holds)
        self.method = method
        self.counterexample = counterexample
        self.plausibility = plausibility

    def __bool__(self):
        return self.holds

    def __eq__(self, obj):
        if not isinstance(obj, CheckResult):
            return False
        return (self.holds, self.method, self.counterexample,
                self.plausibility) == (obj.holds, obj.method,
                                       obj.counterexample, obj.plausibility)

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash((self.holds, self.method, self.counterexample))

    def __repr__(self):
        return "CheckResult(holds={0}, method={1}, counterexample={2!r}, " \
               "plausibility={3!r})".format(self.holds, self.method,
                                            self.counterexample,
                                            self.plausibility)


def close_specificity(pairs, names):
    """Transitive closure of a specificity relation

    :param pairs: iterable of (more specific, less specific) category names
    :param names: every known category name
    :returns: the closed relation
    :rtype: :class:`frozenset` of :class:`tuple`
    """
    names = list(names)
    known = set(names)
    successors = {name: set() for name in names}
    for higher, lower in pairs:
        for name in (higher, lower):
            if name not in known:
                raise NameResolutionError(
                    "unknown category {0} in specificity relation".format(
                        name))
        successors[higher].add(lower)

    # depth first search; a back edge closes a cycle
    state = {}
    stack = []

    def visit(name):
        state[name] = "open"
        stack.append(name)
        for nxt in sorted(successors[name]):
            if state.get(nxt) == "open":
                raise SpecificityCycleError(stack[stack.index(nxt):] + [nxt])
            if nxt not in state:
                visit(nxt)
        stack.pop()
        state[name] = "done"

    for name in sorted(names):
        if name not in state:
            visit(name)

    retval = set()
    for name in names:
        pending = list(successors[name])
        reached = set()
        while pending:
            cur = pending.pop()
            if cur in reached:
                continue
            reached.add(cur)
            pending.extend(successors[cur])
        retval.update((name, cur) for cur in reached)
    return frozenset(retval)


class CwmModel(object):
    """Preferential interpretation of a trained map

    Instances are immutable; every check is a pure read.

    :param list domain: :class:`DomainElement` objects
    :param categories: mapping of category name to
        :class:`~.metrics.CategoryStats`
    :param specificity:
        pairs (C_h, C_j) meaning C_h is more specific than C_j. The relation
        is closed transitively and must be acyclic.
    :param int distance_budget:
        largest number of element/category pairs whose distances are computed
        up front. Larger models recompute distances on demand.
    """

    def __init__(self, domain, categories, specificity=(),
                 distance_budget=DEFAULT_DISTANCE_BUDGET, _table=None):
        super(CwmModel, self).__init__()
        self._log = logging.getLogger(__name__)
        self._domain = tuple(domain)
        self._index = {}
        for position, element in enumerate(self._domain):
            if element.uid in self._index:
                raise ValidationError(
                    "duplicate domain element id " + element.uid)
            self._index[element.uid] = position

        self._categories = OrderedDict(
            (name, categories[name]) for name in sorted(categories))
        for stats in self._categories.values():
            if stats.b == 0:
                raise UndefinedCategoryError(
                    "category {0} has no best-matching units".format(
                        stats.name))
        self._names = list(self._categories)
        self._position = {name: i for i, name in enumerate(self._names)}
        self._d_max = np.array(
            [stats.d_max for stats in self._categories.values()])

        self._specificity = close_specificity(specificity, self._names)
        size = len(self._names)
        self._over = np.zeros((size, size), dtype=int)
        for higher, lower in self._specificity:
            self._over[self._position[higher], self._position[lower]] = 1

        if self._domain:
            self._points = np.vstack([cur.vector for cur in self._domain])
        else:
            self._points = np.zeros((0, 0))
        self._budget = distance_budget
        self._table = _table
        if self._table is None and \
                len(self._domain) * size <= distance_budget:
            self._table = self._compute_table()
            self._log.debug("cached %d x %d distance table",
                            len(self._domain), size)
        elif self._table is None:
            self._log.debug("distance table exceeds budget of %d pairs, "
                            "computing distances on demand", distance_budget)

    def _compute_table(self):
        retval = np.zeros((len(self._domain), len(self._names)))
        if not self._domain:
            return retval
        for position, stats in enumerate(self._categories.values()):
            retval[:, position] = pairwise_distances(
                self._points, stats.bmu_vectors).min(axis=1)
        retval.setflags(write=False)
        return retval

    def with_specificity(self, specificity):
        """Copy of this model with a different specificity relation

        :param specificity: (C_h, C_j) pairs
        :rtype: :class:`CwmModel`
        """
        return CwmModel(self._domain, self._categories, specificity,
                        self._budget, self._table)

    # ------------------------------------------------------------ accessors
    @property
    def domain(self):
        """Domain elements in construction order

        :rtype: :class:`tuple` of :class:`DomainElement`
        """
        return self._domain

    @property
    def categories(self):
        """Category name to representation, ordered by name

        :rtype: :class:`collections.OrderedDict`
        """
        return self._categories

    @property
    def specificity(self):
        """Closed specificity relation as (C_h, C_j) pairs

        :rtype: :class:`frozenset`
        """
        return self._specificity

    @property
    def cached(self):
        """Whether the distance table was computed up front

        :rtype: :class:`bool`
        """
        return self._table is not None

    @property
    def element_ids(self):
        """Ids of every domain element, in construction order

        :rtype: :class:`list` of :class:`str`
        """
        return [cur.uid for cur in self._domain]

    def element(self, uid):
        """Looks up a domain element by id

        :param str uid: element id
        :rtype: :class:`DomainElement`
        """
        return self._domain[self._element_index(uid)]

    def stats(self, name):
        """Representation of a named category

        :param str name: category name
        :rtype: :class:`~.metrics.CategoryStats`
        """
        try:
            return self._categories[name]
        except KeyError:
            raise NameResolutionError("unknown category " + str(name))

    def _element_index(self, uid):
        try:
            return self._index[uid]
        except KeyError:
            raise NameResolutionError("unknown domain element " + str(uid))

    def _category_index(self, name):
        try:
            return self._position[name]
        except KeyError:
            raise NameResolutionError("unknown category " + str(name))

    def _column(self, name):
        """Distance of every domain element from one category"""
        position = self._category_index(name)
        if self._table is not None:
            return self._table[:, position]
        if not self._domain:
            return np.zeros(0)
        return pairwise_distances(
            self._points, self._categories[name].bmu_vectors).min(axis=1)

    def _rows(self, indices):
        """Distances of selected elements from every category, shape (m, k)"""
        if self._table is not None:
            return self._table[indices]
        retval = np.zeros((len(indices), len(self._names)))
        points = self._points[indices]
        for position, stats in enumerate(self._categories.values()):
            retval[:, position] = pairwise_distances(
                points, stats.bmu_vectors).min(axis=1)
        return retval

    def distance(self, uid, name):
        """Distance d(y, C) of a domain element from a category

        :param str uid: element id
        :param str name: category name
        :rtype: :class:`float`
        """
        index = self._element_index(uid)
        return float(self._rows([index])[0, self._category_index(name)])

    # ----------------------------------------------------------- extensions
    def _mask(self, concept):
        if isinstance(concept, Top):
            return np.ones(len(self._domain), dtype=bool)
        if isinstance(concept, Bot):
            return np.zeros(len(self._domain), dtype=bool)
        if isinstance(concept, Atom):
            return self._column(concept.name) <= \
                self._d_max[self._category_index(concept.name)]
        if isinstance(concept, Not):
            return ~self._mask(concept.operand)
        if isinstance(concept, And):
            return self._mask(concept.left) & self._mask(concept.right)
        if isinstance(concept, Or):
            return self._mask(concept.left) | self._mask(concept.right)
        raise TypeError("not a concept: {0!r}".format(concept))

    def _ids(self, mask):
        return frozenset(self._domain[i].uid for i in np.flatnonzero(mask))

    def extension(self, concept):
        """Elements belonging to a concept

        :param concept: boolean concept
        :rtype: :class:`frozenset` of element ids
        """
        return self._ids(self._mask(concept))

    # ---------------------------------------------------------- preferences
    def pref_less(self, name, x, y):
        """Whether x is strictly preferred to y by one category

        :param str name: category name
        :param str x: element id
        :param str y: element id
        :rtype: :class:`bool`
        """
        return self.distance(x, name) < self.distance(y, name)

    def pref_equiv(self, name, x, y):
        """Whether one category ranks x and y equally

        :param str name: category name
        :param str x: element id
        :param str y: element id
        :rtype: :class:`bool`
        """
        return self.distance(x, name) == self.distance(y, name)

    def _beats(self, left, right):
        """Global preference between rows of distances

        :param left: array (a, k) of distances of the candidate smaller elements
        :param right: array (b, k) of distances of the candidate larger ones
        :returns: boolean array (a, b), True where left[i] < right[j]
        """
        less = left[:, np.newaxis, :] < right[np.newaxis, :, :]
        leq = left[:, np.newaxis, :] <= right[np.newaxis, :, :]
        # overridden[i, j, c]: some category more specific than c prefers i
        overridden = np.matmul(less.astype(int), self._over) > 0
        return np.any(less, axis=2) & np.all(leq | overridden, axis=2)

    def global_less(self, x, y):
        """Whether x is globally preferred to y

        Some category must prefer x, and every category ranking y above x
        must be overridden by a more specific category preferring x.

        :param str x: element id
        :param str y: element id
        :rtype: :class:`bool`
        """
        rows = self._rows([self._element_index(x), self._element_index(y)])
        return bool(self._beats(rows[:1], rows[1:])[0, 0])

    def _minimal(self, mask, name=None):
        indices = np.flatnonzero(mask)
        if indices.size == 0:
            return mask
        retval = np.zeros(len(self._domain), dtype=bool)
        if name is not None:
            column = self._column(name)[indices]
            retval[indices[column == column.min()]] = True
            return retval

        rows = self._rows(indices)
        dominated = np.zeros(indices.size, dtype=bool)
        for start in range(0, indices.size, _CHUNK):
            block = rows[start:start + _CHUNK]
            dominated |= np.any(self._beats(block, rows), axis=0)
        retval[indices[~dominated]] = True
        return retval

    def typ_extension(self, concept, category=None):
        """Most typical elements of a concept

        :param concept: boolean concept
        :param str category:
            when given, minima are taken under this category's preference
            alone instead of the global preference
        :rtype: :class:`frozenset` of element ids
        """
        if category is not None:
            self._category_index(category)
        return self._ids(self._minimal(self._mask(concept), category))

    # --------------------------------------------------------------- checks
    def _inclusion(self, lhs_mask, rhs_mask):
        violators = lhs_mask & ~rhs_mask
        if not violators.any():
            return CheckResult(True, GENERAL)
        witness = min(self._domain[i].uid for i in np.flatnonzero(violators))
        return CheckResult(False, GENERAL, witness)

    def check_strict_general(self, lhs, rhs):
        """Checks lhs <= rhs by comparing extensions

        :param lhs: concept
        :param rhs: concept
        :rtype: :class:`CheckResult`
        """
        return self._inclusion(self._mask(lhs), self._mask(rhs))

    def check_typ_general(self, lhs, rhs, route_atomic=True):
        """Checks T(lhs) <= rhs over the domain

        A category-level inclusion is routed to :meth:`check_typ_fast`
        unless ``route_atomic`` is False. An atomic left-hand side takes its
        minima under its own category's preference, any other concept under
        the global preference.

        :param lhs: concept
        :param rhs: concept
        :param bool route_atomic: use the category-level test when possible
        :rtype: :class:`CheckResult`
        """
        if route_atomic and isinstance(lhs, Atom) and isinstance(rhs, Atom):
            self._log.debug("routing T(%s) <= %s to the fast check",
                            lhs.name, rhs.name)
            return self.check_typ_fast(lhs.name, rhs.name)
        name = lhs.name if isinstance(lhs, Atom) else None
        return self._inclusion(self._minimal(self._mask(lhs), name),
                               self._mask(rhs))

    def check_typ_fast(self, ci, cj):
        """Category-level check of T(ci) <= cj

        Holds when every best-matching unit of ci lies within the precision
        of cj. Exact with respect to the minima of ci under its own
        preference, and independent of the domain size.

        :param str ci: category name
        :param str cj: category name
        :rtype: :class:`CheckResult`
        """
        src, dst = self.stats(ci), self.stats(cj)
        holds = bmu_set_distance(src, dst) <= dst.d_max
        return CheckResult(holds, FAST_EXACT,
                           plausibility=plausibility(src, dst))

    def check_strict_fast(self, ci, cj):
        """Category-level sufficient test for ci <= cj

        Every element of ci lies within d_max(ci) of a unit of ci, so the
        inclusion follows when the units of ci are that much inside cj. The
        converse does not hold: a failing test proves nothing.

        :param str ci: category name
        :param str cj: category name
        :rtype: :class:`CheckResult`
        """
        src, dst = self.stats(ci), self.stats(cj)
        holds = bmu_set_distance(src, dst) + src.d_max <= dst.d_max
        return CheckResult(holds, FAST_SUFFICIENT)

    def check_strict(self, ci, cj, exact=True):
        """Category-level strict inclusion, fast test first

        :param str ci: category name
        :param str cj: category name
        :param bool exact:
            fall back to the extension comparison when the fast test fails
        :rtype: :class:`CheckResult`
        """
        retval = self.check_strict_fast(ci, cj)
        if retval.holds or not exact:
            return retval
        self._log.debug("fast test failed for %s <= %s, comparing extensions",
                        ci, cj)
        return self.check_strict_general(Atom(ci), Atom(cj))

    # ------------------------------------------------------------ knowledge
    def infer_specificity(self):
        """Specificity derived from strict inclusions between categories

        :returns: pairs (C_h, C_j) where C_h is included in C_j but not
            conversely
        :rtype: :class:`frozenset`
        """
        masks = {name: self._mask(Atom(name)) for name in self._names}
        retval = set()
        for higher in self._names:
            for lower in self._names:
                if higher == lower:
                    continue
                inside = not np.any(masks[higher] & ~masks[lower])
                outside = np.any(masks[lower] & ~masks[higher])
                if inside and outside:
                    retval.add((higher, lower))
        return frozenset(retval)

    def extract_kb(self, threshold=0.0):
        """Category-level knowledge satisfied by the model

        :param float threshold:
            smallest plausibility of an emitted typicality inclusion
        :returns: (axiom, plausibility) pairs ordered by category pair;
            the plausibility is None for strict inclusions
        :rtype: :class:`list`
        """
        if not 0.0 <= threshold <= 1.0:
            raise ConfigurationError("threshold must lie in [0, 1]")
        retval = []
        for ci in self._names:
            for cj in self._names:
                if ci == cj:
                    continue
                if self.check_strict_general(Atom(ci), Atom(cj)).holds:
                    retval.append((StrictInclusion(Atom(ci), Atom(cj)), None))
                typ = self.check_typ_fast(ci, cj)
                if typ.holds and typ.plausibility >= threshold:
                    retval.append((DefeasibleInclusion(Atom(ci), Atom(cj)),
                                   typ.plausibility))
        self._log.debug("extracted %d axioms at threshold %s", len(retval),
                        threshold)
        return retval


def bmu_element_id(unit):
    """Id of the domain element standing for a grid unit

    :param tuple unit: (row, col)
    :rtype: :class:`str`
    """
    return "bmu:{0}:{1}".format(unit[0], unit[1])


def build_domain(som_map, stimuli, probes=(), pending=()):
    """Domain of the model of a map trained on ``stimuli``

    :param som_map: trained map
    :param list stimuli: labeled training stimuli
    :param list probes: extra stimuli to include, labels ignored
    :param list pending:
        training stimuli not presented yet. They belong to the domain but
        contribute no best-matching unit.
    :rtype: :class:`list` of :class:`DomainElement`
    """
    dim = som_map.config.dim
    validate_dataset(stimuli, dim=dim, labeled=True)
    validate_dataset(list(stimuli) + list(pending) + list(probes), dim=dim,
                     labeled=False)
    retval = [DomainElement(cur.uid, cur.vector, INPUT_STIMULUS)
              for cur in list(stimuli) + list(pending)]

    units = {}
    for cur in stimuli:
        unit = som_map.find_bmu(cur.vector)
        key = tuple(som_map.unit_weight(unit).tolist())
        if key not in units or unit < units[key]:
            units[key] = unit
    taken = set(cur.uid for cur in retval) | set(cur.uid for cur in probes)
    for unit in sorted(units.values()):
        uid = bmu_element_id(unit)
        if uid in taken:
            raise ValidationError(
                "stimulus id {0} collides with a best-matching unit "
                "element".format(uid))
        retval.append(DomainElement(uid, som_map.unit_weight(unit),
                                    BMU_ELEMENT))

    retval.extend(DomainElement(cur.uid, cur.vector, PROBE) for cur in probes)
    return retval


def build_cwm(som_map, stimuli, probes=(), specificity_overrides=(),
              distance_budget=DEFAULT_DISTANCE_BUDGET, pending=()):
    """Builds the preferential model of a trained map

    The specificity relation combines the overrides with the relation
    inferred from strict inclusions between the learned categories.

    :param som_map: map trained on ``stimuli``
    :type som_map: :class:`~.som.SomMap`
    :param list stimuli: labeled training stimuli
    :param list probes: extra stimuli added to the domain
    :param specificity_overrides: (C_h, C_j) pairs from an external source
    :param int distance_budget: see :class:`CwmModel`
    :param list pending: see :func:`build_domain`
    :rtype: :class:`CwmModel`
    """
    overrides = list(specificity_overrides)
    domain = build_domain(som_map, stimuli, probes, pending)
    categories = category_stats(som_map, stimuli)
    model = CwmModel(domain, categories, overrides, distance_budget)
    inferred = model.infer_specificity()
    logging.getLogger(__name__).info(
        "built model with %d elements, %d categories, %d inferred "
        "specificity pairs", len(domain), len(categories), len(inferred))
    return model.with_specificity(set(inferred) | set(overrides))


# ---------------------------------------------------------------- FILE I/O
def parse_specificity(text, source="<string>"):
    """Parses specificity overrides, one ``Ch > Cj`` pair per line

    :param str text: file content
    :param str source: file name used in diagnostics
    :rtype: :class:`list` of :class:`tuple`
    """
    retval = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        match = _SPECIFICITY_LINE.match(line)
        if match is None:
            raise DataFormatError(
                "line {0}: expected '<category> > <category>'".format(line_no),
                source)
        retval.append((match.group(1), match.group(2)))
    return retval


def load_specificity(path):
    """Reads a specificity override file

    :param str path: path to the file
    :rtype: :class:`list` of :class:`tuple`
    """
    with open(path, encoding="utf-8") as handle:
        return parse_specificity(handle.read(), path)


def dumps_kb(entries, specificity=()):
    """Text form of an extracted knowledge base

    :param entries: (axiom, plausibility) pairs as from
        :meth:`CwmModel.extract_kb`
    :param specificity: (C_h, C_j) pairs recorded as header comments
    :rtype: :class:`str`
    """
    lines = ["# specificity: {0} > {1}".format(higher, lower)
             for higher, lower in sorted(specificity)]
    for axiom, weight in entries:
        line = print_axiom(axiom)
        if weight is not None:
            line += " @ plausibility={0!r}".format(float(weight))
        lines.append(line)
    return "".join(line + "\n" for line in lines)


def parses_kb(text):
    """Decodes the output of :func:`dumps_kb`

    :param str text: file content
    :returns: (entries, specificity pairs)
    :rtype: :class:`tuple`
    """
    entries = []
    specificity = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("# specificity:"):
            specificity.extend(parse_specificity(
                stripped[len("# specificity:"):]))
            continue
        if not stripped or stripped.startswith("#"):
            continue
        entries.append(parse_kb_statement(line, line_no))
    return entries, specificity


def save_kb(path, entries, specificity=()):
    """Writes an extracted knowledge base

    :param str path: output path
    :param entries: (axiom, plausibility) pairs
    :param specificity: (C_h, C_j) pairs recorded in the header
    """
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps_kb(entries, specificity))


def load_kb(path):
    """Reads a knowledge base written by :func:`save_kb`

    :param str path: path to the file
    :returns: (entries, specificity pairs)
    :rtype: :class:`tuple`
    """
    with open(path, encoding="utf-8") as handle:
        return parses_kb(handle.read())


if __name__ == "__main__":  # pragma: no cover
    pass
