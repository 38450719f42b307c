"""Distance-derived quantities computed from the category representations
of a trained map

Every distance is Euclidean and every function here is pure, so results may
be shared between threads.
"""
import math
from collections import OrderedDict
import numpy as np
from somlogic.exceptions import UndefinedCategoryError, ConfigurationError


class CategoryStats(object):
    """Map representation of one category

    :param str name: category name
    :param bmu_vectors:
        array-like of shape (b, dim) holding the distinct weight vectors of
        the best-matching units of the category's exemplars
    :param float d_max:
        category precision, the largest distance of an exemplar from its own
        best-matching unit
    :param units:
        optional grid coordinates of the units, parallel to ``bmu_vectors``
    :param int exemplars: number of exemplars the statistics were built from
    """

    # pylint: disable=too-many-arguments
    def __init__(self, name, bmu_vectors, d_max, units=None, exemplars=None):
        super(CategoryStats, self).__init__()
        self._name = name
        vectors = np.array(bmu_vectors, dtype=float)
        if vectors.ndim == 1:
            # a flat sequence is a single vector
            vectors = vectors.reshape(1, -1) if vectors.size else \
                vectors.reshape(0, 0)
        vectors.setflags(write=False)
        self._vectors = vectors
        self._d_max = float(d_max)
        if self._d_max < 0:
            raise ConfigurationError("d_max must be nonnegative")
        self._units = tuple(units) if units is not None else ()
        self._exemplars = exemplars

    def __repr__(self):
        return "CategoryStats({0!r}, b={1}, d_max={2!r})".format(
            self._name, self.b, self._d_max)

    @property
    def name(self):
        """Category name

        :rtype: :class:`str`
        """
        return self._name

    @property
    def bmu_vectors(self):
        """Read-only array of shape (b, dim) of best-matching unit weights

        :rtype: :class:`numpy.ndarray`
        """
        return self._vectors

    @property
    def d_max(self):
        """Category precision

        :rtype: :class:`float`
        """
        return self._d_max

    @property
    def units(self):
        """Grid coordinates of the best-matching units, when known

        :rtype: :class:`tuple`
        """
        return self._units

    @property
    def exemplars(self):
        """Number of exemplars these statistics summarise, when known

        :rtype: :class:`int`
        """
        return self._exemplars

    @property
    def b(self):  # pylint: disable=invalid-name
        """Number of distinct best-matching unit vectors

        :rtype: :class:`int`
        """
        return self._vectors.shape[0]


def pairwise_distances(points, vectors):
    """Euclidean distance of every point to every vector

    Shared by all distance computations so the same pair of vectors always
    yields the same floating point value.

    :param points: array of shape (n, dim)
    :param vectors: array of shape (b, dim)
    :returns: array of shape (n, b)
    :rtype: :class:`numpy.ndarray`
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    diff = points[:, np.newaxis, :] - vectors[np.newaxis, :, :]
    return np.sqrt(np.sum(diff * diff, axis=2))


def category_stats(som_map, stimuli):
    """Builds the representation of every category present in a dataset

    :param som_map: trained map
    :type som_map: :class:`~.som.SomMap`
    :param list stimuli: labeled exemplars
    :returns: category name to statistics, ordered by name
    :rtype: :class:`collections.OrderedDict`
    """
    grouped = {}
    for cur in stimuli:
        if cur.category is None:
            raise ConfigurationError(
                "stimulus {0} has no category".format(cur.uid))
        grouped.setdefault(cur.category, []).append(cur)

    retval = OrderedDict()
    for name in sorted(grouped):
        vectors = []
        units = []
        seen = set()
        d_max = 0.0
        for cur in grouped[name]:
            unit = som_map.find_bmu(cur.vector)
            weight = som_map.unit_weight(unit)
            distance = pairwise_distances(cur.vector, weight)[0, 0]
            d_max = max(d_max, float(distance))
            key = tuple(weight.tolist())
            if key not in seen:
                seen.add(key)
                vectors.append(np.array(weight))
                units.append(unit)
        retval[name] = CategoryStats(name, np.vstack(vectors), d_max, units,
                                     len(grouped[name]))
    return retval


def _require_vectors(stats):
    if stats.b == 0:
        raise UndefinedCategoryError(
            "category {0} has no best-matching units".format(stats.name))


def dist_to_category(vector, stats):
    """Distance d(y, C) of a vector from a category representation

    :param vector: the vector y
    :param stats: category representation
    :type stats: :class:`CategoryStats`
    :rtype: :class:`float`
    """
    _require_vectors(stats)
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (stats.bmu_vectors.shape[1],):
        raise ConfigurationError(
            "vector has shape {0}, category {1} expects ({2},)".format(
                vector.shape, stats.name, stats.bmu_vectors.shape[1]))
    return float(pairwise_distances(vector, stats.bmu_vectors).min())


def relative_from_distance(distance, d_max):
    """Divides a distance by a category precision

    A zero precision yields 0 for a zero distance and infinity otherwise.

    :param float distance: nonnegative distance
    :param float d_max: category precision
    :rtype: :class:`float`
    """
    if d_max > 0:
        return distance / d_max
    return 0.0 if distance == 0 else math.inf


def relative_distance(vector, stats):
    """Relative distance rd(y, C) = d(y, C) / d_max

    :param vector: the vector y
    :param stats: category representation
    :type stats: :class:`CategoryStats`
    :rtype: :class:`float`
    """
    return relative_from_distance(dist_to_category(vector, stats), stats.d_max)


def degree_from_relative(rd_value):
    """Generalization degree e^(-rd) for an already computed rd

    :param float rd_value: relative distance, possibly infinite
    :rtype: :class:`float`
    """
    if math.isinf(rd_value):
        return 0.0
    return math.exp(-rd_value)


def generalization_degree(vector, stats):
    """Map's disposition to generalise category C to vector y

    :param vector: the vector y
    :param stats: category representation
    :type stats: :class:`CategoryStats`
    :returns: a value in [0, 1], 0 only for an infinite relative distance
    :rtype: :class:`float`
    """
    return degree_from_relative(relative_distance(vector, stats))


def bmu_set_distance(src, dst):
    """Largest distance of a best-matching unit of ``src`` from ``dst``

    :param src: representation of the source category C_i
    :param dst: representation of the target category C_j
    :rtype: :class:`float`
    """
    _require_vectors(src)
    _require_vectors(dst)
    table = pairwise_distances(src.bmu_vectors, dst.bmu_vectors)
    return float(table.min(axis=1).max())


def plausibility(src, dst):
    """Degree of plausibility of the typicality inclusion T(src) <= dst

    :param src: representation of C_i
    :param dst: representation of C_j
    :returns: e^(-rd(BMU_Ci, C_j)), 0 for the degenerate zero precision case
    :rtype: :class:`float`
    """
    return degree_from_relative(
        relative_from_distance(bmu_set_distance(src, dst), dst.d_max))


if __name__ == "__main__":  # pragma: no cover
    pass
