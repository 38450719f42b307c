"""Primitives for loading and describing labeled input stimuli"""
import csv
import io
import logging
import math
import re
import numpy as np
from somlogic.exceptions import DataFormatError, ConfigurationError

# characters that end an element id in the query language
_ID_RESERVED = re.compile(r"[\s(),|#]")


class Stimulus(object):
    """An identified input vector, optionally labeled with a category

    Training exemplars always carry a category. Probes, the stimuli only
    used when querying a trained map, leave it empty.

    :param str uid: identifier, unique within a dataset
    :param str category: category name, or None for probes
    :param vector: sequence of finite real numbers
    """

    def __init__(self, uid, category, vector):
        super(Stimulus, self).__init__()
        if not uid:
            raise ConfigurationError("stimulus id must be a non-empty string")
        self._uid = str(uid)
        self._category = category if category else None
        self._vector = np.array(vector, dtype=float)
        self._vector.setflags(write=False)
        if self._vector.ndim != 1 or self._vector.size == 0:
            raise ConfigurationError(
                "stimulus {0} must hold a non-empty vector".format(uid))
        if not np.all(np.isfinite(self._vector)):
            raise ConfigurationError(
                "stimulus {0} has non-finite components".format(uid))

    def __repr__(self):
        return "Stimulus({0!r}, {1!r}, {2})".format(
            self._uid, self._category, list(self._vector))

    def __eq__(self, obj):
        if not isinstance(obj, Stimulus):
            return False
        return (obj.uid == self.uid and obj.category == self.category and
                np.array_equal(obj.vector, self.vector))

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash(self._uid)

    @property
    def uid(self):
        """Identifier of this stimulus

        :rtype: :class:`str`
        """
        return self._uid

    @property
    def category(self):
        """Category label, None for probes

        :rtype: :class:`str`
        """
        return self._category

    @property
    def vector(self):
        """Read-only feature vector

        :rtype: :class:`numpy.ndarray`
        """
        return self._vector

    @property
    def dim(self):
        """Number of features in this stimulus

        :rtype: :class:`int`
        """
        return self._vector.size


def validate_dataset(stimuli, dim=None, labeled=True):
    """Checks a list of stimuli for consistent dimensions and unique ids

    :param list stimuli: stimuli to check
    :param int dim:
        expected input dimension. When omitted the dimension of the first
        stimulus is used.
    :param bool labeled: whether every stimulus must carry a category
    :returns: the common input dimension, or None for an empty list
    :rtype: :class:`int`
    """
    seen = set()
    for cur in stimuli:
        if dim is None:
            dim = cur.dim
        if cur.dim != dim:
            raise ConfigurationError(
                "stimulus {0} has dimension {1}, expected {2}".format(
                    cur.uid, cur.dim, dim))
        if labeled and cur.category is None:
            raise ConfigurationError(
                "stimulus {0} has no category".format(cur.uid))
        if _ID_RESERVED.search(cur.uid):
            raise ConfigurationError(
                "stimulus id {0!r} cannot contain whitespace or any of "
                "(),|#".format(cur.uid))
        if cur.uid in seen:
            raise ConfigurationError("duplicate stimulus id " + cur.uid)
        seen.add(cur.uid)
    return dim


def data_range(stimuli):
    """Per-dimension minimum and maximum of a set of stimuli

    :param list stimuli: one or more stimuli of equal dimension
    :returns: array of shape (dim, 2) holding (min, max) rows
    :rtype: :class:`numpy.ndarray`
    """
    if not stimuli:
        raise ConfigurationError("cannot compute the range of an empty dataset")
    validate_dataset(stimuli, labeled=False)
    data = np.vstack([cur.vector for cur in stimuli])
    return np.column_stack([data.min(axis=0), data.max(axis=0)])


def parse_stimuli(text, source="<string>"):
    """Parses stimuli from CSV text with an ``id,category,f1,...,fm`` header

    :param str text: CSV content
    :param str source: file name used in diagnostics
    :rtype: :class:`list` of :class:`Stimulus`
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataFormatError("empty stimulus file", source)

    header = [cur.strip() for cur in header]
    for position, column in enumerate(("id", "category")):
        if len(header) <= position or header[position] != column:
            raise DataFormatError(
                "missing '{0}' column in header".format(column), source)
    if len(header) < 3:
        raise DataFormatError("header declares no feature columns", source)
    dim = len(header) - 2

    retval = []
    for line_no, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != dim + 2:
            raise DataFormatError(
                "line {0}: expected {1} fields, found {2}".format(
                    line_no, dim + 2, len(row)), source)
        try:
            vector = [float(cell) for cell in row[2:]]
        except ValueError as err:
            raise DataFormatError(
                "line {0}: {1}".format(line_no, err), source)
        if not all(math.isfinite(val) for val in vector):
            raise DataFormatError(
                "line {0}: non-finite feature value".format(line_no), source)
        retval.append(Stimulus(row[0].strip(), row[1].strip(), vector))

    try:
        validate_dataset(retval, dim=dim, labeled=False)
    except ConfigurationError as err:
        raise DataFormatError(str(err), source)
    logging.getLogger(__name__).debug(
        "loaded %d stimuli of dimension %d from %s", len(retval), dim, source)
    return retval


def load_stimuli(path):
    """Loads stimuli from a UTF-8 CSV file

    :param str path: path to the CSV file
    :rtype: :class:`list` of :class:`Stimulus`
    """
    with open(path, encoding="utf-8", newline="") as handle:
        return parse_stimuli(handle.read(), path)


def save_stimuli(path, stimuli):
    """Writes stimuli to a CSV file readable by :func:`load_stimuli`

    :param str path: output path
    :param list stimuli: stimuli of equal dimension
    """
    dim = validate_dataset(stimuli, labeled=False) or 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(
            ["id", "category"] + ["f{0}".format(i + 1) for i in range(dim)])
        for cur in stimuli:
            writer.writerow([cur.uid, cur.category or ""] +
                            [repr(float(val)) for val in cur.vector])


if __name__ == "__main__":  # pragma: no cover
    pass
