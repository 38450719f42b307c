"""Kohonen self-organising maps: configuration, training and persistence

Random numbers come from numpy's PCG64 bit generator, which produces the
same stream for the same 64-bit seed on every platform. Weight
initialisation draws from ``PCG64(seed)``; the optional per-epoch shuffle
draws from ``PCG64([seed, 1])`` so enabling it leaves the initial weights
untouched.
"""
import json
import logging
import math
import numpy as np
from tqdm import tqdm
from somlogic.exceptions import ConfigurationError, MapFormatError
from somlogic.stimulus import validate_dataset

MAX_SEED = 2 ** 64 - 1


class SomConfig(object):
    """Grid size, input dimension and training schedule of a map

    :param int rows: number of grid rows
    :param int cols: number of grid columns
    :param int dim: input dimension m
    :param int epochs: number of passes over the dataset
    :param float lr0: initial learning rate, in (0, 1]
    :param float lr_decay: exponential decay constant of the learning rate
    :param float sigma0:
        initial neighbourhood radius in grid units. Defaults to half the
        largest grid side (at least 1).
    :param float sigma_decay: exponential decay constant of the radius
    :param int seed: unsigned 64-bit seed of the generator
    :param float init_margin:
        how far outside the input range, as a fraction of the range span,
        weights may be initialised
    :param bool shuffle: present each epoch in a seeded random order
    """

    # pylint: disable=too-many-arguments,too-many-instance-attributes
    def __init__(self, rows, cols, dim, epochs=10, lr0=0.5, lr_decay=1.0,
                 sigma0=None, sigma_decay=1.0, seed=0, init_margin=0.5,
                 shuffle=False):
        super(SomConfig, self).__init__()
        if sigma0 is None:
            sigma0 = max(1.0, max(rows, cols) / 2.0)
        self.rows = _positive_int("rows", rows)
        self.cols = _positive_int("cols", cols)
        self.dim = _positive_int("dim", dim)
        self.epochs = _nonnegative_int("epochs", epochs)
        self.lr0 = float(lr0)
        self.lr_decay = float(lr_decay)
        self.sigma0 = float(sigma0)
        self.sigma_decay = float(sigma_decay)
        self.seed = _nonnegative_int("seed", seed)
        self.init_margin = float(init_margin)
        self.shuffle = bool(shuffle)

        if not 0.0 < self.lr0 <= 1.0:
            raise ConfigurationError("lr0 must lie in (0, 1]")
        if not self.lr_decay > 0 or not math.isfinite(self.lr_decay):
            raise ConfigurationError("lr_decay must be a positive real")
        if not self.sigma0 > 0 or not math.isfinite(self.sigma0):
            raise ConfigurationError("sigma0 must be a positive real")
        if not self.sigma_decay > 0 or not math.isfinite(self.sigma_decay):
            raise ConfigurationError("sigma_decay must be a positive real")
        if self.seed > MAX_SEED:
            raise ConfigurationError("seed must fit in 64 unsigned bits")
        if not self.init_margin >= 0 or not math.isfinite(self.init_margin):
            raise ConfigurationError("init_margin must be a nonnegative real")

    def __eq__(self, obj):
        if not isinstance(obj, SomConfig):
            return False
        return self.to_dict() == obj.to_dict()

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash(tuple(sorted(self.to_dict().items())))

    def __repr__(self):
        return "SomConfig({0})".format(", ".join(
            "{0}={1!r}".format(key, val)
            for key, val in sorted(self.to_dict().items())))

    @property
    def units(self):
        """Total number of grid units

        :rtype: :class:`int`
        """
        return self.rows * self.cols

    def to_dict(self):
        """Serializable form of this configuration

        :rtype: :class:`dict`
        """
        return {
            "rows": self.rows,
            "cols": self.cols,
            "dim": self.dim,
            "epochs": self.epochs,
            "lr0": self.lr0,
            "lr_decay": self.lr_decay,
            "sigma0": self.sigma0,
            "sigma_decay": self.sigma_decay,
            "seed": self.seed,
            "init_margin": self.init_margin,
            "shuffle": self.shuffle,
        }

    @classmethod
    def from_dict(cls, data):
        """Creates a configuration from the output of :meth:`to_dict`

        :param dict data: decoded configuration
        :rtype: :class:`SomConfig`
        """
        if not isinstance(data, dict):
            raise ConfigurationError("configuration must be a mapping")
        try:
            return cls(**data)
        except TypeError as err:
            raise ConfigurationError(str(err))


def _positive_int(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigurationError("{0} must be an integer".format(name))
    if value < 1:
        raise ConfigurationError("{0} must be positive".format(name))
    return int(value)


def _nonnegative_int(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigurationError("{0} must be an integer".format(name))
    if value < 0:
        raise ConfigurationError("{0} must not be negative".format(name))
    return int(value)


class SomMap(object):
    """A grid of weight vectors together with its training configuration

    Instances are immutable: training returns new maps, and the weights are
    exposed as a read-only array, so a trained map may be shared freely
    between readers.

    :param config: configuration the map was built with
    :type config: :class:`SomConfig`
    :param weights: array-like of shape (rows, cols, dim)
    :param int trained_steps: number of training steps applied so far
    """

    def __init__(self, config, weights, trained_steps=0):
        super(SomMap, self).__init__()
        self._config = config
        self._weights = np.array(weights, dtype=float)
        expected = (config.rows, config.cols, config.dim)
        if self._weights.shape != expected:
            raise ConfigurationError(
                "weights have shape {0}, configuration declares {1}".format(
                    self._weights.shape, expected))
        if not np.all(np.isfinite(self._weights)):
            raise ConfigurationError("weights must be finite")
        self._weights.setflags(write=False)
        self._trained_steps = _nonnegative_int("trained_steps", trained_steps)

    def __eq__(self, obj):
        if not isinstance(obj, SomMap):
            return False
        return (obj.config == self.config and
                obj.trained_steps == self.trained_steps and
                np.array_equal(obj.weights, self.weights))

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash((self._config, self._trained_steps,
                     self._weights.tobytes()))

    @property
    def config(self):
        """Configuration this map was built with

        :rtype: :class:`SomConfig`
        """
        return self._config

    @property
    def weights(self):
        """Read-only weight array of shape (rows, cols, dim)

        :rtype: :class:`numpy.ndarray`
        """
        return self._weights

    @property
    def trained_steps(self):
        """Number of training steps applied to this map

        :rtype: :class:`int`
        """
        return self._trained_steps

    def unit_weight(self, unit):
        """Gets the weight vector of one unit

        :param tuple unit: (row, col) grid coordinate
        :rtype: :class:`numpy.ndarray`
        """
        return self._weights[unit[0], unit[1]]

    def find_bmu(self, vector):
        """Locates the best-matching unit for an input vector

        Ties are broken in favour of the smallest linear index
        ``row * cols + col``.

        :param vector: input of length dim
        :returns: (row, col) grid coordinate
        :rtype: :class:`tuple`
        """
        return _find_bmu(self._weights, self._config, _as_input(
            vector, self._config.dim))

    def bmu_counts(self, stimuli):
        """Number of stimuli mapped onto each unit that wins at least once

        :param list stimuli: stimuli to map
        :returns: (row, col) to count, ordered by unit
        :rtype: :class:`dict`
        """
        counts = {}
        for cur in stimuli:
            unit = self.find_bmu(cur.vector)
            counts[unit] = counts.get(unit, 0) + 1
        return {unit: counts[unit] for unit in sorted(counts)}

    def train_step(self, stimulus, step, total_steps=None):
        """Applies one Kohonen update for a single stimulus

        :param stimulus: the presented stimulus
        :type stimulus: :class:`~.stimulus.Stimulus`
        :param int step: 0-based index t of this step within its run
        :param int total_steps:
            length of the run the schedules decay over. Defaults to 1.
        :returns: the updated map
        :rtype: :class:`SomMap`
        """
        vector = _as_input(stimulus.vector, self._config.dim)
        if total_steps is None:
            total_steps = 1
        weights = np.array(self._weights)
        bmu = _find_bmu(weights, self._config, vector)
        _update(weights, self._config, vector, bmu, step, total_steps)
        return SomMap(self._config, weights, self._trained_steps + 1)

    def train(self, stimuli, callback=None, show_progress=False):
        """Trains a copy of this map on an ordered list of labeled stimuli

        Every stimulus is presented once per epoch, in dataset order unless
        the configuration requests a seeded shuffle.

        :param list stimuli: non-empty list of labeled stimuli
        :param callback:
            optional callable invoked after every step as
            ``callback(step, stimulus_id, bmu)``, with 1-based step numbers
        :param bool show_progress: display a progress bar while training
        :returns: the trained map
        :rtype: :class:`SomMap`
        """
        log = logging.getLogger(__name__)
        weights = None
        steps = 0
        total = self._config.epochs * len(stimuli)
        with tqdm(desc="training", unit="step", total=total,
                  disable=not show_progress) as progress:
            for step, stimulus, bmu, weights in training_steps(self, stimuli):
                steps = step
                progress.update(1)
                if callback is not None:
                    callback(step, stimulus.uid, bmu)
        if weights is None:
            return SomMap(self._config, self._weights, self._trained_steps)
        log.info("trained %d steps over %d stimuli", steps, len(stimuli))
        return SomMap(self._config, weights, self._trained_steps + steps)


def training_steps(som_map, stimuli):
    """Generator that trains a working copy of a map one step at a time

    Yields ``(step, stimulus, bmu, weights)`` after every update where
    ``step`` is 1-based and ``weights`` is the live working array. The array
    keeps changing as the generator advances, so consumers must copy it (for
    instance by building a :class:`SomMap` from it) to keep a snapshot.

    :param som_map: starting map, left untouched
    :type som_map: :class:`SomMap`
    :param list stimuli: non-empty list of labeled stimuli
    """
    config = som_map.config
    if not stimuli:
        raise ConfigurationError("cannot train on an empty dataset")
    validate_dataset(stimuli, dim=config.dim, labeled=True)

    log = logging.getLogger(__name__)
    weights = np.array(som_map.weights)
    total = config.epochs * len(stimuli)
    order = np.arange(len(stimuli))
    shuffler = np.random.Generator(np.random.PCG64([config.seed, 1]))

    step = 0
    for epoch in range(config.epochs):
        if config.shuffle:
            order = shuffler.permutation(len(stimuli))
        log.debug("epoch %d of %d", epoch + 1, config.epochs)
        for index in order:
            stimulus = stimuli[int(index)]
            bmu = _find_bmu(weights, config, stimulus.vector)
            _update(weights, config, stimulus.vector, bmu, step, total)
            step += 1
            yield step, stimulus, bmu, weights


def _as_input(vector, dim):
    retval = np.asarray(vector, dtype=float)
    if retval.shape != (dim,):
        raise ConfigurationError(
            "input has shape {0}, map expects ({1},)".format(
                retval.shape, dim))
    return retval


def _find_bmu(weights, config, vector):
    flat = weights.reshape(config.units, config.dim)
    distances = np.linalg.norm(flat - vector, axis=1)
    # argmin returns the first minimum, i.e. the smallest linear index
    index = int(np.argmin(distances))
    return index // config.cols, index % config.cols


def _grid_coordinates(config):
    rows, cols = np.divmod(np.arange(config.units), config.cols)
    return np.column_stack([rows, cols]).astype(float)


def learning_rate(config, step, total_steps):
    """Learning rate alpha(t) of the exponential schedule

    :param config: map configuration
    :param int step: 0-based step index
    :param int total_steps: length of the run
    :rtype: :class:`float`
    """
    return config.lr0 * math.exp(-step * config.lr_decay / total_steps)


def neighbourhood_radius(config, step, total_steps):
    """Neighbourhood radius sigma(t) of the exponential schedule

    :param config: map configuration
    :param int step: 0-based step index
    :param int total_steps: length of the run
    :rtype: :class:`float`
    """
    return config.sigma0 * math.exp(-step * config.sigma_decay / total_steps)


def _update(weights, config, vector, bmu, step, total_steps):
    """In-place Gaussian-neighbourhood update of a writable weight array"""
    alpha = learning_rate(config, step, total_steps)
    sigma = neighbourhood_radius(config, step, total_steps)
    coords = _grid_coordinates(config)
    grid_dist2 = np.sum((coords - np.array(bmu, dtype=float)) ** 2, axis=1)
    if sigma > 0:
        influence = np.exp(-grid_dist2 / (2.0 * sigma * sigma))
    else:
        influence = (grid_dist2 == 0).astype(float)
    flat = weights.reshape(config.units, config.dim)
    flat += (alpha * influence)[:, np.newaxis] * (vector - flat)


def init_map(config, value_range):
    """Creates an untrained map with weights outside the input range

    Every component of dimension i is drawn from
    ``[min_i - margin*span_i, min_i)`` or ``(max_i, max_i + margin*span_i]``
    with equal probability. A dimension whose range has zero width uses a
    unit span.

    :param config: map configuration
    :type config: :class:`SomConfig`
    :param value_range: array-like of shape (dim, 2) with (min, max) rows
    :rtype: :class:`SomMap`
    """
    value_range = np.asarray(value_range, dtype=float)
    if value_range.shape != (config.dim, 2):
        raise ConfigurationError(
            "data range has shape {0}, expected ({1}, 2)".format(
                value_range.shape, config.dim))
    lows, highs = value_range[:, 0], value_range[:, 1]
    if np.any(lows > highs):
        raise ConfigurationError("data range has min > max")
    if config.init_margin == 0:
        raise ConfigurationError(
            "init_margin 0 leaves no room outside the data range")

    spans = highs - lows
    spans = np.where(spans > 0, spans, 1.0)
    widths = config.init_margin * spans

    rng = np.random.Generator(np.random.PCG64(config.seed))
    shape = (config.rows, config.cols, config.dim)
    below = rng.random(shape) < 0.5
    # 1 - U[0, 1) lies in (0, 1], keeping components strictly off the range
    offsets = (1.0 - rng.random(shape)) * widths
    weights = np.where(below, lows - offsets, highs + offsets)
    return SomMap(config, weights, 0)


def dumps_map(som_map):
    """Serializes a map to its JSON text form

    :param som_map: the map to serialize
    :rtype: :class:`str`
    """
    data = {
        "config": som_map.config.to_dict(),
        "weights": som_map.weights.tolist(),
        "trained_steps": som_map.trained_steps,
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def loads_map(text):
    """Decodes a map from the output of :func:`dumps_map`

    :param text: JSON text, either :class:`str` or UTF-8 :class:`bytes`
    :rtype: :class:`SomMap`
    """
    if isinstance(text, bytes):
        raw = text
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as err:
            raise MapFormatError("map file is not valid UTF-8", err.start)
    try:
        data = json.loads(text)
    except ValueError as err:
        offset = len(text[:getattr(err, "pos", 0)].encode("utf-8"))
        raise MapFormatError(
            "malformed map file: {0}".format(getattr(err, "msg", err)),
            offset)

    if not isinstance(data, dict):
        raise MapFormatError("map file must hold a JSON object")
    missing = {"config", "weights", "trained_steps"} - set(data)
    if missing:
        raise MapFormatError(
            "map file lacks field(s): " + ", ".join(sorted(missing)))
    try:
        config = SomConfig.from_dict(data["config"])
        weights = np.array(data["weights"], dtype=float)
        return SomMap(config, weights, data["trained_steps"])
    except (ConfigurationError, ValueError, TypeError) as err:
        raise MapFormatError("invalid map file: {0}".format(err))


def save_map(som_map, path):
    """Writes a map to disk

    :param som_map: the map to save
    :param str path: output file path
    """
    with open(path, "wb") as handle:
        handle.write(dumps_map(som_map).encode("utf-8"))


def load_map(path):
    """Reads a map written by :func:`save_map`

    :param str path: path to the map file
    :rtype: :class:`SomMap`
    """
    with open(path, "rb") as handle:
        return loads_map(handle.read())


if __name__ == "__main__":  # pragma: no cover
    pass
