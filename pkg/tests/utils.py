"""helper functions used by the tests"""
import numpy as np
from somlogic.concepts import Top, Bot, Atom, Not, And, Or
from somlogic.cwm import (
    build_cwm, DomainElement, BMU_ELEMENT, INPUT_STIMULUS)
from somlogic.metrics import CategoryStats
from somlogic.som import SomConfig, init_map
from somlogic.stimulus import Stimulus, data_range

# Positions of the elements of the one dimensional toy model
TOY_POSITIONS = [
    ("e0", 0.0), ("e1", 0.8), ("e2", 2.0), ("e3", 3.0), ("e4", 4.5),
    ("e5", 5.0), ("e6", 7.0)]


def make_stimuli(centers, counts, spread, rng, prefix="s"):
    """Gaussian clusters of labeled exemplars

    :param dict centers: category name to cluster center
    :param dict counts: category name to number of exemplars
    :param float spread: standard deviation of every component
    :param rng: numpy random generator
    :param str prefix: prefix of the generated stimulus ids
    :rtype: :class:`list` of :class:`~somlogic.stimulus.Stimulus`
    """
    retval = []
    for name in sorted(centers):
        center = np.asarray(centers[name], dtype=float)
        for _ in range(counts[name]):
            vector = center + rng.normal(0.0, spread, center.size)
            retval.append(Stimulus(
                "{0}{1}".format(prefix, len(retval)), name, vector))
    return retval


def train(stimuli, rows, cols, **options):
    """Initialises and trains a map on a dataset

    :param list stimuli: labeled stimuli
    :param int rows: grid rows
    :param int cols: grid columns
    :param options: further :class:`~somlogic.som.SomConfig` options
    :rtype: :class:`~somlogic.som.SomMap`
    """
    config = SomConfig(rows, cols, stimuli[0].dim, **options)
    return init_map(config, data_range(stimuli)).train(stimuli)


def toy_categories():
    """Hand built representations on the real line

    A covers [-1, 1], B covers [-1.5, 4.5] and C covers [4.5, 5.5].
    """
    return {
        "A": CategoryStats("A", [[0.0]], 1.0),
        "B": CategoryStats("B", [[0.0], [3.0]], 1.5),
        "C": CategoryStats("C", [[5.0]], 0.5),
    }


def toy_domain():
    """Elements e0 to e6 of the toy model"""
    return [DomainElement(uid, [value], INPUT_STIMULUS)
            for uid, value in TOY_POSITIONS]


def random_instance(seed, categories=(2, 4), exemplars=(5, 20), dims=(2, 5),
                    sides=(4, 8)):
    """Trains a map on a random dataset of Gaussian clusters

    Every range is inclusive.

    :param int seed: seed of both the dataset and the map
    :returns: (map, stimuli)
    :rtype: :class:`tuple`
    """
    rng = np.random.default_rng(seed)
    size = int(rng.integers(categories[0], categories[1] + 1))
    dim = int(rng.integers(dims[0], dims[1] + 1))
    names = ["C{0}".format(i) for i in range(size)]
    centers = {name: rng.uniform(0.0, 10.0, dim) for name in names}
    counts = {name: int(rng.integers(exemplars[0], exemplars[1] + 1))
              for name in names}
    spread = float(rng.uniform(0.5, 3.0))
    stimuli = make_stimuli(centers, counts, spread, rng)
    rows = int(rng.integers(sides[0], sides[1] + 1))
    cols = int(rng.integers(sides[0], sides[1] + 1))
    som_map = train(stimuli, rows, cols, epochs=3, seed=seed)
    return som_map, stimuli


def has_coincidences(model):
    """Whether some stimulus sits exactly on a category representation

    Such elements tie with the best-matching units of the category, the one
    case in which category-level and domain-level checks may disagree.

    :param model: preferential model
    :rtype: :class:`bool`
    """
    for element in model.domain:
        if element.kind == BMU_ELEMENT:
            continue
        for name in model.categories:
            if model.distance(element.uid, name) == 0.0:
                return True
    return False


def random_models(count, first_seed=0, **ranges):
    """Preferential models of random trained maps, free of coincidences

    :param int count: number of models to build
    :param int first_seed: seed of the first instance
    :returns: (map, stimuli, model) tuples
    :rtype: :class:`list`
    """
    retval = []
    seed = first_seed
    while len(retval) < count:
        som_map, stimuli = random_instance(seed, **ranges)
        seed += 1
        model = build_cwm(som_map, stimuli)
        if has_coincidences(model):
            continue
        retval.append((som_map, stimuli, model))
    return retval


def random_concept(rng, names, depth=3):
    """Random boolean concept over a set of category names

    :param rng: numpy random generator
    :param list names: category names to draw atoms from
    :param int depth: largest nesting depth of the result
    """
    choice = int(rng.integers(0, 6 if depth > 0 else 3))
    if choice in (0, 1):
        return Atom(names[int(rng.integers(0, len(names)))])
    if choice == 2:
        return Top() if rng.random() < 0.5 else Bot()
    if choice == 3:
        return Not(random_concept(rng, names, depth - 1))
    left = random_concept(rng, names, depth - 1)
    right = random_concept(rng, names, depth - 1)
    return And(left, right) if choice == 4 else Or(left, right)


# ----------------------------------------------------------------- ORACLES
def distance_rows(model):
    """Element id to its list of distances, one per category in name order

    :param model: preferential model
    :rtype: :class:`dict`
    """
    names = list(model.categories)
    return {uid: [model.distance(uid, name) for name in names]
            for uid in model.element_ids}


def brute_extension(model, concept):
    """Extension of a concept, element by element

    :param model: preferential model
    :param concept: boolean concept
    :rtype: :class:`set` of element ids
    """
    everything = set(model.element_ids)
    if isinstance(concept, Top):
        return everything
    if isinstance(concept, Bot):
        return set()
    if isinstance(concept, Atom):
        d_max = model.stats(concept.name).d_max
        return set(uid for uid in everything
                   if model.distance(uid, concept.name) <= d_max)
    if isinstance(concept, Not):
        return everything - brute_extension(model, concept.operand)
    if isinstance(concept, And):
        return brute_extension(model, concept.left) & \
            brute_extension(model, concept.right)
    return brute_extension(model, concept.left) | \
        brute_extension(model, concept.right)


def brute_less(model, rows, x, y):
    """Global preference x < y spelled out category by category

    :param model: preferential model
    :param dict rows: output of :func:`distance_rows`
    :param str x: element id
    :param str y: element id
    :rtype: :class:`bool`
    """
    names = list(model.categories)
    left, right = rows[x], rows[y]
    if not any(a < b for a, b in zip(left, right)):
        return False
    for j, name in enumerate(names):
        if left[j] <= right[j]:
            continue
        overriders = [names.index(higher)
                      for higher, lower in model.specificity if lower == name]
        if not any(left[h] < right[h] for h in overriders):
            return False
    return True


def brute_typical(model, concept):
    """Minimal elements of a concept under the global preference

    :param model: preferential model
    :param concept: boolean concept
    :rtype: :class:`set` of element ids
    """
    rows = distance_rows(model)
    members = brute_extension(model, concept)
    return set(x for x in members
               if not any(brute_less(model, rows, y, x) for y in members))


if __name__ == "__main__":
    pass
