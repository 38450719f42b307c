"""Training seen as a sequence of model changes

The preferential model is rebuilt every few training steps from the
exemplars presented so far, and the category-level knowledge it satisfies
is compared with the previous snapshot.
"""
import json
import logging
from tqdm import tqdm
from somlogic.concepts import Atom, Bot, StrictInclusion
from somlogic.cwm import build_cwm, DEFAULT_DISTANCE_BUDGET
from somlogic.exceptions import ConfigurationError
from somlogic.parser import print_axiom
from somlogic.som import SomMap, init_map, training_steps
from somlogic.stimulus import data_range, validate_dataset


class TraceSnapshot(object):
    """Knowledge satisfied by the model after a number of training steps

    Categories with no presented exemplar have an empty extension. They are
    kept apart from the satisfied axioms and only show up as ``C <= bot``
    in the report forms.

    :param int step: training steps applied
    :param satisfied: axioms satisfied at this step
    :param added: axioms satisfied now but not at the previous snapshot
    :param removed: axioms satisfied at the previous snapshot but not now
    :param empty: names of the categories with an empty extension
    :param previous_empty: the same names at the previous snapshot
    """

    # pylint: disable=too-many-arguments
    def __init__(self, step, satisfied, added, removed, empty=(),
                 previous_empty=()):
        super(TraceSnapshot, self).__init__()
        self.step = step
        self.satisfied = frozenset(satisfied)
        self.added = frozenset(added)
        self.removed = frozenset(removed)
        self.empty = frozenset(empty)
        self.previous_empty = frozenset(previous_empty)
        assert not self.added & self.removed

    def __repr__(self):
        return "TraceSnapshot(step={0}, satisfied={1}, +{2}, -{3}, " \
               "empty={4})".format(self.step, len(self.satisfied),
                                   len(self.added), len(self.removed),
                                   sorted(self.empty))

    def __eq__(self, obj):
        if not isinstance(obj, TraceSnapshot):
            return False
        return self._key() == obj._key()

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash((self.step, self.satisfied, self.empty))

    def _key(self):
        return (self.step, self.satisfied, self.added, self.removed,
                self.empty, self.previous_empty)

    @property
    def report_satisfied(self):
        """Satisfied axioms with every empty category written as
        ``C <= bot``

        :rtype: :class:`frozenset`
        """
        return self.satisfied | _empty_axioms(self.empty)

    @property
    def report_added(self):
        """Added axioms, including the categories that became empty

        :rtype: :class:`frozenset`
        """
        return self.added | _empty_axioms(self.empty - self.previous_empty)

    @property
    def report_removed(self):
        """Removed axioms, including the categories that got their first
        exemplar

        :rtype: :class:`frozenset`
        """
        return self.removed | \
            _empty_axioms(self.previous_empty - self.empty)

    def to_dict(self):
        """Serializable form with axioms in sorted concrete syntax

        :rtype: :class:`dict`
        """
        return {
            "step": self.step,
            "satisfied": _sorted_text(self.report_satisfied),
            "added": _sorted_text(self.report_added),
            "removed": _sorted_text(self.report_removed),
        }


def _empty_axioms(names):
    return frozenset(StrictInclusion(Atom(name), Bot()) for name in names)


def _sorted_text(axioms):
    return sorted(print_axiom(cur) for cur in axioms)


def unlearned_categories(stimuli, presented):
    """Categories none of whose exemplars were presented yet

    :param list stimuli: the whole training set
    :param presented: ids of the exemplars presented so far
    :rtype: :class:`frozenset`
    """
    learned = set(cur.category for cur in stimuli if cur.uid in presented)
    return frozenset(cur.category for cur in stimuli) - learned


def satisfied_axioms(som_map, stimuli, presented, probes=(),
                     specificity_overrides=(),
                     distance_budget=DEFAULT_DISTANCE_BUDGET):
    """Category-level axioms satisfied once some exemplars were presented

    Only the categories with a presented exemplar take part; the others have
    an empty extension, see :func:`unlearned_categories`.

    :param som_map: map after the presentations
    :param list stimuli: the whole training set
    :param presented: ids of the exemplars presented so far
    :param list probes: extra domain elements
    :param specificity_overrides: (C_h, C_j) pairs; pairs naming a category
        not presented yet are ignored
    :param int distance_budget: see :class:`~.cwm.CwmModel`
    :rtype: :class:`frozenset`
    """
    shown = [cur for cur in stimuli if cur.uid in presented]
    if not shown:
        return frozenset()
    pending = [cur for cur in stimuli if cur.uid not in presented]
    learned = set(cur.category for cur in shown)
    overrides = [pair for pair in specificity_overrides
                 if pair[0] in learned and pair[1] in learned]
    model = build_cwm(som_map, shown, probes, overrides, distance_budget,
                      pending)
    return frozenset(axiom for axiom, _ in model.extract_kb(0.0))


def run_trace(config, stimuli, every_k, probes=(), specificity_overrides=(),
              show_progress=False):
    """Trains a fresh map and snapshots its knowledge along the way

    The first snapshot describes the untrained map, further ones follow
    every ``every_k`` steps and after the last step. With zero epochs there
    is no step to take and the untrained snapshot is the only one.

    :param config: map configuration
    :type config: :class:`~.som.SomConfig`
    :param list stimuli: labeled training stimuli
    :param int every_k: steps between snapshots
    :param list probes: extra domain elements
    :param specificity_overrides: (C_h, C_j) pairs
    :param bool show_progress: display a progress bar
    :rtype: :class:`list` of :class:`TraceSnapshot`
    """
    log = logging.getLogger(__name__)
    if isinstance(every_k, bool) or not isinstance(every_k, int) or \
            every_k < 1:
        raise ConfigurationError("snapshot interval must be a positive "
                                 "integer")
    if not stimuli:
        raise ConfigurationError("cannot train on an empty dataset")
    validate_dataset(stimuli, dim=config.dim, labeled=True)

    som_map = init_map(config, data_range(stimuli))
    presented = set()
    previous = satisfied_axioms(som_map, stimuli, presented, probes,
                                specificity_overrides)
    previous_empty = unlearned_categories(stimuli, presented)
    retval = [TraceSnapshot(0, previous, previous, (), previous_empty)]

    total = config.epochs * len(stimuli)
    with tqdm(desc="tracing", unit="step", total=total,
              disable=not show_progress) as progress:
        for step, stimulus, _, weights in training_steps(som_map, stimuli):
            progress.update(1)
            presented.add(stimulus.uid)
            if step % every_k and step != total:
                continue
            current = satisfied_axioms(
                SomMap(config, weights, step), stimuli, presented, probes,
                specificity_overrides)
            empty = unlearned_categories(stimuli, presented)
            retval.append(TraceSnapshot(step, current, current - previous,
                                        previous - current, empty,
                                        previous_empty))
            previous, previous_empty = current, empty
    log.info("recorded %d snapshots over %d steps", len(retval), total)
    return retval


def format_trace(snapshots, fmt="text"):
    """Renders a trace report

    The text form holds one block per snapshot: a ``step N`` line followed
    by ``+ <axiom>`` and ``- <axiom>`` lines.

    :param list snapshots: :class:`TraceSnapshot` objects
    :param str fmt: ``text`` or ``json``
    :rtype: :class:`str`
    """
    if fmt == "json":
        return json.dumps([cur.to_dict() for cur in snapshots], indent=1,
                          sort_keys=True) + "\n"
    if fmt != "text":
        raise ConfigurationError("unsupported report format " + str(fmt))
    lines = []
    for cur in snapshots:
        lines.append("step {0}".format(cur.step))
        lines.extend("+ " + text for text in _sorted_text(cur.report_added))
        lines.extend("- " + text
                     for text in _sorted_text(cur.report_removed))
    return "".join(line + "\n" for line in lines)


if __name__ == "__main__":  # pragma: no cover
    pass
