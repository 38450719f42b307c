"""
Model checking toolkit for self-organising maps: trains Kohonen maps on
labeled stimuli and interprets the trained map as a concept-wise
multipreference model, a fuzzy model and a probabilistic model over which
strict, defeasible, fuzzy and probabilistic statements can be verified.
"""
import logging
from .version import __version__

logging.getLogger(__name__).addHandler(logging.NullHandler())
