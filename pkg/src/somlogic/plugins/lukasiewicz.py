"""Connectives of Lukasiewicz logic"""
import numpy as np
from somlogic.utils.connectives import ConnectiveFamily, standard_negation


class Lukasiewicz(ConnectiveFamily):
    """Bounded sum and difference with the Lukasiewicz residuum

    Conjunction and disjunction add up to the sum of their operands, which
    keeps weighted sums of truth values additive.
    """
    pz_compatible = True

    @staticmethod
    def get_logic_name():
        """Gets the name this family is selected by

        :rtype: :class:`str`
        """
        return "lukasiewicz"

    def tnorm(self, a, b):
        return np.maximum(0.0, np.add(a, b) - 1.0)

    def snorm(self, a, b):
        return np.minimum(1.0, np.add(a, b))

    def implication(self, a, b):
        return np.minimum(1.0, 1.0 - np.asarray(a, dtype=float) + b)

    def negation(self, a):
        return standard_negation(a)


PluginClass = Lukasiewicz


if __name__ == "__main__":  # pragma: no cover
    pass
