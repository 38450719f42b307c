"""Connectives of Zadeh logic"""
import numpy as np
from somlogic.utils.connectives import ConnectiveFamily, standard_negation


class Zadeh(ConnectiveFamily):
    """Minimum, maximum, Kleene-Dienes implication and 1 - a negation"""
    pz_compatible = True

    @staticmethod
    def get_logic_name():
        """Gets the name this family is selected by

        :rtype: :class:`str`
        """
        return "zadeh"

    def tnorm(self, a, b):
        return np.minimum(a, b)

    def snorm(self, a, b):
        return np.maximum(a, b)

    def implication(self, a, b):
        return np.maximum(standard_negation(a), b)

    def negation(self, a):
        return standard_negation(a)


PluginClass = Zadeh


if __name__ == "__main__":  # pragma: no cover
    pass
