"""Connectives of Goedel logic"""
import numpy as np
from somlogic.utils.connectives import ConnectiveFamily, strict_negation


class Goedel(ConnectiveFamily):
    """Minimum t-norm with its residuum"""

    @staticmethod
    def get_logic_name():
        """Gets the name this family is selected by

        :rtype: :class:`str`
        """
        return "goedel"

    def tnorm(self, a, b):
        return np.minimum(a, b)

    def snorm(self, a, b):
        return np.maximum(a, b)

    def implication(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return np.where(a <= b, 1.0, b)

    def negation(self, a):
        return strict_negation(a)


PluginClass = Goedel


if __name__ == "__main__":  # pragma: no cover
    pass
