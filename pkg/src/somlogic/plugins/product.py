"""Connectives of product logic"""
import numpy as np
from somlogic.utils.connectives import ConnectiveFamily, strict_negation


class Product(ConnectiveFamily):
    """Algebraic product, probabilistic sum and the Goguen implication"""

    @staticmethod
    def get_logic_name():
        """Gets the name this family is selected by

        :rtype: :class:`str`
        """
        return "product"

    def tnorm(self, a, b):
        return np.multiply(a, b)

    def snorm(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return a + b - a * b

    def implication(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        # 0 implies anything with degree 1
        safe = np.where(a > 0.0, a, 1.0)
        return np.where(a > 0.0, np.minimum(1.0, b / safe), 1.0)

    def negation(self, a):
        return strict_negation(a)


PluginClass = Product


if __name__ == "__main__":  # pragma: no cover
    pass
