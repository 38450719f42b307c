"""Primitives common to all fuzzy connective family plugins"""
import numpy as np


class ConnectiveFamily(object):
    """Base class for the combination functions of a fuzzy logic

    Every function operates element-wise on numpy arrays (or scalars) of
    truth values in [0, 1] and returns values in the same range.

    All derived classes are expected to implement the following public
    interfaces:

    @staticmethod
    def get_logic_name():
        returns the lower case name the family is selected by, for instance
        on the command line with ``--logic``

    def tnorm(self, a, b), snorm(self, a, b), implication(self, a, b),
    negation(self, a):
        the functions interpreting conjunction, disjunction, the degree of
        an inclusion and complement

    Families whose weighted sums behave like probabilities set
    ``pz_compatible`` to True.
    """
    pz_compatible = False

    def __repr__(self):
        return "{0}()".format(type(self).__name__)

    def __eq__(self, obj):
        return type(obj) is type(self)

    def __ne__(self, obj):
        return not self == obj

    def __hash__(self):
        return hash(type(self))

    @property
    def name(self):
        """Name of this family

        :rtype: :class:`str`
        """
        return self.get_logic_name()

    @staticmethod
    def get_logic_name():
        """Name the family is selected by

        :rtype: :class:`str`
        """
        raise NotImplementedError()

    def tnorm(self, a, b):  # pylint: disable=invalid-name
        """Truth value of a conjunction"""
        raise NotImplementedError()

    def snorm(self, a, b):  # pylint: disable=invalid-name
        """Truth value of a disjunction"""
        raise NotImplementedError()

    def implication(self, a, b):  # pylint: disable=invalid-name
        """Truth value of ``a`` implies ``b``"""
        raise NotImplementedError()

    def negation(self, a):  # pylint: disable=invalid-name
        """Truth value of a complement"""
        raise NotImplementedError()


def standard_negation(a):  # pylint: disable=invalid-name
    """Involutive negation 1 - a"""
    return 1.0 - np.asarray(a, dtype=float)


def strict_negation(a):  # pylint: disable=invalid-name
    """Negation mapping 0 to 1 and every positive value to 0"""
    return np.where(np.asarray(a, dtype=float) == 0.0, 1.0, 0.0)


if __name__ == "__main__":  # pragma: no cover
    pass
