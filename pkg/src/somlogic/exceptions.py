"""Error types raised by the somlogic APIs"""


class SomLogicError(Exception):
    """Base class for every error raised by the library"""


class ConfigurationError(SomLogicError):
    """Invalid training configuration, option value or dimension mismatch"""


class DataFormatError(SomLogicError):
    """Malformed input file (stimuli, distribution or specificity overrides)

    :param str message: description of the problem
    :param str path: optional path of the offending file
    """
    def __init__(self, message, path=None):
        if path:
            message = "{0}: {1}".format(path, message)
        super(DataFormatError, self).__init__(message)
        self.path = path


class MapFormatError(SomLogicError):
    """Malformed or inconsistent map file

    :param str message: description of the problem
    :param int offset:
        byte offset into the file where decoding failed, or None when the
        file decoded but failed validation
    """
    def __init__(self, message, offset=None):
        if offset is not None:
            message = "{0} (at byte offset {1})".format(message, offset)
        super(MapFormatError, self).__init__(message)
        self.offset = offset


class ParseError(SomLogicError):
    """Syntax error in a concept, axiom or query statement

    :param str message: description of the problem
    :param int line: 1-based line number of the offending token
    :param int column: 1-based column of the offending token
    :param expected: collection of token descriptions that would have been
        accepted at this position
    """
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = "{0}:{1}: {2}".format(line, column, message)
        if self.expected:
            text += " (expected one of: {0})".format(", ".join(self.expected))
        super(ParseError, self).__init__(text)


class ValidationError(SomLogicError):
    """Well formed input that violates a semantic constraint"""


class NameResolutionError(SomLogicError):
    """Reference to an unknown category or domain element"""


class UndefinedCategoryError(SomLogicError):
    """Category whose representation holds no best-matching units"""


class SpecificityCycleError(ValidationError):
    """Specificity relation that is not a strict partial order

    :param list cycle: category names forming the cycle, first repeated last
    """
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super(SpecificityCycleError, self).__init__(
            "specificity relation contains a cycle: " +
            " > ".join(self.cycle))


class UndefinedConditionalError(SomLogicError):
    """Conditioning on an event of probability zero"""


class ProbabilityGuardError(SomLogicError):
    """Probability query under a connective family that is not PZ-compatible"""


class EmptyDomainError(SomLogicError):
    """Operation that needs at least one domain element"""


if __name__ == "__main__":  # pragma: no cover
    pass
