"""Exception hierarchy shared by every solver and the CLI."""


class FCCError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(FCCError, ValueError):
    """The raw instance does not describe a valid colored forest."""


class NotAForest(InstanceError):
    pass


class BadColor(InstanceError):
    pass


class DuplicateEdge(InstanceError):
    pass


class ParseError(InstanceError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class UnsupportedInstance(FCCError):
    """The instance is valid but outside what the requested solver handles."""


class InfeasibleRatio(UnsupportedInstance):
    pass


class WrongRatio(UnsupportedInstance):
    pass


class NotATree(UnsupportedInstance):
    pass


class DiameterTooLarge(UnsupportedInstance):
    pass


class TooLargeClusterSize(UnsupportedInstance):
    pass


class TooManyClusters(UnsupportedInstance):
    pass


class NoExactSolverApplicable(UnsupportedInstance):
    pass


class TooLarge(UnsupportedInstance):
    pass


class LengthMismatch(FCCError, ValueError):
    pass


class ParityViolation(FCCError, ValueError):
    pass


class NoFairAssembly(FCCError):
    pass


class BadParams(FCCError, ValueError):
    pass


class UndefinedBound(FCCError, ValueError):
    pass


class BadSpec(FCCError, ValueError):
    pass


class BadWord(FCCError, ValueError):
    pass
