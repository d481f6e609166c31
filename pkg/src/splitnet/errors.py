"""Exception hierarchy shared by every module.

All domain errors derive from :class:`SplitNetError` so callers (and the CLI)
can catch one type and map it to exit status 1.
"""


class SplitNetError(ValueError):
    """Base class for domain errors."""


class SideTooSmall(SplitNetError):
    pass


class BadTaxon(SplitNetError):
    pass


class DuplicateSplit(SplitNetError):
    pass


class EmptySystem(SplitNetError):
    pass


class WeightNotPositive(SplitNetError):
    pass


class TaxaMismatch(SplitNetError):
    pass


class EnumerationBoundExceeded(SplitNetError):
    pass


class NotCircular(SplitNetError):
    pass


class NotCompatible(SplitNetError):
    """A split set that should be pairwise compatible is not."""


class TooFewTaxa(SplitNetError):
    pass


class NotAnArc(SplitNetError):
    pass


class SideClassificationFailed(SplitNetError):
    pass


class Disconnected(SplitNetError):
    pass


class TooManySplits(SplitNetError):
    pass


class OutOfRange(SplitNetError):
    pass


class KindMismatch(SplitNetError):
    pass


class BadIndex(SplitNetError):
    pass


class BadParameter(SplitNetError):
    pass


class NotTreeShaped(SplitNetError):
    pass


class ParseError(SplitNetError):
    """Malformed input text.  ``line`` is 1-based, or None for Newick."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateLeaf(SplitNetError):
    pass


class EmptyTree(SplitNetError):
    pass
