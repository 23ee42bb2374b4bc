"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition on mathematical input was violated."""


class ParseError(ValueError):
    """A literal could not be parsed."""


class ZeroScanError(DomainError):
    """A lazily defined stream could not be certified nonzero."""

    def __init__(self, depth):
        self.depth = depth
        super().__init__("possibly zero at depth %d" % depth)


class StateCapError(DomainError):
    """An exact search exceeded its configured state cap."""

    def __init__(self, cap, detail=""):
        self.cap = cap
        msg = "undetermined, cap %d" % cap
        if detail:
            msg += " (%s)" % detail
        super().__init__(msg)


class NoRelationError(DomainError):
    """No algebraic relation was found within the configured caps."""
