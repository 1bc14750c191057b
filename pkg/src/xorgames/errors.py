"""Exception types shared across the package."""


class XorGamesError(Exception):
    """Base class for all package errors."""


class ShapeError(XorGamesError, ValueError):
    """Operands have incompatible orders or dimensions."""


class CapExceededError(XorGamesError, RuntimeError):
    """A computation would exceed a configured size cap."""


class UsageError(XorGamesError, ValueError):
    """An unsupported mode or parameter combination was requested."""


class FormatError(XorGamesError, ValueError):
    """A game, hypergraph or graph file could not be parsed."""
