"""Exception types shared across the package."""


class SidematchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidEdge(SidematchError):
    """Edge endpoint out of range, or a self-loop."""


class PartialLabeling(SidematchError):
    """An operation requiring total community labels met an unlabeled vertex."""


class SizeMismatch(SidematchError):
    """Two graphs that must share a vertex count do not."""


class InvalidParams(SidematchError):
    """Model or algorithm parameters outside their valid range."""


class CommunityMismatch(SidematchError):
    """A vertex pair whose community labels disagree (or labelings disagree on K)."""


class EmptyCommunity(SidematchError):
    """A candidate community contains no vertices in the target graph."""


class InvalidSeeds(SidematchError):
    """Seed pairs with repeated endpoints, or a community left without a seed."""


class DivergentBound(SidematchError):
    """A theoretical bound diverges for the given parameters (e.g. s = 0)."""


class ConfigError(SidematchError):
    """Malformed or inconsistent experiment configuration."""


class ParseError(SidematchError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no
