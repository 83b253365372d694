"""Exception hierarchy shared by the library and the CLI."""


class ChessboardError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ChessboardError, ValueError):
    """Input outside the domain of an operation (bad endpoint, outside the cone, ...)."""


class OracleScaleExceeded(ChessboardError):
    """Exhaustive enumeration was asked for more segments than the configured bound."""

    def __init__(self, n_segments, bound):
        super().__init__(
            f"oracle scale exceeded: {n_segments} segments > enumeration bound {bound}"
        )
        self.n_segments = n_segments
        self.bound = bound
