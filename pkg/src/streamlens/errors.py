"""Exception types shared across the package."""


class StreamlensError(Exception):
    """Base class for all streamlens errors."""


class DataError(StreamlensError):
    """Malformed input data (CSV cells, event streams, shape mismatches)."""
