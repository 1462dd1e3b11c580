"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """Requested computation exceeds the configured qubit budget."""


class EncodingError(ValueError):
    """A feature vector cannot be written into qubit amplitudes (zero norm, wrong dimension)."""


class DatasetFormatError(ValueError):
    """A dataset file is malformed; the message names the offending line."""
