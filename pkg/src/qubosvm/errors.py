"""Exception types shared across the package.

Plain ``ValueError`` is used for generic bad arguments (wrong lengths,
out-of-range indices, malformed parameters). The classes below name the
failure modes callers are expected to branch on.
"""


class DatasetFormatError(ValueError):
    """A CSV file could not be ingested (bad cell, missing column, empty class)."""


class GenerationError(RuntimeError):
    """A synthetic generator hit its draw cap before satisfying its contract."""


class ProblemTooLargeError(ValueError):
    """The problem exceeds the exhaustive enumeration budget."""


class NoSupportVectorsError(RuntimeError):
    """Every multiplier is below the support threshold; no classifier exists.

    This is the observable "sampler failed" outcome: decoding an all-zero
    (or near-zero) bit vector leaves nothing to build a hyperplane from.
    """
