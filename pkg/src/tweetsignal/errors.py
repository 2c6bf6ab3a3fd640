"""Exception hierarchy shared by all modules."""


class TweetSignalError(Exception):
    """Base class for all package errors."""


class DataError(TweetSignalError):
    """Input files or records that cannot be parsed or violate their schema."""


class DegeneracyError(TweetSignalError):
    """Statistical operation undefined for this input (zero variance etc.)."""


class RankDeficiencyError(DegeneracyError):
    """Design matrix is rank deficient.

    ``column`` is the index of the first column (in the caller's ordering)
    found to be linearly dependent on the preceding ones.
    """

    def __init__(self, message: str, column: int):
        super().__init__(message)
        self.column = column


class PipelineError(TweetSignalError):
    """Failure of one pipeline stage, labeled with the stage name."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage={stage}: {cause}")
        self.stage = stage
        self.cause = cause
