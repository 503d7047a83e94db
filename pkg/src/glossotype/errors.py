"""Exception hierarchy.

Three branches map onto the CLI exit codes: UsageError -> 1,
DataError -> 2, NumericError -> 3.
"""


class GlossotypeError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(GlossotypeError):
    """Bad arguments or configuration."""


class DataError(GlossotypeError):
    """Malformed or unusable input data."""


class NumericError(GlossotypeError):
    """A numeric procedure cannot produce a meaningful result."""


class EncodingError(DataError):
    def __init__(self, line_number: int, message: str = "invalid UTF-8"):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class MalformedLineError(DataError):
    def __init__(self, line_number: int, message: str = "malformed line"):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnknownTagError(DataError):
    def __init__(self, tag: str, line_number: int):
        super().__init__(f"line {line_number}: unknown UPOS tag {tag!r}")
        self.tag = tag
        self.line_number = line_number


class EmptyCorpusError(DataError):
    pass


class NoTriplesError(DataError):
    pass


class MixedKindsError(DataError):
    pass


class DuplicateLanguageError(DataError):
    pass


class LabelMismatchError(DataError):
    pass


class TooFewLabelsError(DataError):
    pass


class ZeroVarianceError(NumericError):
    pass


class DimensionMismatchError(DataError):
    pass


class EmptyDatasetError(DataError):
    pass


class TooFewRowsPerClassError(DataError):
    pass


class EmptyConfusionError(DataError):
    pass


class NoUsableTriplesError(DataError):
    pass


class ModelFormatError(DataError):
    pass
