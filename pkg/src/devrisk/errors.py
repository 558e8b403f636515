"""Exception hierarchy shared across the package.

DataError subclasses indicate bad input or missing state (CLI exit code 2);
anything else escaping to the CLI is treated as internal (exit code 3).
"""


class DevriskError(Exception):
    pass


class DataError(DevriskError):
    pass


class ValidationError(DataError):
    pass


class EmptyCorpus(DataError):
    pass


class InsufficientSamples(DataError):
    pass


class DegenerateTrace(DataError):
    pass


class DomainMismatch(DataError):
    pass


class MalformedFeed(DataError):
    pass


class MalformedManifest(DataError):
    pass


class OutOfRange(DataError):
    pass


class UnknownDevice(DataError):
    pass


class UnknownModel(DataError):
    pass


class UnknownCategory(DataError):
    pass


class UnknownTarget(DataError):
    pass


class NoAssessment(DataError):
    pass


class IdentificationFailed(DataError):
    pass
