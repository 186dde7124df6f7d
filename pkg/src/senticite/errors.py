"""Exception hierarchy shared across the package.

ValidationError covers problems the caller can fix (bad input, bad files,
bad flags); the CLI maps it to exit code 2. Everything else under
SentiCiteError maps to exit code 1.
"""

from __future__ import annotations


class SentiCiteError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SentiCiteError):
    """Invalid input or configuration supplied by the caller."""


class DecodingError(ValidationError):
    """Input bytes are not valid UTF-8.

    Carries the byte offset of the first offending byte.
    """

    def __init__(self, offset: int, message: str | None = None):
        self.offset = offset
        super().__init__(message or f"invalid UTF-8 at byte offset {offset}")


class CorpusFormatError(ValidationError):
    """A corpus or manifest file violates the expected format.

    line is 1-based when the problem belongs to a specific line.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class ClassShortageError(ValidationError):
    """A stratified operation needs more examples of a class than exist."""

    def __init__(self, label: str, have: int, need: int):
        self.label = label
        self.have = have
        self.need = need
        super().__init__(f"class {label!r} has {have} records, need {need}")


class TaskMismatchError(ValidationError):
    """A model and a corpus (or two models) disagree about the task."""


class InvalidTrainingSetError(ValidationError):
    """Training set is empty, single-class, or uses labels outside the task."""


class ModelFormatError(ValidationError):
    """A model file is not parseable as a serialized model.

    offset is the byte offset of the parse failure when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class UnsupportedVersionError(ModelFormatError):
    """Model container carries a version this code does not read."""

    def __init__(self, version: object):
        self.version = version
        super().__init__(f"unsupported model format version: {version!r}")


class InvalidPolicyError(ValidationError):
    """Fusion policy is incomplete or carries non-finite / out-of-range scores."""
