"""Exception types shared across the package.

The CLI maps these onto exit codes: parse/format problems exit 2,
method/constraint problems exit 3, missing correlation inputs exit 4.
"""


class SeqAugError(Exception):
    """Base class for all package errors."""


class ParseError(SeqAugError):
    """A TSV/CSV token could not be parsed. Carries line/column context."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({loc})"
        super().__init__(message)
        self.line = line
        self.column = column


class FormatError(SeqAugError):
    """A file exists but is not in the expected format (e.g. empty)."""


class DimensionError(SeqAugError, ValueError):
    """Channel-count mismatch or an operation unsupported at this D."""


class DomainError(SeqAugError, ValueError):
    """A query point lies outside the supported domain."""


class ConstraintError(SeqAugError, ValueError):
    """A method precondition cannot be met (band infeasibility, window
    too short, not enough candidates, ...)."""


class ArgumentError(SeqAugError, ValueError):
    """A caller-supplied argument is invalid."""


class MissingDeltaError(SeqAugError):
    """Accuracy-delta rows required for correlation are absent."""

    def __init__(self, missing_pairs):
        pairs = ", ".join(f"({d}, {m})" for d, m in missing_pairs)
        super().__init__(f"missing delta_acc rows for: {pairs}")
        self.missing_pairs = list(missing_pairs)
