"""Exception types shared across the package."""


class AlgQEError(Exception):
    """Base class for structured package errors."""


class ParseError(AlgQEError):
    def __init__(self, message, line, col):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class SizeLimitExceeded(AlgQEError):
    def __init__(self, kind, count, limit):
        super().__init__(f"{kind} count {count} exceeds limit {limit}")
        self.kind = kind
        self.count = count
        self.limit = limit


class DegreeTooHigh(AlgQEError):
    def __init__(self, var, atom_text, degree):
        super().__init__(f"degree {degree} in {var!r} too high for atom {atom_text}")
        self.var = var
        self.atom_text = atom_text
        self.degree = degree


class NotApplicable(AlgQEError):
    """Requested rewriting step does not apply to the input."""


class ShapeNotConjunctive(AlgQEError):
    """Matrix is not a conjunction of atoms; counts are non-canonical."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TransferError(AlgQEError):
    """Quantifier elimination hit a backend boundary; carries the report
    accumulated so far plus the partially eliminated real formula."""

    def __init__(self, cause, report, partial):
        super().__init__(str(cause))
        self.cause = cause
        self.report = report
        self.partial = partial
