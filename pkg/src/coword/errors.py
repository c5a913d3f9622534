class CowordError(Exception):
    """Base class for pipeline errors."""


class CorpusError(CowordError):
    pass


class EmptyDocumentError(CorpusError):
    """Raised when a document has no body text left after extraction."""

    def __init__(self, doc_id, reason="no body text after extraction"):
        super().__init__(f"{doc_id}: {reason}")
        self.doc_id = doc_id


class MatrixError(CowordError):
    pass


class LayoutError(CowordError):
    pass


class FormatError(CowordError):
    """Malformed or unsupported input file."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class CowordWarning(UserWarning):
    pass
