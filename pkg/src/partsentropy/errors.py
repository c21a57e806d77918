"""Exception types shared across the package."""


class GeometryError(ValueError):
    """A geometry file or body definition failed validation.

    ``field`` names the offending JSON field (e.g. ``vertices[3]``) and
    ``line`` carries the source line for parse errors, when known.
    """

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line


class InfeasibleError(RuntimeError):
    """A requested quantity does not exist (e.g. nonpositive free motion volume).

    ``details`` holds the diagnostic values that led to the verdict.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = dict(details or {})
