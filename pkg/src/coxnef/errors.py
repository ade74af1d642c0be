class CoxnefError(Exception):
    """Base class for errors raised by this package."""


class LatticeError(CoxnefError):
    pass


class ModelError(CoxnefError):
    """A surface model violates one of its defining conditions."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class ConeError(CoxnefError):
    pass


class EnumerationError(CoxnefError):
    pass
