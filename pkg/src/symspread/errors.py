"""Exception types shared across the package."""


class SymspreadError(Exception):
    pass


class DimensionMismatch(SymspreadError, ValueError):
    """Objects from rings of different dimension were combined."""


class ExponentOverflow(SymspreadError, OverflowError):
    """An exponent left the machine-width range."""


class CapExceeded(SymspreadError):
    """A hard enumeration or size cap was hit."""


class ConfigurationError(SymspreadError, ValueError):
    pass


class ParseError(SymspreadError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
