"""Exception types shared across the package."""


class CircolorError(Exception):
    """Base class for all package errors."""


class InputError(CircolorError, ValueError):
    """Malformed or out-of-contract input (bad instance, bad breaker, bad coloring)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndefinedBoundError(InputError):
    """The pair-weight bound L is undefined because the digraph has no arcs."""

    def __init__(self):
        super().__init__("L undefined: digraph has no arcs")


class CapExceeded(CircolorError, RuntimeError):
    """A configured resource cap (cycles, breakers, vertices) was hit."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} cap of {cap} exceeded")
