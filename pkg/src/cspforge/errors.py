"""Exception hierarchy shared by every cspforge module."""

from __future__ import annotations


class CSPError(Exception):
    """Base class for all cspforge failures."""


class ParseError(CSPError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceError(CSPError):
    """An instance does not meet the precondition of an operation."""


class CapExceeded(CSPError):
    """An exact evaluation would exceed its configured work cap."""

    def __init__(self, message: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{message}: {size} > cap {cap}")


class BlowUpError(CSPError):
    """A reduction would build a domain or table larger than the configured cap."""

    def __init__(self, step: str, size: int, cap: int):
        self.step = step
        self.size = size
        self.cap = cap
        super().__init__(f"step {step!r} would produce size {size} > cap {cap}")
