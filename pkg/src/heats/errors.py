"""Exception types shared across the package."""

from __future__ import annotations


class HeatsError(Exception):
    """Base class for all errors raised by this package."""


class UnknownCity(HeatsError):
    """No city table row matches the requested name."""

    def __init__(self, city: str, known: tuple[str, ...] = ()):
        self.city = city
        self.known = known
        super().__init__(f"unknown city: {city!r}")


class UnknownDestination(HeatsError):
    """No destination table row matches the requested name."""

    def __init__(self, destination: str, known: tuple[str, ...] = ()):
        self.destination = destination
        self.known = known
        super().__init__(f"unknown destination: {destination!r}")


class UnknownLevels(HeatsError):
    """The loaded GN table has no rows for the requested floor count."""

    def __init__(self, levels: int, known: tuple[int, ...] = ()):
        self.levels = levels
        self.known = known
        covered = ", ".join(str(n) for n in known) or "none"
        super().__init__(f"no GN rows for levels={levels} (table covers: {covered})")


class NonPositiveDimension(HeatsError):
    """A dimension that must be strictly positive is zero or negative."""

    def __init__(self, field: str, value: float):
        self.field = field
        self.value = value
        super().__init__(f"{field} must be > 0, got {value!r}")


class TableFormatError(HeatsError):
    """A seed table file is malformed or violates a table invariant.

    Carries every violation found in the file as (line, message) pairs,
    line 1 being the header.
    """

    def __init__(self, path: str, violations: list[tuple[int, str]]):
        self.path = path
        self.violations = violations
        lines = "; ".join(
            f"line {line}: {msg}" if line else msg for line, msg in violations
        )
        super().__init__(f"{path}: {lines}")


class ParseError(HeatsError):
    """A device file is not valid JSON or a record has the wrong shape."""

    def __init__(self, path: str, locator: str, message: str):
        self.path = path
        self.locator = locator
        super().__init__(f"{path}: {locator}: {message}")


class InvariantViolation(HeatsError):
    """A device record violates a field invariant."""

    def __init__(self, path: str, locator: str, field: str, message: str):
        self.path = path
        self.locator = locator
        self.field = field
        super().__init__(f"{path}: {locator}: field {field!r}: {message}")


class DuplicateDevice(HeatsError):
    """Two device records share the same (producer, model) key."""

    def __init__(self, path: str, locator: str, producer: str, model: str):
        self.path = path
        self.locator = locator
        self.producer = producer
        self.model = model
        super().__init__(f"{path}: {locator}: duplicate device {producer!r} / {model!r}")
