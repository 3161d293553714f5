"""Exception types raised across the toolkit."""

from typing import Iterable


class DogfightError(Exception):
    """Base class for toolkit errors."""


class DimensionMismatchError(DogfightError, ValueError):
    """A point and a box (or two bound vectors) disagree in dimension."""


class OutOfBoundsError(DogfightError, ValueError):
    """A point handed to a raw evaluator lies outside the problem box."""


class BudgetError(DogfightError, ValueError):
    """The evaluation budget cannot hold the initial population."""


class ConfigurationError(DogfightError):
    """An experiment configuration is invalid or incomplete."""


class HistoryMissingError(DogfightError):
    """Diversity emission was requested for a run without recorded positions."""


class UnknownNameError(DogfightError, KeyError):
    """A registry lookup failed."""

    def __init__(self, kind: str, name: str, valid: Iterable[str]):
        self.kind = kind
        self.name = name
        self.valid = sorted(valid)
        super().__init__(f"Unknown {kind} '{name}'. Valid names: {', '.join(self.valid)}")

    def __str__(self) -> str:
        return self.args[0]
