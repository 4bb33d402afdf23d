"""Shared controls and error types."""

from __future__ import annotations

import math
from dataclasses import dataclass


class ReloscError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ReloscError, ValueError):
    """An argument lies outside the domain of the function."""


class PoleError(DomainError):
    """The function has a pole at the requested argument."""


class UnsupportedOrderError(ReloscError, ValueError):
    """A requested expansion or table order is not implemented."""


class ConvergenceError(ReloscError, ArithmeticError):
    """A series did not reach the requested tolerance within its term cap.

    ``bound`` carries the best error bound achieved before giving up.
    """

    def __init__(self, message: str, bound: float = math.inf):
        super().__init__(message)
        self.bound = bound


@dataclass(frozen=True)
class SeriesControl:
    """Truncation settings for every infinite sum in the package.

    tolerance : relative stopping tolerance
    max_terms : hard cap on explicitly summed terms
    em_order  : highest Euler-Maclaurin correction order p (B_2p terms)
    """

    tolerance: float = 1e-12
    max_terms: int = 10_000_000
    em_order: int = 2

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.em_order < 1:
            raise DomainError(f"em_order must be >= 1, got {self.em_order}")


DEFAULT_CONTROL = SeriesControl()


def check_tau(tau: float) -> float:
    """Validate a reduced temperature k_B T / mc^2."""
    tau = float(tau)
    if not (tau > 0 and math.isfinite(tau)):
        raise DomainError(f"reduced temperature must be positive and finite, got {tau}")
    return tau
