"""Oscillator parameters and the shared Dirac / Klein-Gordon spectrum.

Energies are in units of mc^2. Both oscillators in one dimension have the
levels E_n = +/- sqrt(1 + 2 r n) with r = hbar omega / mc^2; only the
positive branch enters the thermodynamics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError

__all__ = [
    "Kind",
    "Regime",
    "OscillatorParams",
    "energy_level",
    "energy_levels",
    "classify_regime",
]

RELATIVISTIC_THRESHOLD = 0.5


class Kind(enum.Enum):
    DIRAC = "dirac"
    KLEIN_GORDON = "klein-gordon"


class Regime(enum.Enum):
    RELATIVISTIC = "relativistic"
    NON_RELATIVISTIC = "non-relativistic"


@dataclass(frozen=True)
class OscillatorParams:
    """Control parameter r = hbar omega / mc^2 and the oscillator kind."""

    r: float
    kind: Kind = Kind.DIRAC

    def __post_init__(self):
        r = float(self.r)
        if not (r > 0 and math.isfinite(r)):
            raise DomainError(f"r must be positive and finite, got {self.r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "kind", Kind(self.kind))

    @property
    def alpha(self) -> float:
        """Hurwitz shift 1 / (2r)."""
        return 1.0 / (2.0 * self.r)

    @property
    def gamma(self) -> float:
        """Scale sqrt(2r), so that E_n = gamma * sqrt(n + alpha)."""
        return math.sqrt(2.0 * self.r)


def energy_level(n: int, params: OscillatorParams, branch: int = 1) -> float:
    """E_n / mc^2 = branch * sqrt(1 + 2 r n).

    ``branch=-1`` gives the negative-energy level; thermodynamic sums use
    only ``branch=1``. The result does not depend on ``params.kind``.
    """
    if n < 0:
        raise DomainError(f"level index must be >= 0, got {n}")
    if branch not in (1, -1):
        raise DomainError(f"branch must be +1 or -1, got {branch}")
    return branch * math.sqrt(1.0 + 2.0 * params.r * n)


def energy_levels(n, params: OscillatorParams) -> np.ndarray:
    """Vectorised positive-branch levels for an array of indices."""
    n = np.asarray(n, dtype=float)
    return np.sqrt(1.0 + 2.0 * params.r * n)


def classify_regime(params: OscillatorParams) -> Regime:
    if params.r >= RELATIVISTIC_THRESHOLD:
        return Regime.RELATIVISTIC
    return Regime.NON_RELATIVISTIC
