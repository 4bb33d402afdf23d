"""Zeta-regularised vacuum energy eps_0 / mc^2 = sqrt(2r) zeta(-1/2, 1/(2r))."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DEFAULT_CONTROL, DomainError, SeriesControl
from .specfun import bernoulli_number, hurwitz_zeta, pochhammer_ratio
from .spectrum import OscillatorParams

__all__ = [
    "DEFAULT_KMAX",
    "VacuumResult",
    "vacuum_energy_exact",
    "vacuum_energy_leading",
    "asymptotic_term",
    "vacuum_energy_asymptotic",
    "vacuum_report",
]

DEFAULT_KMAX = 8


@dataclass(frozen=True)
class VacuumResult:
    r: float
    exact: float
    asymptotic: float
    leading: float
    k_max: int


def vacuum_energy_exact(params: OscillatorParams, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    return params.gamma * hurwitz_zeta(-0.5, params.alpha, ctl)


def vacuum_energy_leading(params: OscillatorParams) -> float:
    """Two-term small-r form 1/2 - 1/(3r), written as (3r - 2) / (6r)."""
    r = params.r
    return (3.0 * r - 2.0) / (6.0 * r)


def asymptotic_term(k: int, params: OscillatorParams) -> float:
    """k-th correction -(2/3) (B_k / k!) (-3/2)_k (2r)^(k-1); zero for odd k >= 3."""
    bk = bernoulli_number(k)
    if bk == 0:
        return 0.0
    weight = float(bk) / math.factorial(k)
    return -2.0 / 3.0 * weight * pochhammer_ratio(-1.5, k) * (2.0 * params.r) ** (k - 1)


def vacuum_energy_asymptotic(params: OscillatorParams, k_max: int = DEFAULT_KMAX) -> float:
    """Leading form plus corrections k = 2..k_max. Asymptotic in small r."""
    if k_max < 2:
        raise DomainError(f"k_max must be >= 2, got {k_max}")
    terms = [asymptotic_term(k, params) for k in range(2, k_max + 1)]
    return math.fsum([-1.0 / (3.0 * params.r), 0.5, *terms])


def vacuum_report(
    params: OscillatorParams,
    k_max: int = DEFAULT_KMAX,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> VacuumResult:
    return VacuumResult(
        r=params.r,
        exact=vacuum_energy_exact(params, ctl),
        asymptotic=vacuum_energy_asymptotic(params, k_max),
        leading=vacuum_energy_leading(params),
        k_max=k_max,
    )
