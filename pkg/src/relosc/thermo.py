"""Thermodynamic functions in reduced units.

Energies are per mc^2, entropy and heat capacity per k_B, and Z is in the
unshifted convention throughout:

    F = -tau ln Z,  U = tau^2 d ln Z / d tau,  S = ln Z + U / tau,  C = dU / d tau
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .core import DEFAULT_CONTROL, DomainError, ReloscError, SeriesControl, check_tau
from .partition import (
    ZetaFormMode,
    boltzmann_sums,
    em_closed_form,
    zeta_closed_form,
)
from .spectrum import OscillatorParams

__all__ = ["Method", "ThermoPoint", "thermo_point", "finite_difference_check", "sweep"]


class Method(enum.Enum):
    DIRECT_SUM = "direct"
    HURWITZ_ZETA = "zeta"
    EULER_MACLAURIN = "euler-maclaurin"


@dataclass(frozen=True)
class ThermoPoint:
    r: float
    tau: float
    method: Method
    Z: float
    F: float
    U: float
    S: float
    C: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _direct_point(params: OscillatorParams, tau: float, ctl: SeriesControl) -> ThermoPoint:
    sums = boltzmann_sums(params, tau, ctl, moments=True)
    log_z = math.log(sums.z_shifted) - 1.0 / tau
    U = 1.0 + sums.mean_excitation
    S = math.log(sums.z_shifted) + sums.mean_excitation / tau
    C = sums.variance / (tau * tau)
    return ThermoPoint(params.r, tau, Method.DIRECT_SUM, math.exp(log_z), -tau * log_z, U, S, C)


def thermo_point(
    params: OscillatorParams,
    tau: float,
    method: Method = Method.DIRECT_SUM,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED,
) -> ThermoPoint:
    """Evaluate (Z, F, U, S, C) at one temperature.

    DIRECT_SUM takes U and C from exact Boltzmann moments (C is the energy
    variance over tau^2). The two closed-form methods differentiate their
    Laurent polynomial analytically; ``mode`` picks printed or rederived
    coefficients for them and is ignored for DIRECT_SUM.

    Closed forms can go non-positive at low tau; that raises
    ConvergenceError, as does a direct sum that hits ``ctl.max_terms``.
    """
    tau = check_tau(tau)
    method = Method(method)
    if method is Method.DIRECT_SUM:
        return _direct_point(params, tau, ctl)
    if method is Method.HURWITZ_ZETA:
        form = zeta_closed_form(params, mode, ctl)
    else:
        form = em_closed_form(params, mode, ctl)
    log_z = form.log_value(tau)
    U = form.mean_energy(tau)
    return ThermoPoint(
        params.r,
        tau,
        method,
        math.exp(log_z),
        -tau * log_z,
        U,
        log_z + U / tau,
        form.heat_capacity(tau),
    )


def finite_difference_check(
    params: OscillatorParams,
    tau: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
    rel_step: float = 1e-4,
) -> float:
    """Largest relative gap between moment-sum U, C and central differences of ln Z.

    ln Z comes from the direct sum at a tolerance of at most 1e-15 so that
    truncation noise stays well below the second-difference resolution.
    """
    tau = check_tau(tau)
    h = rel_step * tau
    if not (h > 0 and tau - h != tau and tau > 2 * h):
        raise DomainError(f"finite-difference step {h!r} unusable at tau={tau}")
    fine = replace(ctl, tolerance=min(ctl.tolerance, 1e-15))

    def log_z(t: float) -> float:
        return math.log(boltzmann_sums(params, t, fine, moments=False).z_shifted) - 1.0 / t

    lo, mid, hi = log_z(tau - h), log_z(tau), log_z(tau + h)
    d1 = (hi - lo) / (2 * h)
    d2 = (hi - 2 * mid + lo) / (h * h)
    u_fd = tau * tau * d1
    c_fd = 2 * tau * d1 + tau * tau * d2

    exact = _direct_point(params, tau, fine)
    return max(abs(exact.U - u_fd) / abs(exact.U), abs(exact.C - c_fd) / abs(exact.C))


def _failed(params: OscillatorParams, tau: float, method: Method, exc: Exception) -> ThermoPoint:
    nan = math.nan
    return ThermoPoint(params.r, tau, method, nan, nan, nan, nan, nan, error=str(exc))


def sweep(
    params: OscillatorParams,
    tau_grid,
    method: Method = Method.DIRECT_SUM,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED,
    workers: int = 1,
) -> list[ThermoPoint]:
    """One ThermoPoint per grid temperature, in grid order.

    A point whose evaluation fails is returned with NaN values and its
    ``error`` message set; the rest of the sweep continues.
    """
    taus = [check_tau(t) for t in tau_grid]
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise DomainError("tau grid must be strictly increasing")
    method = Method(method)

    def one(tau: float) -> ThermoPoint:
        try:
            return thermo_point(params, tau, method, ctl, mode)
        except ReloscError as exc:
            return _failed(params, tau, method, exc)

    if workers > 1 and len(taus) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, taus))
    return [one(t) for t in taus]
