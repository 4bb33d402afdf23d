"""Partition function Z(r, tau) by three routes.

* direct summation of the Boltzmann factors, truncated with a rigorous
  integral-test tail bound; this is the reference the other two are
  checked against;
* the Hurwitz-zeta residue closed form, valid at high temperature;
* the Euler-Maclaurin expansion about n = 0.

Unless stated otherwise Z is in the unshifted convention
Z = sum_n exp(-E_n / tau). The shifted convention measures energies from
the ground state E_0 = 1 and differs by the factor exp(1 / tau).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_CONTROL,
    ConvergenceError,
    SeriesControl,
    UnsupportedOrderError,
    check_tau,
)
from .specfun import bernoulli_number, hurwitz_zeta
from .spectrum import OscillatorParams

__all__ = [
    "SeriesControl",
    "ZetaFormMode",
    "GroundStateShift",
    "BoltzmannSums",
    "ClosedFormZ",
    "boltzmann_sums",
    "tail_integral",
    "tail_bound",
    "partition_direct",
    "zeta_closed_form",
    "partition_zeta",
    "em_closed_form",
    "em_derivatives",
    "partition_euler_maclaurin",
]

_MAX_CHUNK = 1 << 20
_FIRST_CHUNK = 1 << 10
MAX_EM_ORDER = 2


class ZetaFormMode(enum.Enum):
    """Which closed form to use.

    AS_PRINTED reproduces the published coefficients literally.
    RESIDUE_CORRECTED uses coefficients rederived here: tau^2 / r from the
    residue 2 at s = 2 for the zeta route, and correctly signed
    derivatives for the Euler-Maclaurin route.
    """

    AS_PRINTED = "printed"
    RESIDUE_CORRECTED = "corrected"


class GroundStateShift(enum.Enum):
    UNSHIFTED = "unshifted"
    SHIFTED = "shifted"


def _convert(z_shifted: float, tau: float, shift: GroundStateShift) -> float:
    if GroundStateShift(shift) is GroundStateShift.SHIFTED:
        return z_shifted
    return z_shifted * math.exp(-1.0 / tau)


# ---------------------------------------------------------------------------
# direct summation


@dataclass(frozen=True)
class BoltzmannSums:
    """Truncated Boltzmann sums with ground-state-shifted weights.

    With eps_n = E_n - 1 and w_n = exp(-eps_n / tau):
    ``z_shifted`` = sum w_n, ``mean_excitation`` = <eps>, ``variance`` =
    <eps^2> - <eps>^2. ``terms`` is the number of levels summed and
    ``bound`` the relative tail bound reached for z_shifted.
    """

    z_shifted: float
    mean_excitation: float
    variance: float
    terms: int
    bound: float


def _tail_moment_bound(r: float, tau: float, u: float, k: int) -> float:
    """Bound on sum_{E_n >= u} E_n^k exp(-(E_n - 1)/tau).

    First term plus the integral over n, which in E is
    (1/r) int_u^inf E^(k+1) exp(-(E-1)/tau) dE. Valid once the summand is
    decreasing, i.e. u >= k tau.
    """
    decay = math.exp(-(u - 1.0) / tau)
    if decay == 0.0:
        return 0.0
    poly = math.fsum(
        math.factorial(k + 1) / math.factorial(j) * u**j * tau ** (k + 2 - j)
        for j in range(k + 2)
    )
    return decay * (u**k + poly / r)


def boltzmann_sums(
    params: OscillatorParams,
    tau: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
    moments: bool = True,
) -> BoltzmannSums:
    """Sum the shifted Boltzmann weights (and optionally eps, eps^2 moments).

    Summation proceeds in growing numpy chunks and stops at the first chunk
    boundary N where the tail bound from N on is below ``ctl.tolerance``
    times the partial sum (for the moments: times partial sum + tau^k Z).

    Raises ConvergenceError if ``ctl.max_terms`` is reached first.
    """
    tau = check_tau(tau)
    r = params.r
    orders = (0, 1, 2) if moments else (0,)
    parts: dict[int, list[float]] = {k: [] for k in orders}
    n0 = 0
    chunk = _FIRST_CHUNK
    while True:
        n_end = min(n0 + chunk, ctl.max_terms)
        n = np.arange(n0, n_end, dtype=float)
        two_rn = 2.0 * r * n
        eps = two_rn / (1.0 + np.sqrt(1.0 + two_rn))
        w = np.exp(-eps / tau)
        parts[0].append(float(w.sum()))
        if moments:
            ew = eps * w
            parts[1].append(float(ew.sum()))
            parts[2].append(float((eps * ew).sum()))
        n0 = n_end

        sums = {k: math.fsum(parts[k]) for k in orders}
        u = math.sqrt(1.0 + 2.0 * r * n0)
        z = sums[0]
        rel0 = _tail_moment_bound(r, tau, u, 0) / z
        done = rel0 <= ctl.tolerance
        if moments and done:
            done = u >= 2.0 * tau and all(
                _tail_moment_bound(r, tau, u, k) <= ctl.tolerance * (sums[k] + tau**k * z)
                for k in (1, 2)
            )
        if done:
            break
        if n0 >= ctl.max_terms:
            raise ConvergenceError(
                f"direct sum for r={r}, tau={tau} not converged after "
                f"{n0} terms (relative tail bound {rel0:.3e})",
                bound=rel0,
            )
        chunk = min(2 * chunk, _MAX_CHUNK)

    if moments:
        mean = sums[1] / z
        var = max(sums[2] / z - mean * mean, 0.0)
    else:
        mean = var = math.nan
    return BoltzmannSums(z, mean, var, n0, rel0)


def tail_integral(params: OscillatorParams, tau: float, from_n: int = 0) -> float:
    """int_{from_n}^inf exp(-sqrt(1 + 2 r x) / tau) dx, in closed form.

    Equals (tau / r) (u + tau) exp(-u / tau) with u = sqrt(1 + 2 r from_n).
    """
    tau = check_tau(tau)
    u = math.sqrt(1.0 + 2.0 * params.r * from_n)
    return tau / params.r * (u + tau) * math.exp(-u / tau)


def tail_bound(params: OscillatorParams, tau: float, from_n: int) -> float:
    """Upper bound on sum_{n >= from_n} exp(-E_n / tau): first term plus integral."""
    if from_n < 0:
        raise ValueError(f"from_n must be >= 0, got {from_n}")
    tau = check_tau(tau)
    u = math.sqrt(1.0 + 2.0 * params.r * from_n)
    return math.exp(-u / tau) + tail_integral(params, tau, from_n)


def partition_direct(
    params: OscillatorParams,
    tau: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
    shift: GroundStateShift = GroundStateShift.UNSHIFTED,
) -> float:
    """Reference partition function by direct summation over the spectrum."""
    tau = check_tau(tau)
    sums = boltzmann_sums(params, tau, ctl, moments=False)
    return _convert(sums.z_shifted, tau, shift)


# ---------------------------------------------------------------------------
# closed forms


@dataclass(frozen=True)
class ClosedFormZ:
    """Z(tau) = exp(-ground / tau) * sum_k coeffs[k] tau^k.

    The Laurent polynomial part is differentiated analytically, giving U
    and C without finite differences.
    """

    coeffs: dict[int, float] = field(default_factory=dict)
    ground: float = 0.0

    def poly(self, tau: float, deriv: int = 0) -> float:
        total = []
        for k, c in self.coeffs.items():
            fac = 1.0
            for j in range(deriv):
                fac *= k - j
            if fac != 0.0:
                total.append(c * fac * tau ** (k - deriv))
        return math.fsum(total)

    def value(self, tau: float, shift: GroundStateShift = GroundStateShift.UNSHIFTED) -> float:
        tau = check_tau(tau)
        p = self.poly(tau)
        offset = self.ground
        if GroundStateShift(shift) is GroundStateShift.SHIFTED:
            offset -= 1.0
        return p if offset == 0.0 else p * math.exp(-offset / tau)

    def log_value(self, tau: float) -> float:
        """ln Z in the unshifted convention; requires a positive polynomial part."""
        p = self.poly(tau)
        if not p > 0:
            raise ConvergenceError(
                f"closed-form partition function is not positive at tau={tau} (value {p:.6g})"
            )
        return math.log(p) - self.ground / tau

    def mean_energy(self, tau: float) -> float:
        """U = tau^2 d ln Z / d tau."""
        p = self.poly(tau)
        return self.ground + tau * tau * self.poly(tau, 1) / p

    def heat_capacity(self, tau: float) -> float:
        """C = dU / d tau."""
        p = self.poly(tau)
        g1 = self.poly(tau, 1) / p
        g2 = self.poly(tau, 2) / p
        return 2.0 * tau * g1 + tau * tau * (g2 - g1 * g1)


def zeta_closed_form(
    params: OscillatorParams,
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> ClosedFormZ:
    """Residues of Gamma(s) (gamma/tau)^-s zeta(s/2, alpha) at s = 2 and s = 0.

    The s = 2 pole of zeta(s/2, alpha) has residue 2 in s, which gives
    tau^2 / r; the printed variant keeps tau^2 / (2r). The s = 0 residue is
    zeta(0, alpha) = 1/2 - alpha.
    """
    mode = ZetaFormMode(mode)
    lead = 1.0 / params.r if mode is ZetaFormMode.RESIDUE_CORRECTED else 0.5 / params.r
    return ClosedFormZ({2: lead, 0: hurwitz_zeta(0.0, params.alpha, ctl)}, ground=0.0)


def partition_zeta(
    params: OscillatorParams,
    tau: float,
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """High-temperature closed form Z = c tau^2 + 1/2 - 1/(2r).

    c = 1/r (RESIDUE_CORRECTED, the default) or 1/(2r) (AS_PRINTED).
    """
    return zeta_closed_form(params, mode, ctl).value(tau)


def em_derivatives(a: float, b: float, order: int) -> dict[int, float]:
    """Odd derivative f^(2p-1)(0) of f(x) = exp(-beta sqrt(a x + b)).

    Returned as coefficients of beta^j in f^(2p-1)(0) * exp(beta sqrt(b)).
    Only p = 1 and p = 2 are implemented.
    """
    rb = math.sqrt(b)
    if order == 1:
        return {1: -a / (2.0 * rb)}
    if order == 2:
        a3 = a**3
        return {
            1: -3.0 * a3 / (8.0 * b**2 * rb),
            2: -3.0 * a3 / (8.0 * b**2),
            3: -a3 / (8.0 * b * rb),
        }
    raise UnsupportedOrderError(
        f"Euler-Maclaurin order p={order} not implemented (max {MAX_EM_ORDER})"
    )


def em_closed_form(
    params: OscillatorParams,
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> ClosedFormZ:
    """Euler-Maclaurin expansion of sum_n f(n) about n = 0, as a ClosedFormZ.

    AS_PRINTED returns the published six-term polynomial (ground-state
    shifted, so ``ground`` = 1 recovers the unshifted Z). RESIDUE_CORRECTED
    assembles f(0)/2 + integral - sum_p B_2p/(2p)! f^(2p-1)(0) for
    p <= ctl.em_order from the closed-form derivatives.
    """
    mode = ZetaFormMode(mode)
    r = params.r
    if mode is ZetaFormMode.AS_PRINTED:
        r3 = r**3
        return ClosedFormZ(
            {
                0: 0.5,
                1: 0.5 / r,
                2: 0.5 / r,
                -1: r / 6.0 - r3 / 60.0,
                -2: -r3 / 30.0,
                -3: -4.0 * r3 / 45.0,
            },
            ground=1.0,
        )

    if ctl.em_order > MAX_EM_ORDER:
        raise UnsupportedOrderError(
            f"em_order={ctl.em_order} exceeds implemented maximum {MAX_EM_ORDER}"
        )
    # reduced units: E = sqrt(a n + b) with a = 2r, b = 1, and beta = 1/tau
    a, b = 2.0 * r, 1.0
    rb = math.sqrt(b)
    coeffs = {0: 0.5, 2: 2.0 / a, 1: 2.0 * rb / a}
    for p in range(1, ctl.em_order + 1):
        weight = float(bernoulli_number(2 * p)) / math.factorial(2 * p)
        for j, c in em_derivatives(a, b, p).items():
            coeffs[-j] = coeffs.get(-j, 0.0) - weight * c
    return ClosedFormZ(coeffs, ground=rb)


def partition_euler_maclaurin(
    params: OscillatorParams,
    tau: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED,
    shift: GroundStateShift = GroundStateShift.UNSHIFTED,
) -> float:
    """Euler-Maclaurin partition function in the requested convention."""
    return em_closed_form(params, mode, ctl).value(tau, shift)
