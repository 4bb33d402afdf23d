"""Thermodynamics and zeta-regularised vacuum energy of the 1D relativistic oscillators."""

from .core import (
    ConvergenceError,
    DomainError,
    PoleError,
    ReloscError,
    SeriesControl,
    UnsupportedOrderError,
)
from .partition import (
    GroundStateShift,
    ZetaFormMode,
    partition_direct,
    partition_euler_maclaurin,
    partition_zeta,
    tail_bound,
)
from .specfun import (
    bernoulli_number,
    bernoulli_polynomial,
    hurwitz_asymptotic,
    hurwitz_zeta,
    pochhammer_ratio,
    riemann_zeta,
)
from .spectrum import Kind, OscillatorParams, Regime, classify_regime, energy_level
from .thermo import Method, ThermoPoint, finite_difference_check, sweep, thermo_point
from .vacuum import (
    VacuumResult,
    vacuum_energy_asymptotic,
    vacuum_energy_exact,
    vacuum_energy_leading,
    vacuum_report,
)

__version__ = "0.1.0"
