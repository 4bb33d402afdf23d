import math

import numpy as np
import pytest

from relosc.core import ConvergenceError, DomainError, SeriesControl
from relosc.partition import ClosedFormZ, ZetaFormMode, boltzmann_sums, em_closed_form
from relosc.spectrum import OscillatorParams
from relosc.thermo import Method, finite_difference_check, sweep, thermo_point

R1 = OscillatorParams(1.0)
WIDE = SeriesControl(max_terms=10**8)


def brute_point(r, tau, n_terms):
    """Plain-numpy moments over a fixed number of levels."""
    e = np.sqrt(1 + 2 * r * np.arange(n_terms, dtype=float))
    w = np.exp(-(e - 1) / tau)
    z = w.sum()
    u = (e * w).sum() / z
    var = ((e - u) ** 2 * w).sum() / z
    log_z = math.log(z) - 1 / tau
    return log_z, u, log_z + u / tau, var / tau**2


def test_low_temperature_saturation():
    pt = thermo_point(R1, 0.005)
    assert pt.U == pytest.approx(1.0, abs=1e-12)
    assert pt.S == pytest.approx(0.0, abs=1e-12)
    assert pt.C == pytest.approx(0.0, abs=1e-12)
    assert pt.F == pytest.approx(1.0, abs=1e-12)


def test_high_temperature_limit_direct():
    assert thermo_point(R1, 100.0).C == pytest.approx(2.0, abs=0.05)


def test_high_temperature_zeta_exact_at_r1():
    pt = thermo_point(R1, 100.0, Method.HURWITZ_ZETA)
    assert pt.Z == pytest.approx(1e4, rel=1e-14)
    assert pt.U == pytest.approx(200.0, rel=1e-14)
    assert pt.C == pytest.approx(2.0, rel=1e-12)


@pytest.mark.parametrize("r, tau", [(1.0, 0.7), (0.3, 2.0), (2.5, 5.0)])
def test_direct_point_vs_brute_force(r, tau):
    pt = thermo_point(OscillatorParams(r), tau)
    log_z, u, s, c = brute_point(r, tau, 2 * 10**6)
    assert math.log(pt.Z) == pytest.approx(log_z, rel=1e-12)
    assert pt.F == pytest.approx(-tau * log_z, rel=1e-12)
    assert pt.U == pytest.approx(u, rel=1e-11)
    assert pt.S == pytest.approx(s, rel=1e-11)
    assert pt.C == pytest.approx(c, rel=1e-9)


@pytest.mark.parametrize("r, tau, limit", [(1.0, 1.0, 1e-5), (1.0, 10.0, 1e-5), (0.01, 1.0, 1e-4)])
def test_finite_difference_examples(r, tau, limit):
    assert finite_difference_check(OscillatorParams(r), tau) <= limit


def test_finite_difference_step_underflow():
    with pytest.raises(DomainError):
        finite_difference_check(R1, 1.0, rel_step=1e-20)


def test_sweep_basic():
    pts = sweep(R1, [0.5, 1.0])
    assert [p.tau for p in pts] == [0.5, 1.0]
    assert pts[1].S > pts[0].S
    assert sweep(R1, []) == []


def test_sweep_rejects_unsorted_grid():
    with pytest.raises(DomainError):
        sweep(R1, [1.0, 0.5])
    with pytest.raises(DomainError):
        sweep(R1, [1.0, 1.0])


def test_sweep_collects_failures():
    pts = sweep(R1, [0.01, 1.0], Method.EULER_MACLAURIN)
    assert not pts[0].ok and math.isnan(pts[0].C) and "not positive" in pts[0].error
    assert pts[1].ok


def test_sweep_parallel_preserves_order():
    grid = list(np.geomspace(0.05, 20, 25))
    serial = sweep(OscillatorParams(0.4), grid)
    threaded = sweep(OscillatorParams(0.4), grid, workers=4)
    assert serial == threaded


def test_non_relativistic_curves_coincide():
    # r = 1e-10 is out of reach for direct summation; the Euler-Maclaurin form
    # is exact to rounding there (its error scales with powers of r)
    grid = [10.0, 15.0, 20.0]
    a = sweep(OscillatorParams(0.1), grid, ctl=WIDE)
    b = sweep(OscillatorParams(1e-10), grid, Method.EULER_MACLAURIN)
    for pa, pb in zip(a, b):
        assert abs(pa.C - pb.C) <= 1e-3


@pytest.mark.parametrize("r", [1e-4, 0.01])
@pytest.mark.parametrize("tau", [0.1, 0.3, 1.0])
def test_em_own_agrees_with_direct_for_small_r(r, tau):
    direct = thermo_point(OscillatorParams(r), tau)
    em = thermo_point(OscillatorParams(r), tau, Method.EULER_MACLAURIN)
    assert em.C == pytest.approx(direct.C, rel=1e-8)
    assert em.S == pytest.approx(direct.S, rel=1e-8)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_high_temperature_law(r):
    assert abs(thermo_point(OscillatorParams(r), 100.0, ctl=WIDE).C - 2.0) <= 0.05


@pytest.mark.parametrize("r", [0.05, 1.0, 4.0])
def test_entropy_monotone_and_heat_capacity_nonnegative(r):
    pts = sweep(OscillatorParams(r), np.geomspace(0.01, 20, 120))
    assert all(p.ok for p in pts)
    assert all(b.S >= a.S - 1e-9 for a, b in zip(pts, pts[1:]))
    assert all(p.C >= -1e-9 for p in pts)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("tau", [10.0, 30.0, 80.0])
def test_zeta_method_agrees_with_direct(r, tau):
    p = OscillatorParams(r)
    assert abs(thermo_point(p, tau, Method.HURWITZ_ZETA).C - thermo_point(p, tau).C) <= 0.02


@pytest.mark.parametrize("tau", [0.5, 3.0, 12.0])
def test_shift_invariance_of_entropy_and_heat_capacity(tau):
    unshifted = em_closed_form(OscillatorParams(0.8))
    shifted = ClosedFormZ(unshifted.coeffs, ground=0.0)
    s_a = unshifted.log_value(tau) + unshifted.mean_energy(tau) / tau
    s_b = shifted.log_value(tau) + shifted.mean_energy(tau) / tau
    assert s_a == pytest.approx(s_b, abs=1e-10)
    assert unshifted.heat_capacity(tau) == pytest.approx(shifted.heat_capacity(tau), abs=1e-10)
    # direct-sum entropy from shifted weights equals ln Z + U / tau in the unshifted convention
    sums = boltzmann_sums(OscillatorParams(0.8), tau)
    pt = thermo_point(OscillatorParams(0.8), tau)
    s_unshifted = (math.log(sums.z_shifted) - 1 / tau) + (1 + sums.mean_excitation) / tau
    assert pt.S == pytest.approx(s_unshifted, abs=1e-10)


def test_printed_mode_changes_closed_forms_only():
    d1 = thermo_point(R1, 5.0, mode=ZetaFormMode.AS_PRINTED)
    d2 = thermo_point(R1, 5.0)
    assert d1 == d2
    z1 = thermo_point(R1, 5.0, Method.HURWITZ_ZETA, mode=ZetaFormMode.AS_PRINTED)
    assert z1.Z == pytest.approx(12.5)


def test_zeta_method_fails_where_closed_form_goes_negative():
    with pytest.raises(ConvergenceError):
        thermo_point(OscillatorParams(0.01), 0.1, Method.HURWITZ_ZETA)


def test_invalid_tau():
    with pytest.raises(DomainError):
        thermo_point(R1, 0.0)
    with pytest.raises(DomainError):
        thermo_point(R1, -1.0)
