import math

import pytest

from relosc.core import DomainError
from relosc.specfun import hurwitz_asymptotic, hurwitz_zeta, riemann_zeta
from relosc.spectrum import OscillatorParams
from relosc.vacuum import (
    asymptotic_term,
    vacuum_energy_asymptotic,
    vacuum_energy_exact,
    vacuum_energy_leading,
    vacuum_report,
)

R1 = OscillatorParams(1.0)
R_QUARTER = OscillatorParams(0.25)


def test_exact_r1_matches_identity_oracle():
    oracle = (2**-0.5 - 1) * riemann_zeta(-0.5) * math.sqrt(2)
    assert vacuum_energy_exact(R1) == pytest.approx(oracle, abs=1e-12)
    assert vacuum_energy_exact(R1) == pytest.approx(0.0861092938161647, abs=1e-12)


def test_exact_quarter_matches_shift_oracle():
    oracle = math.sqrt(0.5) * (riemann_zeta(-0.5) - 1.0)
    assert vacuum_energy_exact(R_QUARTER) == pytest.approx(oracle, abs=1e-12)
    assert vacuum_energy_exact(R_QUARTER) == pytest.approx(-0.854104540583307, abs=1e-12)


def test_exact_approaches_leading_form_for_small_r():
    for r in (1e-2, 1e-4, 1e-6):
        p = OscillatorParams(r)
        exact = vacuum_energy_exact(p)
        assert math.isfinite(exact)
        # next correction is -r/12, so the gap shrinks linearly in r
        assert abs(exact - vacuum_energy_leading(p)) == pytest.approx(r / 12, rel=1e-2)


def test_leading_form():
    assert vacuum_energy_leading(R1) == 1 / 6
    assert vacuum_energy_leading(R_QUARTER) == pytest.approx(-0.8333333333333334)
    exact = vacuum_energy_exact(R_QUARTER)
    assert abs(vacuum_energy_leading(R_QUARTER) - exact) / abs(exact) < 0.025


def test_k2_truncation():
    approx = vacuum_energy_asymptotic(R1, 2)
    assert approx == pytest.approx(1 / 12, rel=1e-14)
    assert asymptotic_term(2, R1) == pytest.approx(-(2 / 3) * (1 / 12) * 0.75 * 2, rel=1e-15)
    assert abs(approx - vacuum_energy_exact(R1)) / vacuum_energy_exact(R1) < 0.035


@pytest.mark.parametrize("r", [1.0, 0.5, 0.1, 0.01])
@pytest.mark.parametrize("k_max", [2, 4, 8])
def test_asymptotic_is_specialised_hurwitz_series(r, k_max):
    p = OscillatorParams(r)
    generic = p.gamma * hurwitz_asymptotic(-1.5, p.alpha, k_max)
    assert vacuum_energy_asymptotic(p, k_max) == pytest.approx(generic, rel=1e-13)


def test_asymptotic_improves_as_r_decreases():
    errors = []
    for r in (1.0, 0.5, 0.25, 0.1):
        p = OscillatorParams(r)
        exact = vacuum_energy_exact(p)
        errors.append(abs(vacuum_energy_asymptotic(p, 4) - exact) / abs(exact))
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_odd_terms_vanish():
    for k in (3, 5, 7, 9):
        assert asymptotic_term(k, R1) == 0.0


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 5.0, 50.0])
def test_exact_shift_identity(alpha):
    assert hurwitz_zeta(-0.5, alpha) - hurwitz_zeta(-0.5, alpha + 1) == pytest.approx(
        math.sqrt(alpha), abs=1e-10
    )


def test_report_bundles_values():
    res = vacuum_report(R1)
    assert res.k_max == 8
    assert res.exact == vacuum_energy_exact(R1)
    assert res.leading == 1 / 6
    assert res.asymptotic == vacuum_energy_asymptotic(R1, 8)


def test_asymptotic_kmax_validation():
    with pytest.raises(DomainError):
        vacuum_energy_asymptotic(R1, 1)
