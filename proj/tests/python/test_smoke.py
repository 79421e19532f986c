"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import combforge as cf

PHI0 = cf.FLUX_QUANTUM_WB


def nb_squid():
    p = cf.SquidParams()
    p.shunt_resistance_ohm = 20.0
    p.critical_current_sum_A = 100e-6
    return p


def nb_drive():
    d = cf.DriveConfig()
    d.frequency_Hz = 1e9
    d.amplitude = 0.9
    d.bias = 1e-3
    return d


def test_flux_and_drive_term():
    drive = nb_drive()
    assert cf.external_flux(drive, 0.0, math.pi / 2) == pytest.approx(0.5)
    assert cf.external_flux(drive, 0.0, 0.0) == pytest.approx(0.05)
    assert cf.josephson_drive_term(math.pi / 2, 0.0, 0.3) == pytest.approx(1.0)


def test_effective_resistance_and_switch_times():
    assert cf.effective_resistance(20.0, 50.0, 50) == pytest.approx(1000.0 / 1050.0)
    t = cf.predicted_switch_time(0.01, nb_drive(), 0)
    assert t.exact_s == pytest.approx(2.48249085e-10, rel=1e-6)
    assert cf.switch_time_spread(0.01, nb_drive()) == pytest.approx(1.7683883e-12, rel=1e-6)


def test_simulate_and_pulses():
    grid = cf.SimGrid.with_samples_per_period(8192, 4, 2)
    v = cf.simulate_squid(nb_squid(), nb_drive(), grid, cf.effective_resistance(20, 50, 50))
    values = v.values
    assert isinstance(values, np.ndarray)
    assert len(values) == 2 * 8192
    pulses = cf.voltage_pulse_metrics(v, nb_drive())
    assert len(pulses) == 4
    for p in pulses:
        assert p.signed_area_Wb == pytest.approx(PHI0 / 2, rel=0.01)


def test_harmonic_power_even_comb():
    grid = cf.SimGrid.with_samples_per_period(8192, 4, 2)
    v = cf.simulate_squid(nb_squid(), nb_drive(), grid, cf.effective_resistance(20, 50, 50))
    spectrum = cf.harmonic_power(v, 1e9, 10, 50.0)
    powers = {line.index: line.power_W for line in spectrum.harmonics}
    assert powers[2] > 0
    assert powers[3] < 1e-3 * powers[2]
    assert spectrum.harmonics[1].parity == cf.Parity.even


def test_ensemble_round_trip():
    squid = nb_squid()
    grid = cf.SimGrid.with_samples_per_period(2048, 4, 2)
    array = cf.ArrayConfig(10, 50.0, squid, nb_drive(), grid)
    spec = cf.DisorderSpec()
    spec.sigma_area = 0.01
    spec.n_bins = 15
    spec.n_realizations = 20
    spec.seed = 7
    table = cf.build_bins(cf.DisorderAxis.area, spec, array)
    assert len(table) == 15
    first = cf.sample_realization(table, spec, 10, 0)
    again = cf.sample_realization(table, spec, 10, 0)
    assert np.array_equal(first.values, again.values)
    result = cf.typical_voltage(table, spec, array)
    assert len(result.typical_voltage) == len(first)


def test_validation_errors_are_python_exceptions():
    bad = cf.SquidParams()
    bad.asymmetry = 1.5
    with pytest.raises(cf.CombforgeError):
        bad.validate()


def test_scenarios_listed():
    names = cf.list_scenarios()
    assert "fig3_inductance_spectrum" in names
    assert len(names) == 8
