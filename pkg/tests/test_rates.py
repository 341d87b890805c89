import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qubit_decoherence.circuit import BathWindow, CircuitParams, complete_circuit
from qubit_decoherence.errors import DomainError
from qubit_decoherence.rates import (
    RatePair,
    calibrate_cutoff,
    calibrated_rates,
    calibration_residual,
    classical_ringdown,
    coherent_emission_rate,
    coupling_strength,
    emission_absorption,
    ohmic_density,
    rates_vs_temperature,
    ringdown_oracle,
)

from conftest import F_J, L_J, R, TWO_PI, rel

QUBIT = complete_circuit(L_J, R, F_J, 0.01)
WIDE = BathWindow.from_hz(1e6, 1e12)

# frozen from 40-digit mpmath: (coth(x/2) +- 1) / (8 R C_J) at 134 pH, 13.5 GHz, 10 kOhm
FROZEN_RATES = {
    0.01: (24103054.388120377, 1.7547995443584545e-21),
    0.1: (24140118.614770017, 37064.226649640197),
    1.0: (50545810.466605921, 26442756.078485544),
    10.0: (384201035.02357224, 360097980.63545187),
}


@pytest.mark.parametrize("temperature", sorted(FROZEN_RATES))
def test_calibrated_rates_frozen(qubit, temperature):
    pair = calibrated_rates(qubit.with_temperature(temperature))
    ge, ga = FROZEN_RATES[temperature]
    assert pair.gamma_e == pytest.approx(ge, rel=1e-12)
    assert pair.gamma_a == pytest.approx(ga, rel=1e-12)


def test_emission_time_at_operating_point(qubit):
    assert calibrated_rates(qubit).t_e == pytest.approx(41.5e-9, rel=0.002)


def test_rate_pair_times():
    assert RatePair(2.0, 0.0).t_a == math.inf
    assert RatePair(2.0, 0.5).t_e == 0.5


def test_ohmic_density_shape(qubit, wide_window):
    assert ohmic_density(0.0, qubit, wide_window) == 0.0
    w = 1e3 * wide_window.omega_b
    g = coupling_strength(qubit)
    assert ohmic_density(w, qubit, wide_window) == pytest.approx(g * wide_window.omega_b**2 / w, rel=1e-5)


def test_ohmic_density_peak_near_omega_b(qubit, wide_window):
    grid = np.geomspace(wide_window.omega_b / 100, wide_window.omega_c, 20001)
    peak = grid[np.argmax(ohmic_density(grid, qubit, wide_window))]
    assert peak == pytest.approx(wide_window.omega_b, rel=0.01)


def test_zero_temperature_rates(qubit, wide_window):
    cold = qubit.with_temperature(0.0)
    pair = emission_absorption(cold, wide_window)
    assert pair.gamma_a == 0.0
    assert pair.gamma_e == pytest.approx(TWO_PI * ohmic_density(cold.omega_j, cold, wide_window), rel=1e-15)


@settings(max_examples=60, deadline=None)
@given(log_t=st.floats(-2.5, 1.5), approximate=st.booleans())
def test_rate_identities(log_t, approximate):
    qubit, wide_window = QUBIT, WIDE
    p = qubit.with_temperature(10.0**log_t)
    pair = emission_absorption(p, wide_window, approximate)
    j = (
        coupling_strength(p) * wide_window.omega_b**2 / p.omega_j
        if approximate
        else float(ohmic_density(p.omega_j, p, wide_window))
    )
    assert pair.gamma_e - pair.gamma_a == pytest.approx(TWO_PI * j, rel=1e-9)
    assert pair.gamma_e > pair.gamma_a >= 0
    if p.thermal_ratio < 700:
        assert pair.gamma_e / pair.gamma_a == pytest.approx(math.exp(p.thermal_ratio), rel=1e-10)


@settings(max_examples=60, deadline=None)
@given(log_t=st.floats(-3, 1))
def test_calibrated_difference_is_two(log_t):
    qubit = QUBIT
    pair = calibrated_rates(qubit.with_temperature(10.0**log_t))
    scale = 8 * qubit.r * qubit.c_j
    assert pair.gamma_e * scale - pair.gamma_a * scale == pytest.approx(2.0, rel=1e-12)


def test_calibrated_equals_composed_path(qubit):
    for t in (0.0, 0.01, 0.3, 5.0):
        p = qubit.with_temperature(t)
        window = BathWindow(p.omega_j / 4, 1e3 * p.omega_j)
        a, b = calibrated_rates(p), emission_absorption(p, window, approximate=True)
        assert rel(a.gamma_e, b.gamma_e) <= 1e-12
        if b.gamma_a:
            assert rel(a.gamma_a, b.gamma_a) <= 1e-12


def test_absorption_monotone_in_temperature(qubit):
    temps = np.geomspace(0.05, 10, 200)
    ga = np.array([p.gamma_a for p in rates_vs_temperature(qubit, temps)])
    assert np.all(np.diff(ga) > 0)
    assert calibrated_rates(qubit.with_temperature(1e-3)).t_a > 1e200


def test_calibrate_cutoff(qubit):
    wb = calibrate_cutoff(qubit)
    assert wb == pytest.approx(TWO_PI * 3.375e9, rel=1e-12)
    assert calibration_residual(qubit, wb) <= 1e-10
    assert wb * qubit.l_j / qubit.r < 1e-3


@settings(max_examples=30, deadline=None)
@given(log_e=st.floats(-30, 0))
def test_calibration_independent_of_energy(log_e):
    qubit = QUBIT
    e0 = 10.0**log_e
    wb = calibrate_cutoff(qubit, e0)
    assert wb == pytest.approx(qubit.omega_j / 4, rel=1e-12)
    assert calibration_residual(qubit, wb, e0) <= 1e-10


def test_coherent_emission(qubit):
    window = BathWindow(qubit.omega_j / 4, 1e6 * qubit.omega_j)
    assert coherent_emission_rate(qubit, window, 0.0).exact == 0.0
    rate = coherent_emission_rate(qubit, window, 10.0)
    assert rate.approx == pytest.approx(-50.0 / (qubit.r * qubit.c_j), rel=1e-12)
    with pytest.raises(DomainError):
        coherent_emission_rate(qubit, window, -1.0)


def test_coherent_emission_paths_agree(qubit):
    window = BathWindow(qubit.omega_j / 1000, 1e4 * qubit.omega_j)
    rate = coherent_emission_rate(qubit, window, 3.0)
    assert rate.exact == pytest.approx(rate.approx, rel=0.01)


def test_ringdown_initial_and_lossless():
    p = CircuitParams(l_j=1.0, c_j=1.0, r=1e12)
    t = np.linspace(0.0, 20.0, 101)
    v, ring = classical_ringdown(p, 2.0, t)
    assert v[0] == 2.0
    np.testing.assert_allclose(v, 2.0 * np.cos(t), atol=1e-10)
    assert abs(ring.gamma_energy) < 1e-11
    assert ring.omega_jd == pytest.approx(p.omega_j * math.sqrt(1 - ring.mu**2), rel=1e-15)


def test_ringdown_overdamped_rejected():
    with pytest.raises(DomainError):
        classical_ringdown(CircuitParams(l_j=1.0, c_j=1.0, r=0.4), 1.0, 0.0)


def test_ringdown_matches_ode():
    p = CircuitParams(l_j=1.0, c_j=1.0, r=1.0 / 0.02)  # mu = 0.01
    t = np.linspace(0.0, 10 * TWO_PI, 301)
    closed, _ = classical_ringdown(p, 1.0, t)
    assert np.max(np.abs(ringdown_oracle(p, 1.0, t) - closed)) <= 1e-8


def test_ringdown_energy_rate_from_envelope():
    p = CircuitParams(l_j=1.0, c_j=1.0, r=50.0)
    v0 = 1.5
    _, ring = classical_ringdown(p, v0, 0.0)
    assert ring.gamma_energy == pytest.approx(-ring.e0 / (2 * p.r * p.c_j), rel=1e-15)
    # gamma_E = (C v0 / 2) times the initial slope of the envelope v0 exp(-mu w t)
    h = 1e-6
    envelope = v0 * np.exp(-ring.mu * p.omega_j * np.array([-h, h]))
    slope = (envelope[1] - envelope[0]) / (2 * h)
    assert 0.5 * p.c_j * v0 * slope == pytest.approx(ring.gamma_energy, rel=1e-8)
    # the exact electric energy is stationary at t = 0 since dv/dt(0) = 0
    v, _ = classical_ringdown(p, v0, np.array([0.0, h]))
    assert abs(0.5 * p.c_j * (v[1] ** 2 - v[0] ** 2) / h) < 1e-4 * abs(ring.gamma_energy)
