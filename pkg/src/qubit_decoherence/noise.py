"""Quantum thermal noise of the band-limited resistor.

Fourier convention, used throughout::

    S(w) = int C(t) exp(+i w t) dt,     C(t) = (1/2pi) int S(w) exp(-i w t) dw

``S_VV`` is two-sided (negative frequencies carry the emission side), so its
classical plateau is 2 k_B T R rather than the one-sided Johnson-Nyquist 4 k_B T R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR, K_B
from .errors import ConfigError, DomainError
from .impedance import band_limited_resistance


@dataclass(frozen=True)
class ThermalWeights:
    """``occupation`` is the Bose number n(|w|); ``weight`` is the signed-frequency weight N(w)."""

    occupation: np.ndarray | float
    weight: np.ndarray | float


@dataclass(frozen=True)
class SpectralSample:
    omega: np.ndarray | float
    s_vv: np.ndarray | float


def _beta_hbar(temperature: float) -> float:
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature!r}")
    return math.inf if temperature == 0 else HBAR / (K_B * temperature)


def bose_occupation(omega, temperature: float):
    """n(w) = 1 / (exp(hbar w / k_B T) - 1) for w > 0; zero at T = 0."""
    bh = _beta_hbar(temperature)
    omega = np.asarray(omega, dtype=float)
    if math.isinf(bh):
        return np.zeros_like(omega)[()]
    with np.errstate(over="ignore"):
        return (1.0 / np.expm1(bh * omega))[()]


def thermal_weights(omega, temperature: float) -> ThermalWeights:
    """Occupation and absorption/emission weight at signed frequency ``omega``.

    N(w) = n(w) + 1 for w > 0 (absorption by the bath) and N(w) = n(-w) for
    w < 0 (emission by the bath).

    Raises:
        DomainError: at ``omega == 0`` where n diverges.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise DomainError("thermal weights diverge at omega = 0")
    n = np.asarray(bose_occupation(np.abs(omega), temperature))
    weight = np.where(omega > 0, n + 1.0, n)
    return ThermalWeights(occupation=n[()], weight=weight[()])


def spectral_density(omega, params, window) -> SpectralSample:
    """Two-sided voltage noise S_VV(w) = 2 hbar w R_B(w) / (1 - exp(-hbar w / k_B T)).

    Finite at every ``omega``: the w -> 0 limit is 2 k_B T R_B(0) = 0 and T = 0
    gives 2 hbar w R_B(w) for w > 0 and 0 for w < 0.
    """
    omega = np.asarray(omega, dtype=float)
    r_b = band_limited_resistance(omega, window, params.r)
    bh = _beta_hbar(params.temperature)
    if math.isinf(bh):
        factor = np.where(omega > 0, 2.0 * HBAR * omega, 0.0)
    else:
        x = bh * omega
        safe = np.where(x == 0, 1.0, x)
        with np.errstate(over="ignore"):
            # 2 hbar w / (1 - e^-x) = 2 k_B T * x / (1 - e^-x)
            ratio = np.where(x == 0, 1.0, safe / -np.expm1(-safe))
        factor = 2.0 * K_B * params.temperature * ratio
    return SpectralSample(omega=omega[()], s_vv=(factor * r_b)[()])


def johnson_nyquist(temperature: float, r: float) -> tuple[float, float]:
    """Classical noise levels (two-sided 2 k_B T R, one-sided 4 k_B T R) in V^2 s."""
    return 2.0 * K_B * temperature * r, 4.0 * K_B * temperature * r


@dataclass(frozen=True)
class FFTConfig:
    """Band truncation for the correlation function.

    ``band_limit`` is the half-width (rad/s) of the symmetric band kept; it must
    fit inside the Nyquist band pi / dt of the time grid.
    """

    band_limit: float


@dataclass(frozen=True)
class Correlation:
    t: np.ndarray
    c_vv: np.ndarray
    omega: np.ndarray
    s_vv: np.ndarray


def _conjugate_grid(t_grid):
    t = np.asarray(t_grid, dtype=float)
    n = len(t)
    if n < 4:
        raise ConfigError("time grid needs at least 4 points")
    dt = (t[-1] - t[0]) / (n - 1)
    if not dt > 0 or not np.allclose(np.diff(t), dt, rtol=1e-9, atol=0):
        raise ConfigError("time grid must be uniform and increasing")
    d_omega = 2.0 * math.pi / (n * dt)
    omega = (np.arange(n) - n // 2) * d_omega
    return t, dt, d_omega, omega


def correlation_function(t_grid, params, window, cfg: FFTConfig) -> Correlation:
    """C_VV(t) on a uniform grid by discrete inverse transform of the band-truncated S_VV.

    The frequency grid is the DFT conjugate of ``t_grid``: spacing 2 pi / (n dt),
    centred on zero. ``spectrum_from_correlation`` is its exact inverse.

    Raises:
        ConfigError: if ``cfg.band_limit`` exceeds pi / dt.
    """
    t, dt, d_omega, omega = _conjugate_grid(t_grid)
    nyquist = math.pi / dt
    if cfg.band_limit > nyquist:
        raise ConfigError(
            f"band limit {cfg.band_limit:.4g} rad/s exceeds grid capacity pi/dt = {nyquist:.4g} rad/s"
        )
    s = np.asarray(spectral_density(omega, params, window).s_vv)
    s = np.where(np.abs(omega) <= cfg.band_limit, s, 0.0)
    c = _inverse(s, omega, t, d_omega)
    return Correlation(t=t, c_vv=c, omega=omega, s_vv=s)


def _inverse(s, omega, t, d_omega):
    # C(t_m) = (d_omega / 2pi) sum_j S_j exp(-i w_j t_m), w_j = (j - n/2) d_omega, t_m = t0 + m dt
    n = len(t)
    m = np.arange(n)
    phased = s * np.exp(-1j * omega * t[0])
    return d_omega / (2.0 * math.pi) * np.fft.fft(phased) * np.exp(2j * math.pi * (n // 2) * m / n)


def spectrum_from_correlation(t_grid, c_vv) -> tuple[np.ndarray, np.ndarray]:
    """Forward transform S(w_j) = sum_m C(t_m) exp(i w_j t_m) dt on the conjugate grid."""
    t, dt, d_omega, omega = _conjugate_grid(t_grid)
    n = len(t)
    m = np.arange(n)
    # exp(i w_j t_m) = exp(i w_j t0) exp(2 pi i (j - n/2) m / n)
    shifted = np.asarray(c_vv) * np.exp(-2j * math.pi * (n // 2) * m / n)
    s = dt * np.exp(1j * omega * t[0]) * n * np.fft.ifft(shifted)
    return omega, s
