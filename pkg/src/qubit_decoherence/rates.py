"""Spectral ohmic density, emission/absorption rates and the classical calibration of omega_b.

The rates use Bose occupations instead of coth directly, since
coth(x/2) + 1 = 2 (n + 1) and coth(x/2) - 1 = 2 n. This keeps the absorption
rate accurate when hbar w_J >> k_B T, where coth(x/2) - 1 underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .errors import DomainError
from .integrators import rk4_solve
from .noise import bose_occupation


@dataclass(frozen=True)
class RatePair:
    gamma_e: float
    gamma_a: float

    @property
    def t_e(self) -> float:
        return 1.0 / self.gamma_e

    @property
    def t_a(self) -> float:
        return math.inf if self.gamma_a == 0 else 1.0 / self.gamma_a


def coupling_strength(params) -> float:
    """gamma = (2 / pi) w_J L_J / R, dimensionless."""
    return 2.0 / math.pi * params.omega_j * params.l_j / params.r


def ohmic_density(omega, params, window):
    """J(w) = gamma w (wb^2 / (w^2 + wb^2)) (wc^2 / (w^2 + wc^2)), in rad/s."""
    omega = np.asarray(omega, dtype=float)
    w2 = omega * omega
    wb, wc = window.omega_b, window.omega_c
    j = coupling_strength(params) * omega * (wb * wb / (w2 + wb * wb)) * (wc * wc / (w2 + wc * wc))
    return j[()]


def ohmic_density_midband(params, omega_b: float) -> float:
    """J(w_J) ~ gamma wb^2 / w_J, for wb << w_J << wc."""
    return coupling_strength(params) * omega_b * omega_b / params.omega_j


def _rates_from_density(j_qubit, params) -> RatePair:
    n = float(bose_occupation(params.omega_j, params.temperature))
    return RatePair(gamma_e=2.0 * math.pi * j_qubit * (n + 1.0), gamma_a=2.0 * math.pi * j_qubit * n)


def emission_absorption(params, window, approximate: bool = False) -> RatePair:
    """Gamma_e,a = pi J(w_J) (coth(hbar w_J / 2 k_B T) +- 1).

    ``approximate`` selects the mid-band J(w_J) ~ gamma wb^2 / w_J instead of
    the full band-limited density.
    """
    if approximate:
        j_qubit = ohmic_density_midband(params, window.omega_b)
    else:
        j_qubit = float(ohmic_density(params.omega_j, params, window))
    return _rates_from_density(j_qubit, params)


def calibrated_rates(params) -> RatePair:
    """Rates with omega_b = w_J / 4: Gamma_e,a = (coth +- 1) / (8 R C_J)."""
    n = float(bose_occupation(params.omega_j, params.temperature))
    scale = 1.0 / (8.0 * params.r * params.c_j)
    return RatePair(gamma_e=scale * 2.0 * (n + 1.0), gamma_a=scale * 2.0 * n)


def rates_vs_temperature(params, temperatures) -> list[RatePair]:
    return [calibrated_rates(params.with_temperature(float(t))) for t in temperatures]


@dataclass(frozen=True)
class RingdownParams:
    mu: float
    omega_jd: float
    gamma_energy: float  # W, negative for decay
    v0: float
    e0: float


def damping_ratio(params) -> float:
    """mu = sqrt(L_J / C_J) / (2 R) of the parallel RLC."""
    return math.sqrt(params.l_j / params.c_j) / (2.0 * params.r)


def ringdown_params(params, v0: float) -> RingdownParams:
    mu = damping_ratio(params)
    if mu >= 1.0:
        raise DomainError(f"overdamped circuit (mu = {mu:.4g} >= 1) is outside the ring-down model")
    e0 = 0.5 * params.c_j * v0 * v0
    return RingdownParams(
        mu=mu,
        omega_jd=params.omega_j * math.sqrt(1.0 - mu * mu),
        gamma_energy=-e0 / (2.0 * params.r * params.c_j),
        v0=v0,
        e0=e0,
    )


def classical_ringdown(params, v0: float, t):
    """Free decay of the junction voltage from v(0) = v0, dv/dt(0) = 0.

    Returns ``(v(t), RingdownParams)``. The initial energy decay rate reported
    is the envelope estimate -E_0 / (2 R C_J) with E_0 = C_J v0^2 / 2; the exact
    derivative of C_J v^2 / 2 vanishes at t = 0 because dv/dt(0) = 0.

    Raises:
        DomainError: if mu >= 1.
    """
    ring = ringdown_params(params, v0)
    t = np.asarray(t, dtype=float)
    w = params.omega_j
    mu = ring.mu
    v = v0 * np.exp(-mu * w * t) * (
        np.cos(ring.omega_jd * t) + mu / math.sqrt(1.0 - mu * mu) * np.sin(ring.omega_jd * t)
    )
    return v[()], ring


def ringdown_oracle(params, v0: float, t_grid, steps_per_period: int = 2000):
    """RK4 integration of C v'' + v' / R + v / L = 0 from v(0) = v0, v'(0) = 0."""
    w = params.omega_j
    two_mu_w = 2.0 * damping_ratio(params) * w

    # state (v, v' / w) keeps both components on the same scale
    def rhs(_t, y):
        return np.array([w * y[1], -w * y[0] - two_mu_w * y[1]])

    max_step = 2.0 * math.pi / w / steps_per_period
    sol = rk4_solve(rhs, np.array([v0, 0.0]), t_grid, max_step)
    return sol[:, 0]


@dataclass(frozen=True)
class CoherentEmission:
    exact: float  # -4 pi alpha^2 J(w_J), 1/s
    approx: float  # -8 alpha^2 wb^2 L_J / R, 1/s
    e0: float  # hbar w_J alpha^2, J


def coherent_emission_rate(params, window, alpha_n: float) -> CoherentEmission:
    """Initial population loss rate of a coherent state of real amplitude ``alpha_n``."""
    if alpha_n < 0:
        raise DomainError(f"alpha_n must be >= 0, got {alpha_n!r}")
    a2 = alpha_n * alpha_n
    wb = window.omega_b
    return CoherentEmission(
        exact=-4.0 * math.pi * a2 * float(ohmic_density(params.omega_j, params, window)),
        approx=-8.0 * a2 * wb * wb * params.l_j / params.r,
        e0=HBAR * params.omega_j * a2,
    )


def _energy_balance(params, omega_b: float, e0: float) -> tuple[float, float]:
    # (quantum energy loss rate hbar w_J Gamma_ae, classical gamma_E) for a coherent
    # state carrying the same initial energy e0
    a2 = e0 / (HBAR * params.omega_j)
    quantum = HBAR * params.omega_j * (-8.0 * a2 * omega_b * omega_b * params.l_j / params.r)
    classical = -e0 / (2.0 * params.r * params.c_j)
    return quantum, classical


def calibrate_cutoff(params, e0: float = 1.0) -> float:
    """omega_b for which the coherent-state emission matches the classical RLC energy decay.

    Solves hbar w_J Gamma_ae = gamma_E for omega_b (mid-band J); the solution is
    w_J / 4 independent of the energy ``e0``.
    """
    _, classical = _energy_balance(params, 0.0, e0)
    return math.sqrt(classical * params.r / (-8.0 * e0 * params.l_j))


def calibration_residual(params, omega_b: float, e0: float = 1.0) -> float:
    """|hbar w_J Gamma_ae - gamma_E| / |gamma_E| at the given omega_b."""
    quantum, classical = _energy_balance(params, omega_b, e0)
    return abs(quantum - classical) / abs(classical)
