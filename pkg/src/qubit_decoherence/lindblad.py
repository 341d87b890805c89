"""Qubit decoherence dynamics.

Density matrices use the basis ordering (|1>, |0>): ``rho[0, 0]`` is the
excited population p1, ``rho[1, 1]`` the ground population p0 and
``rho[0, 1]`` the coherence. The master equation is

    d rho/dt = -i [(w_J/2) sz, rho] + Ge D[s-] rho + Ga D[s+] rho

with D[L] rho = L rho L^+ - {L^+ L, rho} / 2 and s- = |0><1| (unit norm).

Three routes are provided: the closed-form parametric solution in (a, delta),
a fixed-step RK4 integration of the full equation, and the exact solution of
the Ga = 0 equation used to validate the integrator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, UnsupportedRegimeError
from .integrators import rk4_step

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |1> -> |0>
SIGMA_PLUS = SIGMA_MINUS.conj().T


@dataclass(frozen=True)
class ParametricState:
    """Pure state a0|1> + sqrt(1 - a0^2) e^{i delta0}|0>."""

    a0: float
    delta0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.a0 <= 1.0:
            raise DomainError(f"a0 must lie in [0, 1], got {self.a0!r}")

    def rho(self) -> np.ndarray:
        a, b = self.a0, math.sqrt(1.0 - self.a0 * self.a0)
        coh = a * b * np.exp(-1j * self.delta0)
        return np.array([[a * a, coh], [np.conj(coh), b * b]], dtype=complex)


@dataclass(frozen=True)
class ParametricSolution:
    t: np.ndarray
    a: np.ndarray
    delta: np.ndarray  # complex phase
    rho: np.ndarray  # (n, 2, 2)
    envelope: np.ndarray  # |e^{i delta}|
    envelope_long_time: np.ndarray  # exp(-gamma sqrt(t) / (2 sqrt(2 w_J)))


def parametric_solution(init: ParametricState, gamma: float, omega_j: float, t) -> ParametricSolution:
    """Closed-form (a, delta) solution of the decay equations for constant gamma.

    a = a0 exp(-gamma t / 2), b = sqrt(1 - a0^2) e^{i delta} and

        delta = -sqrt(delta0^2 + 2i (a0 sqrt(1-a0^2) - a sqrt(1-a^2)) - i (gamma + 2i w_J) t)

    with the principal square root. This parametrisation is not trace
    preserving: p0 = (1 - a0^2) |e^{i delta}|^2 decays as well.
    """
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma!r}")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise DomainError("t must be >= 0")
    a0 = init.a0
    b0 = math.sqrt(1.0 - a0 * a0)
    a = a0 * np.exp(-0.5 * gamma * t)
    arg = (
        init.delta0**2
        + 2j * (a0 * b0 - a * np.sqrt(1.0 - a * a))
        - 1j * (gamma + 2j * omega_j) * t
    )
    delta = -np.sqrt(arg.astype(complex))
    phase = np.exp(1j * delta)
    envelope = np.abs(phase)
    if np.any(envelope > 1.0 + 1e-9):
        warnings.warn("phase envelope grows; square-root branch is unphysical here", RuntimeWarning, stacklevel=2)
    b = b0 * phase
    rho = np.empty((len(t), 2, 2), dtype=complex)
    rho[:, 0, 0] = a * a
    rho[:, 0, 1] = a * np.conj(b)
    rho[:, 1, 0] = a * b
    rho[:, 1, 1] = np.abs(b) ** 2
    long_time = np.exp(-gamma * np.sqrt(t) / (2.0 * math.sqrt(2.0 * omega_j)))
    return ParametricSolution(t=t, a=a, delta=delta, rho=rho, envelope=envelope, envelope_long_time=long_time)


def lindbladian(rates, omega_j: float) -> np.ndarray:
    """4x4 generator acting on row-major vec(rho)."""
    eye = np.eye(2, dtype=complex)
    h = 0.5 * omega_j * SIGMA_Z
    gen = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for rate, op in ((rates.gamma_e, SIGMA_MINUS), (rates.gamma_a, SIGMA_PLUS)):
        if rate == 0:
            continue
        ldl = op.conj().T @ op
        gen += rate * (np.kron(op, op.conj()) - 0.5 * np.kron(ldl, eye) - 0.5 * np.kron(eye, ldl.T))
    return gen


def lindblad_rhs(rho, rates, omega_j: float) -> np.ndarray:
    """Right-hand side in matrix form; agrees with ``lindbladian`` on vec(rho)."""
    h = 0.5 * omega_j * SIGMA_Z
    out = -1j * (h @ rho - rho @ h)
    for rate, op in ((rates.gamma_e, SIGMA_MINUS), (rates.gamma_a, SIGMA_PLUS)):
        ldl = op.conj().T @ op
        out = out + rate * (op @ rho @ op.conj().T - 0.5 * (ldl @ rho + rho @ ldl))
    return out


@dataclass(frozen=True)
class StepConfig:
    """Fixed RK4 step; ``None`` picks half the stability bound."""

    max_step: float | None = None


def step_bound(rates, omega_j: float) -> float:
    """Largest allowed step, min(1 / (50 w_J), 1 / (50 Ge))."""
    fastest = max(omega_j, rates.gamma_e, rates.gamma_a)
    return 1.0 / (50.0 * fastest)


def validate_state(rho, tol: float = 1e-10) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise DomainError(f"expected a 2x2 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
        raise DomainError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > 1e-9:
        raise DomainError(f"density matrix trace {np.trace(rho).real!r} != 1")
    lam = np.linalg.eigvalsh(rho)
    if lam[0] < -tol:
        raise DomainError(f"density matrix has negative eigenvalue {lam[0]:.3e}")
    return rho


def oracle_evolve(rho0, rates, omega_j: float, t_grid, step: StepConfig | None = None) -> np.ndarray:
    """Fixed-step RK4 integration of the master equation; returns rho at each grid time.

    Because the generator is constant, one RK4 step is a fixed linear map; it
    is built once per distinct substep length by pushing the identity through
    ``rk4_step`` and then applied repeatedly. The state is re-Hermitised after
    every substep.

    Raises:
        ConfigError: if the step exceeds ``step_bound`` or the grid is not increasing.
        DomainError: if ``rho0`` is not a valid density matrix.
    """
    rho0 = validate_state(rho0)
    t_grid = np.asarray(t_grid, dtype=float)
    if len(t_grid) < 1 or np.any(np.diff(t_grid) <= 0):
        raise ConfigError("t_grid must be strictly increasing")
    bound = step_bound(rates, omega_j)
    h_max = (step or StepConfig()).max_step
    if h_max is None:
        h_max = 0.5 * bound
    if not 0 < h_max <= bound * (1 + 1e-12):
        raise ConfigError(f"step {h_max!r} violates bound {bound!r} = min(1/(50 w_J), 1/(50 Gamma))")

    gen = lindbladian(rates, omega_j)

    def f(_t, y):
        return gen @ y

    cache: dict[float, np.ndarray] = {}
    y = rho0.reshape(4).copy()
    out = np.empty((len(t_grid), 2, 2), dtype=complex)
    out[0] = rho0
    for i in range(1, len(t_grid)):
        span = t_grid[i] - t_grid[i - 1]
        n = max(1, int(math.ceil(span / h_max * (1 - 1e-12))))
        h = span / n
        prop = cache.get(h)
        if prop is None:
            prop = cache[h] = rk4_step(f, 0.0, np.eye(4, dtype=complex), h)
        for _ in range(n):
            y = prop @ y
            # re-Hermitise: indices 1, 2 hold rho01, rho10
            y[0] = y[0].real
            y[3] = y[3].real
            off = 0.5 * (y[1] + np.conj(y[2]))
            y[1], y[2] = off, np.conj(off)
        out[i] = y.reshape(2, 2)
    return out


def reference_closed_form(rho0, rates, omega_j: float, t) -> np.ndarray:
    """Exact solution for Ga = 0: p1 e^{-Ge t}, coherence e^{-(Ge/2 + i w_J) t}.

    Raises:
        UnsupportedRegimeError: if ``rates.gamma_a != 0``.
    """
    if rates.gamma_a != 0:
        raise UnsupportedRegimeError("closed form only covers the zero-absorption equation")
    rho0 = np.asarray(rho0, dtype=complex)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    g = rates.gamma_e
    p1 = rho0[0, 0].real * np.exp(-g * t)
    coh = rho0[0, 1] * np.exp(-(0.5 * g + 1j * omega_j) * t)
    out = np.empty((len(t), 2, 2), dtype=complex)
    out[:, 0, 0] = p1
    out[:, 1, 1] = 1.0 - p1
    out[:, 0, 1] = coh
    out[:, 1, 0] = np.conj(coh)
    return out


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    p1: np.ndarray
    p0: np.ndarray
    coherence_mag: np.ndarray


def trajectory(t, rho) -> Trajectory:
    rho = np.asarray(rho)
    return Trajectory(
        t=np.asarray(t, dtype=float),
        p1=rho[:, 0, 0].real.copy(),
        p0=rho[:, 1, 1].real.copy(),
        coherence_mag=np.abs(rho[:, 0, 1]),
    )


@dataclass(frozen=True)
class DeviationReport:
    t: np.ndarray
    p1: np.ndarray
    p0: np.ndarray
    coherence_mag: np.ndarray
    parametric: Trajectory
    oracle: Trajectory

    @property
    def max_p1(self) -> float:
        return float(np.max(self.p1))


def compare_solutions(init: ParametricState, rates, omega_j: float, t_grid, step: StepConfig | None = None) -> DeviationReport:
    """Per-time |parametric - oracle| for p1, p0 and |coherence|, both started from ``init``.

    Only the p1 channel is expected to agree (both give a0^2 e^{-Ge t} when Ga = 0).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    parametric = trajectory(t_grid, parametric_solution(init, rates.gamma_e, omega_j, t_grid).rho)
    oracle = trajectory(t_grid, oracle_evolve(init.rho(), rates, omega_j, t_grid, step))
    return DeviationReport(
        t=t_grid,
        p1=np.abs(parametric.p1 - oracle.p1),
        p0=np.abs(parametric.p0 - oracle.p0),
        coherence_mag=np.abs(parametric.coherence_mag - oracle.coherence_mag),
        parametric=parametric,
        oracle=oracle,
    )
