"""Qubit circuit parameters and the Foster (parallel-LC chain) model of its resistance.

The parasitic resistance is replaced by resonators k = 1..N at w_k = k dw, each
sized so that its quality factor against R_B(w_k) is pi k / 2. All angular
frequencies are in rad/s.
"""

from __future__ import annotations

import math
import numbers
import warnings
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .constants import HBAR, K_B
from .errors import DomainError
from .impedance import band_limited_resistance


def _require_positive(**fields):
    for name, value in fields.items():
        if not (isinstance(value, numbers.Real) and math.isfinite(value) and value > 0):
            raise DomainError(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class CircuitParams:
    """Josephson inductance (H), junction capacitance (F), parasitic resistance (ohm), temperature (K)."""

    l_j: float
    c_j: float
    r: float
    temperature: float = 0.0

    def __post_init__(self):
        _require_positive(l_j=self.l_j, c_j=self.c_j, r=self.r)
        t = self.temperature
        if not (isinstance(t, numbers.Real) and math.isfinite(t) and t >= 0):
            raise DomainError(f"temperature must be >= 0, got {t!r}")

    @property
    def omega_j(self) -> float:
        return 1.0 / math.sqrt(self.l_j * self.c_j)

    @property
    def beta(self) -> float:
        """1 / (k_B T); infinite at T = 0."""
        return math.inf if self.temperature == 0 else 1.0 / (K_B * self.temperature)

    @property
    def thermal_ratio(self) -> float:
        """hbar w_J / (k_B T)."""
        return math.inf if self.temperature == 0 else HBAR * self.omega_j / (K_B * self.temperature)

    def with_temperature(self, temperature: float) -> "CircuitParams":
        return CircuitParams(self.l_j, self.c_j, self.r, temperature)


def complete_circuit(l_j: float, r: float, f_j: float, temperature: float = 0.0) -> CircuitParams:
    """Build ``CircuitParams`` from the qubit frequency f_j (Hz), solving for C_J."""
    _require_positive(l_j=l_j, r=r, f_j=f_j)
    omega_j = 2.0 * math.pi * f_j
    return CircuitParams(l_j=l_j, c_j=1.0 / (omega_j * omega_j * l_j), r=r, temperature=temperature)


@dataclass(frozen=True)
class BathWindow:
    """High-pass knee ``omega_b`` and low-pass knee ``omega_c`` of R_B, rad/s."""

    omega_b: float
    omega_c: float

    def __post_init__(self):
        _require_positive(omega_b=self.omega_b, omega_c=self.omega_c)
        if not self.omega_b < self.omega_c:
            raise DomainError(
                f"need omega_b < omega_c, got omega_b={self.omega_b!r}, omega_c={self.omega_c!r}"
            )

    @classmethod
    def from_hz(cls, f_b: float, f_c: float) -> "BathWindow":
        return cls(2.0 * math.pi * f_b, 2.0 * math.pi * f_c)


@dataclass(frozen=True)
class BathDiscretization:
    delta_omega: float
    n_resonators: int

    def __post_init__(self):
        _require_positive(delta_omega=self.delta_omega)
        if int(self.n_resonators) != self.n_resonators or self.n_resonators < 1:
            raise DomainError(f"n_resonators must be a positive integer, got {self.n_resonators!r}")

    @property
    def top(self) -> float:
        return self.n_resonators * self.delta_omega


def default_discretization(
    window: BathWindow,
    spacing: float = 0.1,
    span: float = 100.0,
    max_resonators: int = 100_000,
) -> BathDiscretization:
    """dw = spacing * omega_b and N with N dw >= span * omega_c, capped at ``max_resonators``.

    A ``RuntimeWarning`` is emitted when the cap truncates the band.
    """
    dw = spacing * window.omega_b
    n = int(math.ceil(span * window.omega_c / dw))
    if n > max_resonators:
        warnings.warn(
            f"bath truncated: {n} resonators needed to reach {span:g} omega_c, "
            f"capped at {max_resonators} (top frequency {max_resonators * dw:.4g} rad/s)",
            RuntimeWarning,
            stacklevel=2,
        )
        n = max_resonators
    return BathDiscretization(dw, n)


@dataclass(frozen=True)
class Resonator:
    k: int
    omega_k: float
    l_k: float
    c_k: float
    q_k: float


@dataclass(frozen=True)
class FosterBath:
    """Synthesised resonator chain, stored column-wise.

    Behaves as a sequence of ``Resonator``.
    """

    delta_omega: float
    k: np.ndarray
    omega: np.ndarray
    l: np.ndarray  # noqa: E741
    c: np.ndarray
    q: np.ndarray

    def __len__(self) -> int:
        return len(self.k)

    def __getitem__(self, i) -> Resonator:
        return Resonator(int(self.k[i]), float(self.omega[i]), float(self.l[i]), float(self.c[i]), float(self.q[i]))

    def __iter__(self) -> Iterator[Resonator]:
        return (self[i] for i in range(len(self)))

    def first(self, n: int) -> "FosterBath":
        return FosterBath(self.delta_omega, self.k[:n], self.omega[:n], self.l[:n], self.c[:n], self.q[:n])


def section_elements(omega_k, r_b, delta_omega):
    """(C_k, L_k) for sections at ``omega_k`` with target resistance ``r_b``."""
    c = math.pi / (2.0 * delta_omega * r_b)
    l = 2.0 * r_b * delta_omega / (math.pi * omega_k * omega_k)  # noqa: E741
    return c, l


def synthesize_bath(
    window: BathWindow,
    r: float,
    disc: BathDiscretization,
    resistance: Callable | None = None,
) -> FosterBath:
    """Size N parallel-LC sections so that w_k = k dw and Q_k = pi k / 2.

    ``resistance`` overrides R_B(w) (defaults to the band-limited form); a
    constant function gives the flat-resistor chain.
    """
    dw = disc.delta_omega
    k = np.arange(1, disc.n_resonators + 1, dtype=np.int64)
    omega = k * dw
    r_b = _resistance_at(omega, window, r, resistance)
    if np.any(~(r_b > 0)):
        raise DomainError("R_B(omega_k) must be positive for every section")
    c, l = section_elements(omega, r_b, dw)  # noqa: E741
    q = r_b * np.sqrt(c / l)
    return FosterBath(dw, k, omega, l, c, q)


def _resistance_at(omega, window, r, resistance):
    if resistance is None:
        return band_limited_resistance(omega, window, r)
    return np.broadcast_to(np.asarray(resistance(omega), dtype=float), np.shape(omega)).copy()


def bath_inductance_sum(window: BathWindow, r: float, disc: BathDiscretization, chunk: int = 1 << 20) -> float:
    """Sum of L_k over a bath too large to hold in memory; same sizing as ``synthesize_bath``."""
    dw = disc.delta_omega
    partial = []
    for start in range(1, disc.n_resonators + 1, chunk):
        stop = min(start + chunk, disc.n_resonators + 1)
        omega = np.arange(start, stop, dtype=float) * dw
        _, l = section_elements(omega, band_limited_resistance(omega, window, r), dw)  # noqa: E741
        partial.append(float(np.sum(l)))
    return math.fsum(partial)


class LoopInductance(NamedTuple):
    l_l_sum: float
    l_l_closed: float
    l_l_approx: float


def closed_form_loop_inductance(params: CircuitParams, window: BathWindow) -> float:
    wb, wc = window.omega_b, window.omega_c
    return params.l_j + params.r * wc / (wb * (wb + wc))


def loop_inductance(params: CircuitParams, window: BathWindow, resonators) -> LoopInductance:
    """Interaction-loop inductance L_L = L_J + sum L_k, with its continuum and R / omega_b forms."""
    if isinstance(resonators, FosterBath):
        total = float(np.sum(resonators.l))
    else:
        total = math.fsum(res.l_k for res in resonators)
    return LoopInductance(
        l_l_sum=params.l_j + total,
        l_l_closed=closed_form_loop_inductance(params, window),
        l_l_approx=params.r / window.omega_b,
    )


@dataclass(frozen=True)
class DerivedInductances:
    l_l: float
    l_aj: float
    l_ak: np.ndarray
    omega_aj: float
    omega_ak: np.ndarray
    omega_rk: np.ndarray
    omega_rk_approx: np.ndarray
    omega_k: np.ndarray


def mode_and_coupling_frequencies(
    params: CircuitParams, window: BathWindow, resonators: FosterBath, l_l: float
) -> DerivedInductances:
    """Loop-renormalised inductances, mode frequencies and qubit-mode coupling frequencies.

    ``omega_rk_approx`` is sqrt(J(w_k) dw), valid when omega_b L_J / R << 1.
    ``l_l = inf`` decouples the qubit from the bath.
    """
    from .rates import ohmic_density

    if not l_l > 0:
        raise DomainError(f"l_l must be > 0, got {l_l!r}")
    inv_ll = 1.0 / l_l
    l_aj = 1.0 / (1.0 / params.l_j + inv_ll)
    l_ak = 1.0 / (1.0 / resonators.l + inv_ll)
    omega_aj = 1.0 / math.sqrt(l_aj * params.c_j)
    omega_ak = 1.0 / np.sqrt(l_ak * resonators.c)
    omega_rk = np.sqrt(l_aj * l_ak) * inv_ll * np.sqrt(omega_aj * omega_ak)
    approx = np.sqrt(ohmic_density(resonators.omega, params, window) * resonators.delta_omega)
    return DerivedInductances(
        l_l=l_l,
        l_aj=l_aj,
        l_ak=l_ak,
        omega_aj=omega_aj,
        omega_ak=omega_ak,
        omega_rk=omega_rk,
        omega_rk_approx=approx,
        omega_k=np.array(resonators.omega, dtype=float),
    )
