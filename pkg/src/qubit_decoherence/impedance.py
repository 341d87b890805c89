"""Bath impedance: band-limited target, finite Foster reactance, Kramers-Kronig check and S21.

Sign convention
---------------
``target_impedance`` and ``kk_reactance`` share one convention, in which

    X_B(w) = -(1/pi) P int R_B(w') / (w' - w) dw'.

``finite_bath_reactance`` evaluates the resonator chain impedance
``sum_k (1/C_k) s / (s^2 + w_k^2)`` at ``s = j w``. Both are what the model
prescribes, but they are opposite-sign conventions: as the discretisation is
refined the finite reactance converges to ``-X_B``. Compare accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .errors import NumericError, PoleError


@dataclass(frozen=True)
class ImpedanceSample:
    omega: np.ndarray | float
    resistive: np.ndarray | float
    reactive: np.ndarray | float


def band_limited_resistance(omega, window, r):
    """Resistive part R_B(w): R with a high-pass knee at omega_b and low-pass knee at omega_c."""
    w2 = np.square(omega)
    wb, wc = window.omega_b, window.omega_c
    return r * (w2 / (w2 + wb * wb)) * (wc * wc / (w2 + wc * wc))


def band_limited_reactance(omega, window, r):
    omega = np.asarray(omega, dtype=float)
    w2 = omega * omega
    wb, wc = window.omega_b, window.omega_c
    return (
        r
        * (wc / (wb + wc))
        * (wc * omega / (w2 + wb * wb))
        * ((w2 - wb * wc) / (w2 + wc * wc))
    )


def target_impedance(omega, window, r) -> ImpedanceSample:
    """Closed-form target impedance Z_B = R_B + j X_B; vectorised over ``omega``."""
    return ImpedanceSample(
        omega=omega,
        resistive=band_limited_resistance(omega, window, r),
        reactive=band_limited_reactance(omega, window, r),
    )


def finite_bath_reactance(omega, resonators, pole_guard: float = 1e-9) -> ImpedanceSample:
    """Reactance of a finite chain of parallel LC sections at ``s = j omega``.

    Raises:
        PoleError: if ``|omega - omega_k| <= pole_guard * omega_k`` for some section.
    """
    omega = float(omega)
    wk = np.asarray(resonators.omega, dtype=float)
    ck = np.asarray(resonators.c, dtype=float)
    if len(wk):
        gap = np.abs(np.abs(omega) - wk)
        i = int(np.argmin(gap / wk))
        if gap[i] <= pole_guard * wk[i]:
            raise PoleError(int(resonators.k[i]), omega, float(wk[i]))
    reactive = float(np.sum(omega / (ck * (wk * wk - omega * omega))))
    return ImpedanceSample(omega=omega, resistive=0.0, reactive=reactive)


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the principal-value Kramers-Kronig integral.

    ``excision`` is the half-width of the removed window around the pole,
    relative to omega; it is then halved ``levels - 1`` times and
    Richardson-extrapolated to zero.
    """

    excision: float = 1e-2
    levels: int = 3
    span_low: float = 1e-3  # grid starts at span_low * omega_b
    span_high: float = 1e3  # last finite breakpoint at span_high * omega_c
    segments_per_decade: float = 1.0
    rtol: float = 1e-10
    tolerance: float = 1e-6  # absolute, in units of the resistance scale


def _breakpoints(omega, window, cfg):
    lo = cfg.span_low * window.omega_b
    hi = cfg.span_high * window.omega_c
    n = max(2, int(math.ceil(math.log10(hi / lo) * cfg.segments_per_decade)) + 1)
    pts = np.geomspace(lo, hi, n)
    return np.concatenate(([0.0], pts))


def _excised_integral(omega, eps, resistance, breaks, rtol):
    """Folded integral of 2 w R_B(w') / (w'^2 - w^2) over [0, inf) minus (w - eps, w + eps)."""

    def g(x):
        return resistance(x) * 2.0 * omega / (x * x - omega * omega)

    lo, hi = omega - eps, omega + eps
    edges = np.unique(np.concatenate((breaks, [lo, hi])))
    total = 0.0
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if a >= lo and b <= hi:
            continue
        val, e = integrate.quad(g, a, b, limit=200, epsabs=0.0, epsrel=rtol)
        total += val
        err += e
    val, e = integrate.quad(g, edges[-1], np.inf, limit=200)
    return total + val, err + e


def _richardson(values, h_ratio=2.0, powers=(1, 3, 5, 7)):
    """Extrapolate I(eps) sampled at eps, eps/2, ... to eps -> 0 given the odd error series."""
    table = [list(values)]
    for p in powers[: len(values) - 1]:
        f = h_ratio**p
        prev = table[-1]
        table.append([(f * prev[i + 1] - prev[i]) / (f - 1.0) for i in range(len(prev) - 1)])
    best = table[-1][0]
    correction = abs(table[-1][0] - table[-2][-1]) if len(table) > 1 else float("inf")
    return best, correction


def _check_tail_decay(resistance, breaks, scale):
    # The Hilbert transform needs R_B(w') -> 0; a log-divergent tail shows up as
    # equal contributions from successive octaves.
    top = breaks[-1]
    octaves = []
    for j in range(3):
        a, b = top * 2.0**j, top * 2.0 ** (j + 1)
        val, _ = integrate.quad(lambda x: abs(resistance(x)) / x, a, b)
        octaves.append(val)
    if octaves[0] > 1e-12 * scale and octaves[2] > 0.5 * octaves[0]:
        raise NumericError(
            "principal value diverges: resistance does not decay at high frequency",
            estimate=float(octaves[2]),
        )


def kk_reactance(
    omega: float,
    window,
    r: float,
    cfg: QuadratureConfig | None = None,
    resistance: Callable | None = None,
) -> float:
    """Reactance obtained numerically from the resistive part by Kramers-Kronig.

    The integral over the whole real axis is folded onto [0, inf) using the
    evenness of R_B, a symmetric window around the pole is excised and the
    result is extrapolated to zero excision width.

    Args:
        omega: angular frequency, > 0.
        window: bath window (``omega_b``, ``omega_c``), also used to place breakpoints.
        r: resistance scale; tolerances are relative to it.
        cfg: quadrature settings.
        resistance: override for R_B(w); defaults to the band-limited form.

    Raises:
        NumericError: if the tail does not decay or the extrapolation error
            exceeds ``cfg.tolerance * r``.
    """
    cfg = cfg or QuadratureConfig()
    if not omega > 0:
        raise ValueError(f"omega must be > 0, got {omega!r}")
    if resistance is None:
        def resistance(x):
            return band_limited_resistance(x, window, r)
    breaks = _breakpoints(omega, window, cfg)
    _check_tail_decay(resistance, breaks, r)

    eps0 = cfg.excision * omega
    samples = []
    quad_err = 0.0
    for j in range(cfg.levels):
        val, e = _excised_integral(omega, eps0 / 2.0**j, resistance, breaks, cfg.rtol)
        samples.append(val)
        quad_err = max(quad_err, e)
    best, corr = _richardson(samples)
    estimate = (corr + quad_err) / math.pi
    if not np.isfinite(best) or estimate > cfg.tolerance * r:
        raise NumericError("Kramers-Kronig quadrature did not converge", estimate=estimate)
    return -best / math.pi


def section_s21(res, r_ref: float, omega):
    """Transmission of one parallel-LC section shunting a line of impedance ``r_ref``.

    ``S21 = 2 / (2 + r_ref * Y)`` with ``Y = j w C_k + 1 / (j w L_k)``; it equals
    1 at the section resonance and falls to 0 at DC and at high frequency.
    """
    omega = np.asarray(omega, dtype=float)
    y = 1j * (omega * res.c_k - 1.0 / (omega * res.l_k))
    return 2.0 / (2.0 + r_ref * y)


def s21_bandwidth(res, r_ref: float) -> float:
    """Measured -3 dB (|S21|^2 = 1/2) bandwidth of ``section_s21`` in rad/s."""
    wk = res.omega_k

    def f(w):
        return abs(section_s21(res, r_ref, w)) ** 2 - 0.5

    lo = optimize.brentq(f, wk * 1e-6, wk)
    hi_edge = wk * 2.0
    while f(hi_edge) > 0:
        hi_edge *= 2.0
    hi = optimize.brentq(f, wk, hi_edge)
    return hi - lo
