"""Property battery behind ``verify`` and ``hamiltonian-check``.

Every check compares an analytic shortcut with an independent numerical route
and reports the measured deviation next to its limit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import circuit, hamiltonian, impedance, lindblad, noise, rates
from .constants import HBAR, K_B
from .errors import NumericError


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    limit: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name:<28s} measured={self.measured:.6e}  limit={self.limit:.6e}"
        return f"{text}  # {self.note}" if self.note else text


def at_most(name, measured, limit, note="") -> Check:
    measured = float(measured)
    return Check(name, measured, float(limit), bool(measured <= limit), note)


def at_least(name, measured, limit, note="") -> Check:
    measured = float(measured)
    return Check(name, measured, float(limit), bool(measured >= limit), note)


def _pmap(fn, items, threads):
    if threads == 1:
        return list(map(fn, items))
    with ThreadPoolExecutor(max_workers=threads or None) as pool:
        return list(pool.map(fn, items))


def check_kk(cfg, n_points: int = 50) -> list[Check]:
    window = circuit.BathWindow.from_hz(1e6, 1e12)
    r = cfg.r
    omegas = np.geomspace(window.omega_b, 10 * window.omega_c, n_points)

    def one(w):
        try:
            return impedance.kk_reactance(w, window, r)
        except NumericError:
            return math.nan

    numeric = np.array(_pmap(one, omegas, cfg.threads))
    closed = impedance.band_limited_reactance(omegas, window, r)
    allowed = np.maximum(cfg.kk_rtol * np.abs(closed), cfg.kk_atol * r)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.abs(numeric - closed) / allowed
    worst = float(np.nanmax(np.where(np.isnan(ratio), np.inf, ratio)))
    return [at_most("kk_consistency", worst, 1.0, "max |X_kk - X_B| / max(rtol |X_B|, atol R)")]


def check_resonators(cfg) -> list[Check]:
    window = cfg.window()
    disc = circuit.BathDiscretization(0.1 * window.omega_b, 2000)
    bath = circuit.synthesize_bath(window, cfg.r, disc)
    res_err = np.max(np.abs(1.0 / np.sqrt(bath.l * bath.c) - bath.omega) / bath.omega)
    q_err = np.max(np.abs(bath.q / bath.k - math.pi / 2) / (math.pi / 2))
    return [
        at_most("resonance_identity", res_err, cfg.identity_tol),
        at_most("quality_factor_law", q_err, cfg.identity_tol),
    ]


def check_johnson_nyquist(cfg) -> list[Check]:
    params = circuit.complete_circuit(cfg.l_j, cfg.r, cfg.f_j, 1.0)
    window = circuit.BathWindow.from_hz(1e6, 1e12)
    omega = np.geomspace(window.omega_b, window.omega_c, 2001)
    keep = (
        (omega >= 100 * window.omega_b)
        & (omega <= window.omega_c / 100)
        & (HBAR * omega <= K_B * params.temperature / 100)
    )
    s = noise.spectral_density(omega[keep], params, window).s_vv
    dev = np.max(np.abs(s / (2 * K_B * params.temperature * params.r) - 1.0))
    return [at_most("johnson_nyquist_plateau", dev, cfg.jn_tol, f"{int(keep.sum())} plateau points at 1 K")]


def check_detailed_balance(cfg) -> list[Check]:
    window = cfg.window()
    worst_rates = 0.0
    worst_spectrum = 0.0
    for t in (0.01, 0.1, 1.0, 10.0):
        params = circuit.complete_circuit(cfg.l_j, cfg.r, cfg.f_j, t)
        expected = math.exp(params.thermal_ratio)
        for pair in (
            rates.calibrated_rates(params),
            rates.emission_absorption(params, window),
            rates.emission_absorption(params, window, approximate=True),
        ):
            worst_rates = max(worst_rates, abs(pair.gamma_e / pair.gamma_a / expected - 1.0))
        w = np.geomspace(1e-3, 10.0, 7) * K_B * t / HBAR
        s_pos = noise.spectral_density(w, params, window).s_vv
        s_neg = noise.spectral_density(-w, params, window).s_vv
        ratio = s_pos / s_neg / np.exp(HBAR * w / (K_B * t))
        worst_spectrum = max(worst_spectrum, float(np.max(np.abs(ratio - 1.0))))
    return [
        at_most("detailed_balance_rates", worst_rates, cfg.detailed_balance_tol),
        at_most("detailed_balance_spectrum", worst_spectrum, cfg.detailed_balance_tol),
    ]


def check_calibration(cfg) -> list[Check]:
    params = cfg.circuit()
    wb = rates.calibrate_cutoff(params)
    window = circuit.BathWindow(params.omega_j / 4, cfg.f_c * 2 * math.pi)
    direct = rates.calibrated_rates(params)
    composed = rates.emission_absorption(params, window, approximate=True)
    consistency = max(
        abs(direct.gamma_e / composed.gamma_e - 1.0),
        abs(direct.gamma_a / composed.gamma_a - 1.0) if composed.gamma_a else 0.0,
    )
    return [
        at_most("cutoff_is_quarter_omega_j", abs(wb / (params.omega_j / 4) - 1.0), cfg.calibration_tol),
        at_most("calibration_residual", rates.calibration_residual(params, wb), cfg.calibration_tol),
        at_most(
            "calibrated_rate_consistency",
            consistency,
            cfg.consistency_tol,
            f"T_e = {direct.t_e:.4e} s at T = {params.temperature:g} K; "
            f"the 332 us target is not reachable with these R, L_J, f_J "
            f"(ratio {332e-6 / direct.t_e:.3g})",
        ),
    ]


def check_loop_convergence(cfg) -> list[Check]:
    # scale-free: omega_b = 1, omega_c = 1e4
    window = circuit.BathWindow(1.0, 1e4)
    params = circuit.CircuitParams(l_j=1e-9, c_j=1.0, r=1.0)
    closed = circuit.closed_form_loop_inductance(params, window)
    gaps = []
    for refine in (1, 2):
        dw = cfg.loop_spacing * window.omega_b / refine
        disc = circuit.BathDiscretization(dw, int(round(100 * window.omega_c / dw)))
        total = params.l_j + circuit.bath_inductance_sum(window, params.r, disc)
        gaps.append(abs(total - closed) / closed)
    return [
        at_most("loop_inductance_gap", gaps[0], cfg.loop_tol, f"dw = {cfg.loop_spacing:g} omega_b"),
        at_least("loop_inductance_refinement", gaps[0] / gaps[1], cfg.loop_ratio),
    ]


def check_ringdown(cfg) -> list[Check]:
    # mu = 0.01: R = sqrt(L/C) / (2 mu)
    base = cfg.circuit()
    params = circuit.CircuitParams(base.l_j, base.c_j, math.sqrt(base.l_j / base.c_j) / 0.02)
    period = 2 * math.pi / params.omega_j
    t = np.linspace(0.0, 10 * period, 401)
    closed, _ = rates.classical_ringdown(params, 1.0, t)
    numeric = rates.ringdown_oracle(params, 1.0, t)
    return [at_most("ringdown_rk4_vs_closed", np.max(np.abs(numeric - closed)), cfg.ringdown_tol, "relative to v0")]


def check_lindblad(cfg) -> list[Check]:
    gamma = 1.0
    omega = 100.0 * gamma
    pair = rates.RatePair(gamma, 0.0)
    init = lindblad.ParametricState(cfg.a0, 0.0)
    t = np.linspace(0.0, 5.0 / gamma, 101)
    ref = lindblad.reference_closed_form(init.rho(), pair, omega, t)
    bound = lindblad.step_bound(pair, omega)
    errs = []
    for h in (bound / 2, bound / 4):
        out = lindblad.oracle_evolve(init.rho(), pair, omega, t, lindblad.StepConfig(h))
        errs.append(float(np.max(np.abs(out - ref))))
    trace_err = float(np.max(np.abs(np.trace(out, axis1=1, axis2=2) - 1.0)))
    report = lindblad.compare_solutions(init, pair, omega, t)
    return [
        at_most("lindblad_oracle_vs_exact", errs[0], cfg.lindblad_tol),
        at_least("lindblad_order_ratio_low", errs[0] / errs[1], cfg.order_min),
        at_most("lindblad_order_ratio_high", errs[0] / errs[1], cfg.order_max),
        at_most("lindblad_trace", trace_err, 1e-9),
        at_most(
            "parametric_solution_p1",
            report.max_p1,
            cfg.lindblad_tol,
            f"report-only: max dp0 = {np.max(report.p0):.3e}, max dcoh = {np.max(report.coherence_mag):.3e}",
        ),
    ]


def check_hamiltonian(cfg) -> list[Check]:
    params = circuit.CircuitParams(l_j=1.0, c_j=1.0, r=1.0)
    spec = hamiltonian.LatticeSpec(n_resonators=2, cutoff=3)
    derived = circuit.DerivedInductances(
        l_l=math.inf,
        l_aj=1.0,
        l_ak=np.array([1.0, 1.0]),
        omega_aj=1.0,
        omega_ak=np.array([0.7, 1.3]),
        omega_rk=np.array([0.05, 0.08]),
        omega_rk_approx=np.array([0.05, 0.08]),
        omega_k=np.array([0.7, 1.3]),
    )
    herm = 0.0
    for form, qubit_levels in (("two_level", 2), ("full_ladder", 3)):
        s = hamiltonian.LatticeSpec(2, 3, qubit_levels)
        parts = hamiltonian.assemble_hamiltonian(params, derived, s, form)
        for h in (parts.h_s, parts.h_b, parts.h_i):
            herm = max(herm, hamiltonian.hermiticity_defect(h))
    uncoupled = circuit.DerivedInductances(**{**derived.__dict__, "omega_rk": np.zeros(2)})
    h = hamiltonian.assemble_hamiltonian(params, uncoupled, spec).total
    eig = np.linalg.eigvalsh(h)
    expected = hamiltonian.uncoupled_spectrum(1.0, uncoupled.omega_ak, spec)
    spectrum = float(np.max(np.abs(eig - expected)))

    rng = np.random.default_rng(12345)
    frame = 0.0
    for _ in range(5):
        h0 = np.diag(rng.normal(size=8))
        m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        frame = max(frame, hamiltonian.rotating_frame_check(h0, m + m.conj().T, 1.0))
    return [
        at_most("hamiltonian_hermiticity", herm, cfg.hermitian_tol),
        at_most("uncoupled_spectrum", spectrum, cfg.spectrum_tol, "N = 2, cutoff = 3"),
        at_most("rotating_frame_phase_rule", frame, cfg.frame_tol, "dim 8, t = 1"),
    ]


BATTERY = (
    check_resonators,
    check_kk,
    check_johnson_nyquist,
    check_detailed_balance,
    check_calibration,
    check_loop_convergence,
    check_ringdown,
    check_lindblad,
    check_hamiltonian,
)


def run_battery(cfg, checks=BATTERY) -> list[Check]:
    results = []
    for fn in checks:
        results.extend(fn(cfg))
    return results
