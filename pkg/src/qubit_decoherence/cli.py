"""Command-line front end.

Commands write CSV (comma separated, header row, LF line endings, UTF-8) into
``--out-dir``. Floats are written with ``repr``: the shortest decimal that
round-trips, so identical configurations give byte-identical files.

Exit codes: 0 success, 1 verification failure, 2 I/O error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import circuit, impedance, lindblad, noise, rates, verify
from .config import RunConfig, build_config, read_config_file
from .errors import ConfigError, DomainError

EXIT_OK, EXIT_VERIFY, EXIT_IO, EXIT_CONFIG = 0, 1, 2, 3


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _pmap(fn, items, threads):
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads or None) as pool:
        return list(pool.map(fn, items))


def cmd_bath(cfg: RunConfig, out: Path) -> int:
    window = cfg.window()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        disc = cfg.discretization()
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    bath = circuit.synthesize_bath(window, cfg.r, disc)
    write_csv(
        out / "bath_sections.csv",
        ("k", "omega_k", "l_k", "c_k", "q_k"),
        zip(bath.k, bath.omega, bath.l, bath.c, bath.q),
    )

    n_sec = min(cfg.s21_sections, len(bath))
    omega_norm = np.arange(1, 100 * (n_sec + 1) + 1) / 100.0
    s21_rows = []
    bw_rows = []
    for res in bath.first(n_sec):
        r_ref = float(impedance.band_limited_resistance(res.omega_k, window, cfg.r))
        mag = np.abs(impedance.section_s21(res, r_ref, omega_norm * bath.delta_omega))
        s21_rows.extend((x, res.k, m) for x, m in zip(omega_norm, mag))
        bw = impedance.s21_bandwidth(res, r_ref)
        bw_rows.append((res.k, res.omega_k, bw, bw / bath.delta_omega))
    write_csv(out / "s21.csv", ("omega_norm", "k", "s21_mag"), s21_rows)
    write_csv(out / "s21_bandwidth.csv", ("k", "omega_k", "bandwidth_3db", "bandwidth_over_delta_omega"), bw_rows)

    x = np.geomspace(1e-8, 1e2, cfg.impedance_points)
    z = impedance.target_impedance(x * window.omega_c, window, cfg.r)
    write_csv(
        out / "impedance.csv",
        ("omega_norm", "r_over_R", "x_over_R"),
        zip(x, z.resistive / cfg.r, z.reactive / cfg.r),
    )
    print(f"bath: {len(bath)} sections, delta_omega = {bath.delta_omega:.6e} rad/s, top = {disc.top:.6e} rad/s")
    return EXIT_OK


def noise_grid(window, n: int) -> np.ndarray:
    mags = np.geomspace(1e-2 * window.omega_b, 1e2 * window.omega_c, n)
    return np.concatenate((-mags[::-1], mags))


def cmd_noise(cfg: RunConfig, out: Path) -> int:
    params = cfg.circuit()
    window = cfg.window()
    omega = noise_grid(window, cfg.noise_points)
    s = noise.spectral_density(omega, params, window).s_vv
    two_sided, one_sided = noise.johnson_nyquist(params.temperature, params.r)
    with np.errstate(divide="ignore", invalid="ignore"):
        norm = s / two_sided if two_sided > 0 else np.full_like(s, math.nan)
    write_csv(out / "spectral_density.csv", ("omega", "s_vv", "s_vv_over_2kTR"), zip(omega, s, norm))
    w = noise.thermal_weights(omega, params.temperature)
    write_csv(out / "weights.csv", ("omega", "n", "N"), zip(omega, w.occupation, w.weight))
    print(f"noise: T = {params.temperature:g} K, two-sided 2kTR = {two_sided:.6e} V^2 s, "
          f"one-sided 4kTR = {one_sided:.6e} V^2 s")
    return EXIT_OK


def temperature_grid(cfg: RunConfig) -> np.ndarray:
    return np.geomspace(cfg.t_min, cfg.t_max, cfg.t_points)


def cmd_rates(cfg: RunConfig, out: Path) -> int:
    params = cfg.circuit()
    temps = temperature_grid(cfg)
    pairs = _pmap(lambda t: rates.calibrated_rates(params.with_temperature(float(t))), temps, cfg.threads)
    write_csv(
        out / "rates_vs_T.csv",
        ("temperature", "gamma_e", "gamma_a", "t_e", "t_a"),
        ((t, p.gamma_e, p.gamma_a, p.t_e, p.t_a) for t, p in zip(temps, pairs)),
    )
    here = rates.calibrated_rates(params)
    window = cfg.window()
    exact = rates.emission_absorption(params, window)
    print(f"rates at T = {params.temperature:g} K (omega_b = omega_J/4): "
          f"gamma_e = {here.gamma_e:.6e} 1/s (T_e = {here.t_e:.6e} s), "
          f"gamma_a = {here.gamma_a:.6e} 1/s (T_a = {here.t_a:.6e} s)")
    print(f"rates with configured window f_b = {cfg.f_b:g} Hz: "
          f"gamma_e = {exact.gamma_e:.6e} 1/s, gamma_a = {exact.gamma_a:.6e} 1/s")
    return EXIT_OK


def _trajectory_rows(traj):
    return zip(traj.t, traj.p1, traj.p0, traj.coherence_mag)


def cmd_evolve(cfg: RunConfig, out: Path) -> int:
    params = cfg.circuit()
    gamma = rates.calibrated_rates(params).gamma_e
    init = lindblad.ParametricState(cfg.a0, cfg.delta0)
    header = ("t", "p1", "p0", "coherence_mag")

    t = np.linspace(0.0, cfg.evolve_span / gamma, cfg.evolve_points)
    parametric = lindblad.parametric_solution(init, gamma, params.omega_j, t)
    write_csv(out / "trajectory_paper.csv", header, _trajectory_rows(lindblad.trajectory(t, parametric.rho)))
    t_long = np.linspace(0.0, cfg.evolve_long_span / gamma, cfg.evolve_points)
    parametric_long = lindblad.parametric_solution(init, gamma, params.omega_j, t_long)
    write_csv(out / "trajectory_paper_long.csv", header, _trajectory_rows(lindblad.trajectory(t_long, parametric_long.rho)))

    # desk-scale oracle: physical gamma, qubit frequency scaled down to ratio * gamma
    omega_desk = cfg.oracle_omega_ratio * gamma
    step = lindblad.StepConfig(cfg.oracle_step)
    report = lindblad.compare_solutions(init, rates.RatePair(gamma, 0.0), omega_desk, t, step)
    write_csv(out / "trajectory_oracle.csv", header, _trajectory_rows(report.oracle))
    write_csv(
        out / "solution_deviation.csv",
        ("t", "dp1", "dp0", "dcoherence_mag"),
        zip(report.t, report.p1, report.p0, report.coherence_mag),
    )
    print(f"evolve: gamma = {gamma:.6e} 1/s, omega_J = {params.omega_j:.6e} rad/s, "
          f"oracle omega = {omega_desk:.6e} rad/s; max dp1 = {report.max_p1:.3e} "
          f"(dp0, dcoherence are report-only)")
    return EXIT_OK


def _report(checks) -> int:
    failed = [c for c in checks if not c.passed]
    for c in checks:
        print(c.line())
    if failed:
        print(f"verification FAILED: first failing check is {failed[0].name}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"verification passed: {len(checks)} checks")
    return EXIT_OK


def cmd_hamiltonian_check(cfg: RunConfig, out: Path) -> int:
    return _report(verify.check_hamiltonian(cfg))


def cmd_verify(cfg: RunConfig, out: Path) -> int:
    return _report(verify.run_battery(cfg))


COMMANDS = {
    "bath": cmd_bath,
    "noise": cmd_noise,
    "rates": cmd_rates,
    "evolve": cmd_evolve,
    "hamiltonian-check": cmd_hamiltonian_check,
    "verify": cmd_verify,
}


def parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="qubit-decoherence",
        allow_abbrev=False,
        description="Decoherence of a resistively loaded Josephson qubit.",
        epilog="Any configuration key can be overridden with --key value (e.g. --temperature 0.1).",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--out-dir", help="output directory (default: out)")
    parser.add_argument("--threads", help="worker threads for sweeps, 0 = auto")
    args, rest = parser.parse_known_args(argv)

    overrides = {}
    i = 0
    while i < len(rest):
        token = rest[i]
        if not token.startswith("--"):
            raise ConfigError(f"unexpected argument {token!r}")
        if "=" in token:
            key, value = token.split("=", 1)
            i += 1
        else:
            if i + 1 >= len(rest):
                raise ConfigError(f"missing value for {token}")
            key, value = token, rest[i + 1]
            i += 2
        overrides[key] = value
    if args.out_dir is not None:
        overrides["out_dir"] = args.out_dir
    if args.threads is not None:
        overrides["threads"] = args.threads
    return args, overrides


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args, overrides = parse_args(argv)
        file_values = read_config_file(args.config) if args.config else {}
        cfg = build_config(file_values, overrides)
    except (ConfigError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out = Path(cfg.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("", encoding="utf-8")
        probe.unlink()
    except OSError as exc:
        print(f"I/O error: output directory {out} is not writable: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        return COMMANDS[args.command](cfg, out)
    except (ConfigError, DomainError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
