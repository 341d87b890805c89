"""Run configuration: defaults < key=value file < command-line overrides.

Frequencies are given in Hz (``f_j``, ``f_b``, ``f_c``, ``delta_f``) and
converted to rad/s once, by the accessors on ``RunConfig``.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

from .circuit import BathDiscretization, BathWindow, CircuitParams, complete_circuit, default_discretization
from .errors import ConfigError

TWO_PI = 2.0 * math.pi


@dataclass
class RunConfig:
    # circuit
    l_j: float = 134e-12
    r: float = 10e3
    f_j: float = 13.5e9
    temperature: float = 0.01
    # bath window and discretisation
    f_b: float = 1e6
    f_c: float = 1e12
    delta_f: float | None = None  # default f_b / 10
    n: int | None = None  # default: reach 100 f_c, capped at max_resonators
    max_resonators: int = 100_000
    # figure grids
    s21_sections: int = 5
    impedance_points: int = 801
    noise_points: int = 400
    t_min: float = 1e-3
    t_max: float = 10.0
    t_points: int = 200
    # evolution
    a0: float = 1.0 / math.sqrt(2.0)
    delta0: float = 0.0
    evolve_span: float = 5.0  # in emission time constants
    evolve_long_span: float = 1e4
    evolve_points: int = 201
    oracle_omega_ratio: float = 100.0
    oracle_step: float | None = None
    # verification tolerances
    kk_rtol: float = 0.01
    kk_atol: float = 1e-3  # fraction of R
    jn_tol: float = 0.02
    detailed_balance_tol: float = 1e-10
    calibration_tol: float = 1e-10
    consistency_tol: float = 1e-12
    identity_tol: float = 1e-12
    loop_tol: float = 0.01
    loop_ratio: float = 1.5
    loop_spacing: float = 0.02  # dw / omega_b for the convergence check
    ringdown_tol: float = 1e-8
    lindblad_tol: float = 1e-6
    order_min: float = 12.0
    order_max: float = 20.0
    hermitian_tol: float = 1e-12
    spectrum_tol: float = 1e-9
    frame_tol: float = 1e-10
    # runtime
    out_dir: str = "out"
    threads: int = 0

    _POSITIVE = (
        "l_j", "r", "f_j", "f_b", "f_c", "max_resonators", "s21_sections", "impedance_points",
        "noise_points", "t_min", "t_max", "t_points", "evolve_span", "evolve_long_span",
        "evolve_points", "oracle_omega_ratio", "loop_spacing",
    )

    def validate(self) -> "RunConfig":
        for name in self._POSITIVE:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be positive, got {value!r}")
        for name in ("delta_f", "n", "oracle_step"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{name} must be positive, got {value!r}")
        if self.temperature < 0 or not math.isfinite(self.temperature):
            raise ConfigError(f"temperature must be >= 0, got {self.temperature!r}")
        if not self.f_b < self.f_c:
            raise ConfigError(f"f_b must be below f_c, got f_b={self.f_b!r}, f_c={self.f_c!r}")
        if not self.t_min < self.t_max:
            raise ConfigError("t_min must be below t_max")
        if not 0 <= self.a0 <= 1:
            raise ConfigError(f"a0 must lie in [0, 1], got {self.a0!r}")
        if self.threads < 0:
            raise ConfigError("threads must be >= 0")
        return self

    def circuit(self) -> CircuitParams:
        return complete_circuit(self.l_j, self.r, self.f_j, self.temperature)

    def window(self) -> BathWindow:
        return BathWindow.from_hz(self.f_b, self.f_c)

    def discretization(self) -> BathDiscretization:
        window = self.window()
        if self.delta_f is None and self.n is None:
            return default_discretization(window, max_resonators=self.max_resonators)
        dw = TWO_PI * self.delta_f if self.delta_f is not None else 0.1 * window.omega_b
        n = self.n if self.n is not None else min(self.max_resonators, int(math.ceil(100 * window.omega_c / dw)))
        return BathDiscretization(dw, n)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _convert(name: str, raw: str):
    f = _FIELDS[name]
    text = raw.strip()
    kind = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", str(f.type))
    optional = "None" in kind
    if optional and text.lower() in ("", "none", "auto"):
        return None
    try:
        if kind.startswith("int"):
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        if kind.startswith("float"):
            return float(text)
        return text
    except ValueError:
        raise ConfigError(f"{name}: cannot parse {raw!r} as {kind}") from None


def normalize_key(key: str) -> str:
    name = key.lstrip("-").replace("-", "_")
    if name not in _FIELDS:
        raise ConfigError(f"unknown configuration key {key!r}")
    return name


def read_config_file(path: str | Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = line.split("=", 1)
        values[normalize_key(key.strip())] = value
    return values


def build_config(file_values: dict[str, str] | None = None, overrides: dict[str, str] | None = None) -> RunConfig:
    merged = {**(file_values or {}), **(overrides or {})}
    kwargs = {normalize_key(k): _convert(normalize_key(k), v) for k, v in merged.items()}
    return RunConfig(**kwargs).validate()


def config_lines(cfg: RunConfig) -> list[str]:
    return [f"{f.name} = {getattr(cfg, f.name)!r}" for f in dataclasses.fields(cfg)]

