"""Desk-scale operator algebra for the qubit + truncated bath.

Tensor ordering is ``[qubit | mode N | ... | mode 1]`` (qubit leftmost, mode
indices decreasing to the right). The qubit factor uses the Fock basis
(|0>, |1>, ...), so in the two-level form sigma_z = diag(1, -1) and
H_S = -(w_AJ / 2) sigma_z puts |1> above |0>. All energies are divided by hbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy import linalg

from .errors import CapacityError, DomainError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def ladder_pauli():
    """sigma_+- = (sigma_x +- i sigma_y) / sqrt(2), the 1/sqrt(2) normalisation of the model.

    These are sqrt(2) times the usual (sigma_x +- i sigma_y) / 2.
    """
    s = 1.0 / math.sqrt(2.0)
    return s * (SIGMA_X + 1j * SIGMA_Y), s * (SIGMA_X - 1j * SIGMA_Y)


@dataclass(frozen=True)
class LatticeSpec:
    n_resonators: int
    cutoff: int
    qubit_levels: int = 2
    max_dim: int = 4096

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.qubit_levels,) + (self.cutoff,) * self.n_resonators

    @property
    def dim(self) -> int:
        return self.qubit_levels * self.cutoff**self.n_resonators

    def check(self) -> None:
        if self.cutoff < 2 or self.qubit_levels < 2 or self.n_resonators < 0:
            raise DomainError(f"invalid lattice {self}")
        if self.dim > self.max_dim:
            raise CapacityError(f"Hilbert space dimension {self.dim} exceeds maximum {self.max_dim}")

    def position(self, slot: int) -> int:
        """Tensor factor index of ``slot`` (0 = qubit, k = bath mode k)."""
        if not 0 <= slot <= self.n_resonators:
            raise DomainError(f"slot {slot} out of range 0..{self.n_resonators}")
        return 0 if slot == 0 else self.n_resonators - slot + 1


def ladder_operator(cutoff: int) -> np.ndarray:
    """Truncated annihilation operator, sqrt(n) on the first superdiagonal."""
    if cutoff < 2:
        raise DomainError(f"cutoff must be >= 2, got {cutoff}")
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)


def embed_operator(op: np.ndarray, slot: int, spec: LatticeSpec) -> np.ndarray:
    """Kronecker-embed a single-factor operator into the full lattice."""
    spec.check()
    pos = spec.position(slot)
    if op.shape != (spec.dims[pos],) * 2:
        raise DomainError(f"operator shape {op.shape} does not match factor dimension {spec.dims[pos]}")
    factors = [np.eye(d, dtype=complex) for d in spec.dims]
    factors[pos] = op
    return reduce(np.kron, factors)


@dataclass(frozen=True)
class Hamiltonian:
    h_s: np.ndarray
    h_b: np.ndarray
    h_i: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.h_s + self.h_b + self.h_i


def assemble_hamiltonian(
    params,
    derived,
    spec: LatticeSpec,
    form: str = "two_level",
    zero_point: bool = False,
) -> Hamiltonian:
    """System, bath and interaction parts for the first ``spec.n_resonators`` modes.

    ``two_level``: H_S = -(w_AJ/2) sz, H_B = sum w_Ak b_k^+ b_k,
    H_I = (1/2) sx sum w_Rk (b_k^+ + b_k). With ``zero_point`` the unshifted
    truncation w_AJ (a^+ a + 1/2) and w_Ak (b^+ b + 1/2) is used instead.

    ``full_ladder``: qubit kept as a ``spec.qubit_levels`` oscillator with the
    bare frequencies, H_S = w_J a^+ a, H_B = sum w_k (b^+ b + 1/2), and the
    coupling from sqrt(J(w_k) dw).
    """
    spec.check()
    n = spec.n_resonators
    if len(derived.omega_ak) < n:
        raise DomainError(f"need {n} bath modes, derived frequencies have {len(derived.omega_ak)}")
    eye = np.eye(spec.dim, dtype=complex)
    b = ladder_operator(spec.cutoff)
    b_ops = [embed_operator(b, k, spec) for k in range(1, n + 1)]

    if form == "two_level":
        if spec.qubit_levels != 2:
            raise DomainError("two_level form needs qubit_levels = 2")
        w_q = derived.omega_aj
        w_modes = derived.omega_ak[:n]
        w_r = derived.omega_rk[:n]
        if zero_point:
            a = embed_operator(ladder_operator(2), 0, spec)
            h_s = w_q * (a.conj().T @ a + 0.5 * eye)
        else:
            h_s = -0.5 * w_q * embed_operator(SIGMA_Z, 0, spec)
        qubit_x = embed_operator(SIGMA_X, 0, spec)
        half_zp = 0.5 if zero_point else 0.0
    elif form == "full_ladder":
        a = embed_operator(ladder_operator(spec.qubit_levels), 0, spec)
        w_modes = derived.omega_k[:n]
        w_r = derived.omega_rk_approx[:n]
        h_s = params.omega_j * (a.conj().T @ a)
        qubit_x = a + a.conj().T
        half_zp = 0.5
    else:
        raise DomainError(f"unknown form {form!r}")

    h_b = np.zeros_like(eye)
    coupling = np.zeros_like(eye)
    for w, wr, bk in zip(w_modes, w_r, b_ops):
        h_b += w * (bk.conj().T @ bk + half_zp * eye)
        coupling += wr * (bk.conj().T + bk)
    h_i = 0.5 * qubit_x @ coupling
    return Hamiltonian(h_s=h_s, h_b=h_b, h_i=h_i)


def hermiticity_defect(h: np.ndarray) -> float:
    """max |H - H^+| / max |H| (0 for the zero matrix)."""
    scale = np.max(np.abs(h))
    return 0.0 if scale == 0 else float(np.max(np.abs(h - h.conj().T)) / scale)


def uncoupled_spectrum(omega_q: float, omega_modes, spec: LatticeSpec) -> np.ndarray:
    """Sorted eigenvalues of -(w_q/2) sz + sum w_k n_k on the truncated lattice."""
    levels = [np.array([-0.5 * omega_q, 0.5 * omega_q])]
    levels += [w * np.arange(spec.cutoff) for w in omega_modes[: spec.n_resonators]]
    grid = reduce(lambda acc, x: np.add.outer(acc, x).ravel(), levels)
    return np.sort(grid)


def lattice_states(spec: LatticeSpec) -> np.ndarray:
    """Occupation tuples for each basis index, one row per state, columns in tensor order."""
    return np.array(list(np.ndindex(*spec.dims)))


def rotating_frame_check(h0: np.ndarray, a: np.ndarray, t: float) -> float:
    """Max deviation between exp(iH0t) A exp(-iH0t) and the phase rule exp(i(E_m - E_n)t) A_mn."""
    h0 = np.asarray(h0)
    off = h0 - np.diag(np.diag(h0))
    if np.any(off != 0):
        raise DomainError("rotating-frame check needs a diagonal H0")
    u = linalg.expm(1j * h0 * t)
    by_exponential = u @ a @ u.conj().T
    e = np.real(np.diag(h0))
    by_phase = np.exp(1j * np.subtract.outer(e, e) * t) * a
    return float(np.max(np.abs(by_exponential - by_phase)))
