"""Discretisation studies for the resonator chain.

1. Loop inductance: gap between L_J + sum L_k and its continuum value as the
   spacing dw shrinks (omega_b / omega_c = 1e-4, band reaching 100 omega_c).
2. Chain reactance: maximum distance of the finite-chain reactance from -X_B
   at pole midpoints, for the same refinement.

    python3 scripts/convergence_study.py
"""

import numpy as np

from qubit_decoherence.circuit import (
    BathDiscretization,
    BathWindow,
    CircuitParams,
    bath_inductance_sum,
    closed_form_loop_inductance,
    synthesize_bath,
)
from qubit_decoherence.impedance import band_limited_reactance, finite_bath_reactance


def loop_study():
    window = BathWindow(1.0, 1e4)
    params = CircuitParams(l_j=1e-9, c_j=1.0, r=1.0)
    closed = closed_form_loop_inductance(params, window)
    print("loop inductance: dw/omega_b, relative gap, ratio to previous")
    prev = None
    for spacing in (0.2, 0.1, 0.05, 0.02, 0.01):
        disc = BathDiscretization(spacing, int(round(100 * window.omega_c / spacing)))
        gap = abs(params.l_j + bath_inductance_sum(window, params.r, disc) - closed) / closed
        ratio = "" if prev is None else f"{prev / gap:.3f}"
        print(f"  {spacing:6.3f}  {gap:.4e}  {ratio}")
        prev = gap


def reactance_study():
    window = BathWindow(1.0, 100.0)
    probe = np.array([3.0, 7.0, 13.0, 31.0])
    print("chain reactance at pole midpoints: dw, max |X_chain + X_B| / R")
    for dw in (0.8, 0.4, 0.2, 0.1):
        bath = synthesize_bath(window, 1.0, BathDiscretization(dw, int(round(3000 * window.omega_c / dw))))
        mids = (np.floor(probe / dw) + 0.5) * dw
        x = np.array([finite_bath_reactance(w, bath).reactive for w in mids])
        print(f"  {dw:5.2f}  {np.max(np.abs(x + band_limited_reactance(mids, window, 1.0))):.3e}")


if __name__ == "__main__":
    loop_study()
    reactance_study()
