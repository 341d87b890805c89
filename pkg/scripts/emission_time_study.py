"""Emission time constant T_e at the 134 pH / 10 kOhm / 13.5 GHz operating point.

With omega_b = omega_J / 4 the emission rate is (coth + 1) / (8 R C_J), so
T_e ~ 4 R C_J at low temperature. This script prints T_e over temperature and
the resistance that a target T_e would require at fixed L_J and f_J, to show
how far a 332 us emission time lies from this parameter set.

    python3 scripts/emission_time_study.py
"""

import numpy as np

from qubit_decoherence.circuit import complete_circuit
from qubit_decoherence.rates import calibrate_cutoff, calibrated_rates

L_J, R, F_J = 134e-12, 10e3, 13.5e9
TARGET_T_E = 332e-6


def main():
    base = complete_circuit(L_J, R, F_J, 0.01)
    print(f"C_J = {base.c_j:.6e} F, omega_b = omega_J/4 = {calibrate_cutoff(base):.6e} rad/s")
    print(f"{'T [K]':>10} {'T_e [s]':>14} {'T_a [s]':>14}")
    for t in np.geomspace(1e-3, 10, 9):
        pair = calibrated_rates(base.with_temperature(float(t)))
        print(f"{t:10.4g} {pair.t_e:14.6e} {pair.t_a:14.6e}")

    t_e = calibrated_rates(base).t_e
    print(f"\nT_e at 10 mK: {t_e * 1e9:.2f} ns; 332 us is {TARGET_T_E / t_e:.4g} times longer")
    # T_e scales linearly with R at fixed C_J (low-temperature limit)
    print(f"R needed for T_e = 332 us at fixed L_J, f_J: {R * TARGET_T_E / t_e:.4g} ohm")


if __name__ == "__main__":
    main()
