"""Decoherence of a Josephson qubit loaded by a parasitic resistance.

The resistance is modelled as a Foster chain of LC resonators (a
Caldeira-Leggett bath). Modules, bottom up:

- ``circuit``: qubit parameters, bath synthesis, loop inductances and coupling frequencies
- ``impedance``: band-limited bath impedance, Kramers-Kronig check, section S21
- ``noise``: Bose weights, two-sided voltage noise spectrum, correlation function
- ``rates``: spectral ohmic density, emission/absorption rates, RLC calibration of omega_b
- ``hamiltonian``: truncated system/bath/interaction operators and rotating-frame checks
- ``lindblad``: closed-form and integrated qubit decay
"""

from .circuit import (
    BathDiscretization,
    BathWindow,
    CircuitParams,
    FosterBath,
    Resonator,
    complete_circuit,
    default_discretization,
    loop_inductance,
    mode_and_coupling_frequencies,
    synthesize_bath,
)
from .rates import RatePair, calibrated_rates, emission_absorption

__version__ = "0.1.0"

__all__ = [
    "BathDiscretization",
    "BathWindow",
    "CircuitParams",
    "FosterBath",
    "RatePair",
    "Resonator",
    "calibrated_rates",
    "complete_circuit",
    "default_discretization",
    "emission_absorption",
    "loop_inductance",
    "mode_and_coupling_frequencies",
    "synthesize_bath",
]
