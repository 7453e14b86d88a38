"""Exact spectra of sheared linear and harmonic potential wells."""
from .family import MonomialFamily, ShearParam, TurningPoints, conjugate_shear, potential_value, turning_points
from .spectrum import EnergyLevel, OscillatorMatch, f_linear, f_oscillator, find_levels, hellmann_feynman_derivative, sweep

__version__ = "0.1.0"

__all__ = [
    "MonomialFamily", "ShearParam", "TurningPoints", "conjugate_shear", "potential_value",
    "turning_points", "EnergyLevel", "OscillatorMatch", "f_linear", "f_oscillator",
    "find_levels", "hellmann_feynman_derivative", "sweep",
]
