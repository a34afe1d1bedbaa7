"""Recover the free surface of small-amplitude water waves on a shear current from bed pressure."""

__version__ = "0.1.0"

from ._kernels import backend
from .errors import (
    BedwaveError,
    ContractViolation,
    MultipleRootsWarning,
    NumericalFailure,
)
from .numerics import Grid1D, SampledFunction, differentiate, find_root, integrate_second_order_ivp, quad
from .rayleigh import (
    RayleighSolution,
    WaveParameters,
    bifurcation_speed,
    burns_speed,
    closed_form_burns,
    closed_form_dispersion,
    solve_cauchy,
)
from .shear import (
    ConstantVorticity,
    Poiseuille,
    ShearProfile,
    TabulatedProfile,
    ZeroFlow,
    load_profile_csv,
    make_profile,
)
from .solitary import DecayingTrace, FroudeTable, SolitaryReconstruction, froude_fr, reconstruct_solitary
from .stokes import PeriodicPressure, StokesReconstruction, reconstruct_stokes

__all__ = [
    "__version__",
    "backend",
    "BedwaveError",
    "ContractViolation",
    "NumericalFailure",
    "MultipleRootsWarning",
    "Grid1D",
    "SampledFunction",
    "integrate_second_order_ivp",
    "quad",
    "differentiate",
    "find_root",
    "ShearProfile",
    "ZeroFlow",
    "ConstantVorticity",
    "Poiseuille",
    "TabulatedProfile",
    "load_profile_csv",
    "make_profile",
    "WaveParameters",
    "RayleighSolution",
    "solve_cauchy",
    "bifurcation_speed",
    "burns_speed",
    "closed_form_dispersion",
    "closed_form_burns",
    "PeriodicPressure",
    "StokesReconstruction",
    "reconstruct_stokes",
    "DecayingTrace",
    "FroudeTable",
    "SolitaryReconstruction",
    "froude_fr",
    "reconstruct_solitary",
]
