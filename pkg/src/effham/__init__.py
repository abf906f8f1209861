"""Evolution-speed bounds and efficient Hamiltonian synthesis for small
(possibly non-Hermitian) quantum systems."""

from ._backend import BACKEND
from .bounds import SpeedReportRow, bound_report, efficiency, fleming_bound, report_path
from .errors import EffhamError, NumericFailure, ValidationError
from .geometry import SampledPath, bloch_speed, bloch_vector, fs_angle, fs_speed, kinetic_scalar
from .linalg import eigenvalues_2x2, hs_norm, numerical_rank, singular_values, spectral_norm, trace_split
from .propagate import HamiltonianPath, PropagationOptions, phs_distance, propagate
from .synthesis import (
    dynamical_phase,
    efficient_hamiltonian,
    ep_generator,
    gauge_fix,
    geometric_phase,
    phase_perturb,
    synthesize,
)
from .trajectories import Trajectory, great_circle, latitude_circle, phased_great_circle

__version__ = "0.1.0"
