"""Sub-diffraction Rabi excitation patterns driven by quantized light.

Coherent and number-squeezed inputs, resonant Jaynes-Cummings dynamics in a
standing wave, pattern metrics and a squeezing-parameter grid search.
"""

__version__ = "0.1.0"

from .classical_dynamics import ClassicalDrive, classical_pattern, classical_pe
from .errors import (
    ComputeError,
    ConfigError,
    GridMismatch,
    GridTooCoarse,
    NodePosition,
    NoFeasiblePoint,
    NoFringes,
    NumericalInstability,
    SchemaError,
    TruncationInsufficient,
)
from .fock_states import (
    FieldState,
    PhotonStats,
    SqueezeParams,
    TruncationPolicy,
    make_coherent,
    make_squeezed_coherent,
    photon_stats,
    photon_stats_numeric,
    q_function_coherent,
    q_function_squeezed,
)
from .jc_dynamics import (
    CollapseRevival,
    DriveConfig,
    collapse_revival_times,
    full_state,
    quantum_pattern,
    quantum_pe,
    time_trace,
)
from .kernels import BACKEND
from .pattern import ExcitationPattern, wavelength_grid
from .pattern_analysis import PatternMetrics, compare_to_classical, count_peaks, visibility
from .squeeze_optimizer import OptimizerResult, SearchSpec, search, variance_objective
