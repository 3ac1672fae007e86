"""Quantum trajectories of a two-level atom under frequent null-result monitoring
of a Lorentzian (finite-bandwidth) environment."""

__version__ = "0.1.0"

from .dynamics import (  # noqa: E402
    DriveHamiltonian,
    HomodyneConfig,
    TrajectoryRecord,
    dissipator,
    homodyne_step,
    homodyne_trajectory,
    lindblad_rhs,
    master_evolve,
    mcwf_step,
    mcwf_trajectory,
    measurement_superop,
    trajectory_rng,
)
from .ensemble import EnsembleConfig, EnsembleResult, compare_series, run_ensemble  # noqa: E402
from .kernel import (  # noqa: E402
    Lorentzian,
    MeasurementSchedule,
    ScalingParams,
    SystemParams,
    Tabulated,
    ZenoParams,
    amplitude_lorentzian,
    amplitude_scaled,
    effective_rate_empirical,
    effective_rate_scaled,
    memory_kernel,
    null_probability,
    survival_repeated,
    volterra_amplitude,
    zeno_sequence,
)
from .states import DensityMatrix, PureState, fidelity  # noqa: E402
