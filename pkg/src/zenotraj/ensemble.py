"""Reproducible trajectory ensembles and their comparison with the master equation.

Trajectory ``i`` always draws from ``trajectory_rng(master_seed, i)`` and
is stepped with elementwise arithmetic only, so its samples do not depend
on how trajectories are grouped into chunks or spread over threads.  The
per-trajectory samples are stored in index order and reduced with a
fixed pairwise tree, which makes the ensemble mean bit-identical for any
worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .dynamics import (
    HomodyneConfig,
    TrajectoryRecord,
    _check_steps,
    _components_to_matrices,
    _HomodyneStepper,
    _MCWFStepper,
    _run_homodyne_batch,
    _run_mcwf_batch,
    coarse_step,
    drive_hamiltonian,
    homodyne_increments,
    master_evolve,
    trajectory_rng,
)
from .errors import ConfigError, EnsembleError, NumericalError
from .kernel import ScalingParams, SystemParams, effective_rate_scaled
from .states import DensityMatrix, PureState

COMPONENTS = ("rho_ee", "rho_gg", "re_rho_eg", "im_rho_eg")
CHUNK = 250


@dataclass(frozen=True)
class EnsembleConfig:
    n_traj: int
    kind: Literal["mcwf", "homodyne"]
    master_seed: int
    sample_times: np.ndarray
    dt: float
    phi: float = 0.0
    t_final: float | None = None

    def __post_init__(self) -> None:
        if int(self.n_traj) != self.n_traj or self.n_traj < 1:
            raise ConfigError(f"n_traj must be a positive integer, got {self.n_traj!r}")
        if self.kind not in ("mcwf", "homodyne"):
            raise ConfigError(f"unknown ensemble kind {self.kind!r}")
        times = np.atleast_1d(np.asarray(self.sample_times, dtype=float))
        object.__setattr__(self, "sample_times", times)
        horizon = self.horizon
        if times.size == 0 or np.any(times < 0) or np.any(times > horizon * (1 + 1e-12)):
            raise ConfigError("sample times must lie within [0, t_final]")

    @property
    def horizon(self) -> float:
        return float(np.max(self.sample_times)) if self.t_final is None else self.t_final

    def sample_steps(self) -> np.ndarray:
        steps = np.rint(self.sample_times / self.dt).astype(np.int64)
        if np.any(np.abs(steps * self.dt - self.sample_times) > 1e-9 * max(1.0, self.horizon)):
            raise ConfigError("sample times must lie on the dt grid")
        return steps


@dataclass
class EnsembleResult:
    """Ensemble mean state and per-component standard errors at the sample times.

    ``stderr`` columns follow ``COMPONENTS``.  With a single trajectory the
    standard error is undefined: it is NaN and ``degenerate`` is set.
    """

    sample_times: np.ndarray
    mean_rho: np.ndarray
    stderr: np.ndarray
    clamp_count: int
    n_traj: int
    kind: str
    degenerate: bool = False
    samples: np.ndarray | None = field(default=None, repr=False)

    @property
    def rho_ee(self) -> np.ndarray:
        return self.mean_rho[:, 0, 0].real

    @property
    def rho_ee_stderr(self) -> np.ndarray:
        return self.stderr[:, 0]


@dataclass(frozen=True)
class ComparisonReport:
    z: np.ndarray
    max_z: float
    argmax: int
    threshold: float
    passed: bool


def pairwise_sum(x: np.ndarray) -> np.ndarray:
    """Sum over axis 0 with a fixed balanced binary tree."""
    n = x.shape[0]
    if n == 1:
        return x[0].copy()
    mid = n // 2
    return pairwise_sum(x[:mid]) + pairwise_sum(x[mid:])


def _ensemble_mean(samples: np.ndarray):
    n = samples.shape[0]
    mean = pairwise_sum(samples) / n
    if n == 1:
        return mean, np.full_like(mean, np.nan)
    dev = samples - mean
    var = pairwise_sum(dev * dev) / (n - 1)
    return mean, np.sqrt(var / n)


def _mcwf_chunk(indices, stepper, initial, config, steps, record):
    draws = np.stack([trajectory_rng(config.master_seed, i).random(steps) for i in indices])
    amps, _ = _run_mcwf_batch(stepper, initial, draws, record)
    alpha, beta = amps[..., 0], amps[..., 1]
    coh = alpha * beta.conj()
    comps = np.stack([alpha.real**2 + alpha.imag**2, beta.real**2 + beta.imag**2, coh.real, coh.imag], axis=-1)
    return comps, np.zeros(len(indices), dtype=np.int64)


def _homodyne_chunk(indices, stepper, initial, config, steps, record):
    incs = np.stack([homodyne_increments(trajectory_rng(config.master_seed, i), steps, config.dt)
                     for i in indices])
    comps, _, clamps = _run_homodyne_batch(stepper, initial, incs, record, keep_currents=False)
    return comps, clamps


def run_ensemble(config: EnsembleConfig, params: SystemParams, scaling: ScalingParams,
                 initial: PureState, workers: int = 1, keep_samples: bool = False) -> EnsembleResult:
    """Run ``config.n_traj`` trajectories and average them.

    MCWF trajectories are averaged as projectors ``|psi><psi|``; homodyne
    trajectories start from the projector of ``initial``.  ``workers``
    changes wall time only, never the result.
    """
    steps = _check_steps(config.horizon, config.dt)
    record = config.sample_steps()
    h_s = drive_hamiltonian(params)
    if config.kind == "mcwf":
        abar, rate = coarse_step(params, scaling, config.dt)
        stepper = _MCWFStepper(h_s, rate, abar, config.dt)
        start, chunk_fn = initial, _mcwf_chunk
    else:
        coarse_step(params, scaling, config.dt)
        stepper = _HomodyneStepper(h_s, effective_rate_scaled(scaling), HomodyneConfig(config.phi, config.dt))
        start, chunk_fn = initial.projector(), _homodyne_chunk

    chunks = [range(i, min(i + CHUNK, config.n_traj)) for i in range(0, config.n_traj, CHUNK)]

    def work(indices):
        return chunk_fn(indices, stepper, start, config, steps, record)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]

    samples = np.concatenate([p[0] for p in parts])
    clamps = np.concatenate([p[1] for p in parts])
    bad = ~np.all(np.isfinite(samples), axis=(1, 2))
    if np.any(bad):
        raise EnsembleError("non-finite state", int(np.argmax(bad)), config.master_seed)

    mean, stderr = _ensemble_mean(samples)
    return EnsembleResult(
        sample_times=config.sample_times.copy(),
        mean_rho=_components_to_matrices(mean),
        stderr=stderr,
        clamp_count=int(clamps.sum()),
        n_traj=config.n_traj,
        kind=config.kind,
        degenerate=config.n_traj == 1,
        samples=samples if keep_samples else None,
    )


def master_reference(config: EnsembleConfig, params: SystemParams, scaling: ScalingParams,
                     initial: PureState, dt: float | None = None) -> np.ndarray:
    """Master-equation ``rho_ee`` at the ensemble's sample times."""
    dt = config.dt if dt is None else dt
    sol = master_evolve(initial.projector(), drive_hamiltonian(params), effective_rate_scaled(scaling),
                        config.horizon, dt)
    steps = np.rint(config.sample_times / dt).astype(np.int64)
    return sol.states[steps, 0, 0].real


def compare_series(a, b, stderr, threshold: float = 3.0, times_a=None, times_b=None) -> ComparisonReport:
    """z-scores ``|a - b| / stderr`` and a pass flag for ``max z <= threshold``.

    A zero standard error gives ``z = 0`` where the series agree exactly and
    ``inf`` otherwise.
    """
    a, b, stderr = (np.asarray(v, dtype=float) for v in (a, b, stderr))
    if a.shape != b.shape or a.shape != stderr.shape:
        raise ConfigError(f"series shapes differ: {a.shape}, {b.shape}, {stderr.shape}")
    if times_a is not None and times_b is not None:
        if np.shape(times_a) != np.shape(times_b) or not np.allclose(times_a, times_b, rtol=0, atol=1e-12):
            raise ConfigError("series are sampled on different grids")
    if np.any(np.isnan(stderr)):
        raise NumericalError("z-scores undefined (NaN standard error)")
    diff = np.abs(a - b)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(stderr > 0, diff / np.where(stderr > 0, stderr, 1.0), np.where(diff == 0, 0.0, np.inf))
    k = int(np.argmax(z))
    return ComparisonReport(z, float(z[k]), k, threshold, bool(z[k] <= threshold))


def single_record(result_kind: str, config: EnsembleConfig, params: SystemParams, scaling: ScalingParams,
                  initial: PureState, index: int) -> TrajectoryRecord:
    """Full record of ensemble member ``index`` (same stream as inside :func:`run_ensemble`)."""
    from .dynamics import homodyne_trajectory, mcwf_trajectory

    if result_kind == "mcwf":
        return mcwf_trajectory(initial, params, scaling, config.horizon, config.dt, config.master_seed, index)
    return homodyne_trajectory(initial.projector(), params, scaling, HomodyneConfig(config.phi, config.dt),
                               config.horizon, config.master_seed, index)


def driven_setup(n_traj: int = 2000, kind: str = "mcwf", seed: int = 2017, t_final: float = 40.0,
               dt: float = 0.01, samples: int = 50):
    """Parameters of the driven-atom comparison: rabi 0.1, Gamma 1, x 0.2, E 0, start in |e>."""
    params = SystemParams.resonant(gamma=1.0, lam=10.0, rabi=0.1)
    scaling = ScalingParams(x=0.2, c=0.0, gamma=1.0)
    times = t_final * np.arange(1, samples + 1) / samples
    config = EnsembleConfig(n_traj=n_traj, kind=kind, master_seed=seed, sample_times=times, dt=dt,
                            t_final=t_final)
    return config, params, scaling, PureState.excited()


__all__ = [
    "COMPONENTS",
    "ComparisonReport",
    "EnsembleConfig",
    "EnsembleResult",
    "compare_series",
    "driven_setup",
    "master_reference",
    "pairwise_sum",
    "run_ensemble",
    "single_record",
]
