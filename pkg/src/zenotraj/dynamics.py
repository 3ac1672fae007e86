"""Jump (MCWF) and diffusive (homodyne) trajectories, and the averaged master equation.

All three evolve the driven atom with ``H_S = (delta/2) sigma_z + rabi sigma_x``
and the measurement-dependent rate ``gamma_eff``.  The drive detuning
``delta`` is a rotating-frame parameter; by default it equals the offset
``E`` between the transition and the reservoir center.

The batched steppers (``_MCWFStepper``, ``_HomodyneStepper``) work on
separate real and imaginary float arrays, using only elementwise add,
multiply, divide and sqrt.  Those are exactly rounded, so a trajectory
produces the same bits whether it is stepped alone or inside a batch of
any size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np

from .errors import ConfigError, StepSizeError
from .kernel import (
    ScalingParams,
    SystemParams,
    amplitude_scaled,
    effective_rate_empirical,
    effective_rate_scaled,
    survival_repeated,
)
from .states import DensityMatrix, PureState, as_matrix

STEP_GUARD = 0.1
CLAMP_TOL = 1e-9


@dataclass(frozen=True)
class DriveHamiltonian:
    """``H_S = (delta_eg / 2) sigma_z + rabi sigma_x``."""

    delta_eg: float = 0.0
    rabi: float = 0.0

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[0.5 * self.delta_eg, self.rabi], [self.rabi, -0.5 * self.delta_eg]], dtype=complex
        )

    def propagator(self, dt: float) -> np.ndarray:
        """``exp(-i H_S dt)`` from ``cos(w dt) - i sin(w dt) H_S / w``."""
        w = math.hypot(0.5 * self.delta_eg, self.rabi)
        if w == 0.0:
            return np.eye(2, dtype=complex)
        return math.cos(w * dt) * np.eye(2) - 1j * (math.sin(w * dt) / w) * self.matrix


@dataclass(frozen=True)
class HomodyneConfig:
    phi: float = 0.0
    dt: float = 1e-2

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ConfigError(f"homodyne dt must be positive, got {self.dt!r}")


@dataclass
class TrajectoryRecord:
    """One simulated trajectory.

    ``states`` has shape ``(steps + 1, 2)`` (pure amplitudes) or
    ``(steps + 1, 2, 2)`` (density matrices).  ``events[k]`` belongs to the
    interval ending at ``times[k + 1]``: a jump flag for MCWF, the current
    sample for homodyne runs, empty for the master equation.
    """

    kind: str
    times: np.ndarray
    states: np.ndarray
    events: np.ndarray
    seed: int | None = None
    index: int = 0
    clamp_count: int = 0
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if self.events.size and len(self.events) != len(self.times) - 1:
            raise ValueError("events must be aligned to intervals")

    @property
    def excited_population(self) -> np.ndarray:
        if self.states.ndim == 2:
            return np.abs(self.states[:, 0]) ** 2
        return self.states[:, 0, 0].real

    @property
    def jump_times(self) -> np.ndarray:
        if self.kind != "mcwf":
            raise AttributeError("jump times exist only for MCWF records")
        return self.times[1:][self.events.astype(bool)]


class HomodyneUpdate(NamedTuple):
    rho: DensityMatrix
    current: float
    clamped: bool


def trajectory_rng(master_seed: int, index: int) -> np.random.Generator:
    """PCG64 stream for trajectory ``index``.

    Seeded by ``SeedSequence(master_seed, spawn_key=(index,))``, which is the
    ``index``-th child of ``SeedSequence(master_seed).spawn``; the stream
    depends only on the pair, never on worker count or scheduling.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(master_seed, spawn_key=(index,))))


def drive_hamiltonian(params: SystemParams, frame: float | None = None) -> DriveHamiltonian:
    """Rotating-frame drive Hamiltonian; ``frame`` defaults to ``params.frame``, then ``omega0``."""
    if frame is None:
        frame = params.sdf.omega0 if params.frame is None else params.frame
    return DriveHamiltonian(params.delta_eg - frame, params.rabi)


def _check_steps(t_final: float, dt: float) -> int:
    if not dt > 0 or t_final < 0:
        raise ConfigError(f"need dt > 0 and t_final >= 0 (got dt={dt!r}, t_final={t_final!r})")
    n = int(round(t_final / dt))
    if abs(n * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise ConfigError(f"t_final={t_final!r} is not a multiple of dt={dt!r}")
    return n


def _check_gamma(params: SystemParams, scaling: ScalingParams) -> None:
    if not math.isclose(params.gamma, scaling.gamma, rel_tol=1e-12):
        raise ConfigError(f"gamma mismatch: system {params.gamma!r} vs scaling {scaling.gamma!r}")


def coarse_step(params: SystemParams, scaling: ScalingParams, dt: float,
                source: Literal["scaled", "repeated"] = "scaled") -> tuple[complex, float]:
    """Survival amplitude over one coarse step ``dt`` and the matching rate.

    ``scaled`` uses the scaling-limit formula and its rate.  ``repeated``
    uses ``a(tau)**n`` with ``tau = x / Lambda`` and ``n = dt / tau`` and
    reads the rate off it with the log definition.
    """
    _check_gamma(params, scaling)
    if source == "scaled":
        return amplitude_scaled(dt, scaling), effective_rate_scaled(scaling)
    if source == "repeated":
        lam = params.sdf.lam
        tau = scaling.x / lam
        n = int(round(dt / tau))
        if n < 1 or abs(n * tau - dt) > 1e-9 * dt:
            raise ConfigError(f"dt={dt!r} is not a multiple of tau={tau!r}")
        abar = survival_repeated(tau, n, lam, params.gamma, scaling.c * lam)
        return abar, effective_rate_empirical(abar, dt, "log")
    raise ConfigError(f"unknown amplitude source {source!r}")


# -- superoperators -----------------------------------------------------------


def _lindblad_parts(p, q, cr, ci, delta, rabi, rate):
    dp = -2.0 * rabi * ci - rate * p
    dq = -dp
    dcr = delta * ci - 0.5 * rate * cr
    dci = -delta * cr - rabi * (q - p) - 0.5 * rate * ci
    return dp, dq, dcr, dci


def _measurement_parts(p, q, cr, ci, cos_phi, sin_phi):
    r = cos_phi * cr + sin_phi * ci
    hp = -2.0 * r * p
    hq = 2.0 * r - 2.0 * r * q
    hcr = cos_phi * p - 2.0 * r * cr
    hci = sin_phi * p - 2.0 * r * ci
    return hp, hq, hcr, hci


def _to_matrix(p, q, cr, ci) -> np.ndarray:
    c = complex(cr, ci)
    return np.array([[p, c], [c.conjugate(), q]], dtype=complex)


def _parts(rho) -> tuple[float, float, float, float]:
    m = as_matrix(rho)
    return m[0, 0].real, m[1, 1].real, m[0, 1].real, m[0, 1].imag


def dissipator(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    """``D[sigma_-] rho = s rho s^+ - {s^+ s, rho} / 2``."""
    return lindblad_rhs(rho, DriveHamiltonian(), 1.0)


def measurement_superop(rho: DensityMatrix | np.ndarray, phi: float) -> np.ndarray:
    """``H[L] rho = L rho + rho L^+ - <L + L^+> rho`` with ``L = exp(-i phi) sigma_-``."""
    return _to_matrix(*_measurement_parts(*_parts(rho), math.cos(phi), math.sin(phi)))


def lindblad_rhs(rho: DensityMatrix | np.ndarray, h_s: DriveHamiltonian, rate: float) -> np.ndarray:
    """``-i [H_S, rho] + rate D[sigma_-] rho``."""
    return _to_matrix(*_lindblad_parts(*_parts(rho), h_s.delta_eg, h_s.rabi, rate))


def _step_guard(dt: float, *scales: float) -> None:
    worst = dt * max(abs(s) for s in scales)
    if worst > STEP_GUARD:
        raise StepSizeError(f"dt * max(rate, drive) = {worst!r} exceeds {STEP_GUARD}; reduce dt")


# -- deterministic master equation --------------------------------------------


def master_evolve(rho0: DensityMatrix, h_s: DriveHamiltonian, rate: float, t_final: float,
                  dt: float) -> TrajectoryRecord:
    """Classical RK4 integration of the Lindblad equation; states at every step."""
    _step_guard(dt, h_s.rabi, h_s.delta_eg, rate)
    n = _check_steps(t_final, dt)
    y = np.array(_parts(rho0))
    out = np.empty((n + 1, 4))
    out[0] = y
    args = (h_s.delta_eg, h_s.rabi, rate)

    def f(v):
        return np.array(_lindblad_parts(*v, *args))

    for k in range(n):
        k1 = f(y)
        k2 = f(y + 0.5 * dt * k1)
        k3 = f(y + 0.5 * dt * k2)
        k4 = f(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = y
    states = np.empty((n + 1, 2, 2), dtype=complex)
    states[:, 0, 0] = out[:, 0]
    states[:, 1, 1] = out[:, 1]
    states[:, 0, 1] = out[:, 2] + 1j * out[:, 3]
    states[:, 1, 0] = out[:, 2] - 1j * out[:, 3]
    return TrajectoryRecord("master", dt * np.arange(n + 1), states, np.empty(0))


# -- MCWF ---------------------------------------------------------------------


class _MCWFStepper:
    """Constants for the jump/no-jump update of a batch of pure states."""

    def __init__(self, h_s: DriveHamiltonian, rate: float, abar: complex, dt: float):
        if rate < 0:
            raise ConfigError(f"effective rate must be nonnegative, got {rate!r}")
        self.rate_dt = rate * dt
        if self.rate_dt >= 1.0:
            raise StepSizeError(f"click probability bound rate*dt = {self.rate_dt!r} >= 1")
        _step_guard(dt, rate)
        half = h_s.propagator(0.5 * dt)
        self.u = [(half[i, j].real, half[i, j].imag) for i in range(2) for j in range(2)]
        self.abar = (complex(abar).real, complex(abar).imag)

    def advance(self, ar, ai, br, bi, draws):
        """Return the updated amplitudes (as four real arrays) and the jump mask."""
        p_exc = ar * ar + ai * ai
        jumped = draws < p_exc * self.rate_dt

        (u00r, u00i), (u01r, u01i), (u10r, u10i), (u11r, u11i) = self.u
        # half drive
        xr = u00r * ar - u00i * ai + u01r * br - u01i * bi
        xi = u00r * ai + u00i * ar + u01r * bi + u01i * br
        yr = u10r * ar - u10i * ai + u11r * br - u11i * bi
        yi = u10r * ai + u10i * ar + u11r * bi + u11i * br
        # decay diag(abar, 1)
        gr, gi = self.abar
        xr, xi = gr * xr - gi * xi, gr * xi + gi * xr
        # half drive
        nar = u00r * xr - u00i * xi + u01r * yr - u01i * yi
        nai = u00r * xi + u00i * xr + u01r * yi + u01i * yr
        nbr = u10r * xr - u10i * xi + u11r * yr - u11i * yi
        nbi = u10r * xi + u10i * xr + u11r * yi + u11i * yr
        norm = np.sqrt(nar * nar + nai * nai + nbr * nbr + nbi * nbi)
        nar, nai, nbr, nbi = nar / norm, nai / norm, nbr / norm, nbi / norm

        if np.any(jumped):
            # sigma_- |psi> / ||.|| = (alpha / |alpha|) |g>
            amp = np.sqrt(p_exc)
            safe = np.where(jumped, amp, 1.0)
            nar = np.where(jumped, 0.0, nar)
            nai = np.where(jumped, 0.0, nai)
            nbr = np.where(jumped, ar / safe, nbr)
            nbi = np.where(jumped, ai / safe, nbi)
        return nar, nai, nbr, nbi, jumped


def mcwf_step(state: PureState, schedule, rate: float, abar: complex, h_s: DriveHamiltonian,
              u: float) -> tuple[PureState, bool]:
    """One coarse step ``dt = n tau`` of the jump unraveling.

    A photon is registered when ``u < |alpha|^2 rate dt``; the state then
    becomes ``sigma_- |psi>`` normalized.  Otherwise the state is propagated
    by ``exp(-i H_S dt/2) diag(abar, 1) exp(-i H_S dt/2)`` and renormalized.
    """
    stepper = _MCWFStepper(h_s, rate, abar, schedule.dt)
    v = state.vector
    ar, ai, br, bi, jumped = stepper.advance(
        np.array([v[0].real]), np.array([v[0].imag]), np.array([v[1].real]), np.array([v[1].imag]),
        np.array([u], dtype=float),
    )
    return PureState(complex(ar[0], ai[0]), complex(br[0], bi[0])), bool(jumped[0])


def _run_mcwf_batch(stepper: _MCWFStepper, initial: PureState, draws: np.ndarray,
                    record_steps: np.ndarray | None = None):
    """Step a batch; ``draws`` has shape ``(batch, steps)``.

    Returns amplitudes at ``record_steps`` (all steps when None), shape
    ``(batch, len(record_steps), 2)``, and the jump flags ``(batch, steps)``.
    """
    batch, steps = draws.shape
    if record_steps is None:
        record_steps = np.arange(steps + 1)
    slot = np.full(steps + 1, -1)
    slot[record_steps] = np.arange(len(record_steps))
    out = np.empty((batch, len(record_steps), 2), dtype=complex)
    jumps = np.zeros((batch, steps), dtype=bool)
    ar = np.full(batch, initial.alpha.real)
    ai = np.full(batch, initial.alpha.imag)
    br = np.full(batch, initial.beta.real)
    bi = np.full(batch, initial.beta.imag)
    if slot[0] >= 0:
        out[:, slot[0], 0] = ar + 1j * ai
        out[:, slot[0], 1] = br + 1j * bi
    for k in range(steps):
        ar, ai, br, bi, jumps[:, k] = stepper.advance(ar, ai, br, bi, draws[:, k])
        if slot[k + 1] >= 0:
            out[:, slot[k + 1], 0] = ar + 1j * ai
            out[:, slot[k + 1], 1] = br + 1j * bi
    return out, jumps


def mcwf_trajectory(initial: PureState, params: SystemParams, scaling: ScalingParams, t_final: float,
                    dt: float, seed: int, index: int = 0, source: str = "scaled") -> TrajectoryRecord:
    """Single jump trajectory driven by the stream ``trajectory_rng(seed, index)``."""
    n = _check_steps(t_final, dt)
    abar, rate = coarse_step(params, scaling, dt, source)
    stepper = _MCWFStepper(drive_hamiltonian(params), rate, abar, dt)
    draws = trajectory_rng(seed, index).random(n)
    states, jumps = _run_mcwf_batch(stepper, initial, draws[None, :])
    return TrajectoryRecord("mcwf", dt * np.arange(n + 1), states[0], jumps[0], seed=seed, index=index,
                            meta={"rate": rate, "abar": abar})


# -- homodyne -----------------------------------------------------------------


class _HomodyneStepper:
    """Euler-Maruyama update of a batch of density matrices (Ito convention)."""

    def __init__(self, h_s: DriveHamiltonian, rate: float, config: HomodyneConfig):
        if rate < 0:
            raise ConfigError(f"effective rate must be nonnegative, got {rate!r}")
        _step_guard(config.dt, h_s.rabi, h_s.delta_eg, rate)
        self.args = (h_s.delta_eg, h_s.rabi, rate)
        self.dt = config.dt
        self.sqrt_rate = math.sqrt(rate)
        self.cos_phi = math.cos(config.phi)
        self.sin_phi = math.sin(config.phi)
        self.clamp_radius = 1.0 + 2.0 * CLAMP_TOL

    def advance(self, p, q, cr, ci, dw):
        """Return ``(p, q, cr, ci, current, clamped)`` after one step."""
        dt = self.dt
        s = self.sqrt_rate
        current = s * (self.cos_phi * cr + self.sin_phi * ci) + dw / dt
        dp, dq, dcr, dci = _lindblad_parts(p, q, cr, ci, *self.args)
        hp, hq, hcr, hci = _measurement_parts(p, q, cr, ci, self.cos_phi, self.sin_phi)
        sdw = s * dw
        p = p + dp * dt + hp * sdw
        q = q + dq * dt + hq * sdw
        cr = cr + dcr * dt + hcr * sdw
        ci = ci + dci * dt + hci * sdw
        trace = p + q
        p, q, cr, ci = p / trace, q / trace, cr / trace, ci / trace
        # min eigenvalue < -CLAMP_TOL  <=>  Bloch radius > 1 + 2 CLAMP_TOL at unit trace
        rz = p - q
        radius = np.sqrt(rz * rz + 4.0 * (cr * cr + ci * ci))
        clamped = radius > self.clamp_radius
        if np.any(clamped):
            scale = np.where(clamped, radius, 1.0)
            p = np.where(clamped, 0.5 + 0.5 * rz / scale, p)
            q = np.where(clamped, 0.5 - 0.5 * rz / scale, q)
            cr = cr / scale
            ci = ci / scale
        return p, q, cr, ci, current, clamped


def homodyne_step(rho: DensityMatrix, h_s: DriveHamiltonian, rate: float, config: HomodyneConfig,
                  dW: float) -> HomodyneUpdate:
    """One Euler-Maruyama step of the diffusive unraveling.

    The state is re-normalized to unit trace after the update, and a
    negative eigenvalue below ``-1e-9`` is removed by projecting onto the
    dominant eigenvector; ``clamped`` reports whether that happened.  The
    current sample uses the state before the step.
    """
    stepper = _HomodyneStepper(h_s, rate, config)
    p, q, cr, ci = (np.array([v]) for v in _parts(rho))
    p, q, cr, ci, current, clamped = stepper.advance(p, q, cr, ci, np.array([dW], dtype=float))
    new = DensityMatrix(p[0], q[0], complex(cr[0], ci[0]))
    return HomodyneUpdate(new, float(current[0]), bool(clamped[0]))


def _run_homodyne_batch(stepper: _HomodyneStepper, initial: DensityMatrix, increments: np.ndarray,
                        record_steps: np.ndarray | None = None, keep_currents: bool = True):
    batch, steps = increments.shape
    if record_steps is None:
        record_steps = np.arange(steps + 1)
    slot = np.full(steps + 1, -1)
    slot[record_steps] = np.arange(len(record_steps))
    out = np.empty((batch, len(record_steps), 4))
    currents = np.empty((batch, steps)) if keep_currents else None
    clamps = np.zeros(batch, dtype=np.int64)
    p0, q0, cr0, ci0 = _parts(initial)
    p, q, cr, ci = (np.full(batch, v) for v in (p0, q0, cr0, ci0))
    if slot[0] >= 0:
        out[:, slot[0]] = np.stack([p, q, cr, ci], axis=-1)
    for k in range(steps):
        p, q, cr, ci, current, clamped = stepper.advance(p, q, cr, ci, increments[:, k])
        clamps += clamped
        if keep_currents:
            currents[:, k] = current
        if slot[k + 1] >= 0:
            out[:, slot[k + 1]] = np.stack([p, q, cr, ci], axis=-1)
    return out, currents, clamps


def _components_to_matrices(c: np.ndarray) -> np.ndarray:
    m = np.empty(c.shape[:-1] + (2, 2), dtype=complex)
    m[..., 0, 0] = c[..., 0]
    m[..., 1, 1] = c[..., 1]
    m[..., 0, 1] = c[..., 2] + 1j * c[..., 3]
    m[..., 1, 0] = c[..., 2] - 1j * c[..., 3]
    return m


def homodyne_increments(rng: np.random.Generator, steps: int, dt: float) -> np.ndarray:
    return math.sqrt(dt) * rng.standard_normal(steps)


def homodyne_trajectory(initial: DensityMatrix, params: SystemParams, scaling: ScalingParams,
                        config: HomodyneConfig, t_final: float, seed: int, index: int = 0,
                        increments: np.ndarray | None = None) -> TrajectoryRecord:
    """Single diffusive trajectory.

    Wiener increments come from ``trajectory_rng(seed, index)`` unless
    ``increments`` is given (an all-zero array gives the noise-free limit).
    """
    n = _check_steps(t_final, config.dt)
    _check_gamma(params, scaling)
    stepper = _HomodyneStepper(drive_hamiltonian(params), effective_rate_scaled(scaling), config)
    if increments is None:
        increments = homodyne_increments(trajectory_rng(seed, index), n, config.dt)
    increments = np.asarray(increments, dtype=float)
    if increments.shape != (n,):
        raise ConfigError(f"expected {n} increments, got shape {increments.shape}")
    comps, currents, clamps = _run_homodyne_batch(stepper, initial, increments[None, :])
    return TrajectoryRecord("homodyne", config.dt * np.arange(n + 1), _components_to_matrices(comps[0]),
                            currents[0], seed=seed, index=index, clamp_count=int(clamps[0]))
