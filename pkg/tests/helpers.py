"""Sampling routines shared by the dynamics and acceptance tests."""

import numpy as np

from zenotraj.dynamics import DriveHamiltonian, _HomodyneStepper, _MCWFStepper
from zenotraj.kernel import ScalingParams, amplitude_scaled, effective_rate_scaled


def first_jump_times(n, x, dt, seed, t_max=None):
    """First-jump times of ``n`` undriven trajectories started in ``|e>``.

    Runs the package's batched stepper, dropping trajectories once they
    have jumped.  Returns the jump times and the effective rate.
    """
    scaling = ScalingParams(x=x)
    rate = effective_rate_scaled(scaling)
    stepper = _MCWFStepper(DriveHamiltonian(), rate, amplitude_scaled(dt, scaling), dt)
    rng = np.random.default_rng(seed)
    t_max = 40.0 / rate if t_max is None else t_max
    active = np.arange(n)
    ar, ai, br, bi = np.ones(n), np.zeros(n), np.zeros(n), np.zeros(n)
    times = np.full(n, np.inf)
    k = 0
    while active.size and k * dt < t_max:
        k += 1
        ar, ai, br, bi, jumped = stepper.advance(ar, ai, br, bi, rng.random(active.size))
        times[active[jumped]] = k * dt
        keep = ~jumped
        active, ar, ai, br, bi = active[keep], ar[keep], ai[keep], br[keep], bi[keep]
    return times, rate


def martingale_check(rho, h_s, rate, config, n, seed):
    """Mean and standard error of the one-step change over ``n`` Wiener draws.

    Uses the batched stepper behind ``homodyne_step`` so that ``n = 1e5``
    stays fast; the same state is copied into every slot.
    """
    rng = np.random.default_rng(seed)
    dws = np.sqrt(config.dt) * rng.standard_normal(n)
    stepper = _HomodyneStepper(h_s, rate, config)
    start = (rho.rho_ee, rho.rho_gg, rho.rho_eg.real, rho.rho_eg.imag)
    p, q, cr, ci, _, clamped = stepper.advance(*(np.full(n, v) for v in start), dws)
    changes = np.stack([p, q, cr, ci], axis=1) - np.array(start)
    return changes.mean(axis=0), changes.std(axis=0, ddof=1) / np.sqrt(n), int(clamped.sum())
