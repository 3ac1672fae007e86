"""Command-line front end: ``zenotraj {amplitude,rate,traj,ensemble,zeno}``.

Each subcommand writes one CSV file (stdout unless ``--out``).  Exit
codes: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, read_config
from .csvio import record_rows, render
from .dynamics import HomodyneConfig, homodyne_trajectory, mcwf_trajectory
from .ensemble import EnsembleConfig, compare_series, master_reference, run_ensemble
from .errors import ConfigError, DomainError, NumericalError
from .kernel import (
    ZenoParams,
    amplitude_lorentzian,
    amplitude_scaled,
    effective_rate_empirical,
    effective_rate_scaled,
    memory_kernel,
    monitored_amplitude,
    volterra_amplitude,
    zeno_sequence,
)
from .states import fidelity

SOLVERS = ("analytic", "volterra", "scaled", "repeated")


def _grid(t_final: float, dt: float) -> np.ndarray:
    n = int(round(t_final / dt))
    if n < 0 or abs(n * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise ConfigError(f"t_final={t_final!r} is not a multiple of the step {dt!r}")
    return dt * np.arange(n + 1)


def _header(run: RunConfig, summary: list[str]) -> list[str]:
    return [f"zenotraj {__version__} {run.command}", *run.echo(), *(f"summary: {s}" for s in summary)]


def cmd_amplitude(run: RunConfig, workers: int = 1) -> str:
    """Amplitude curves; ``analytic``/``volterra`` are unmonitored, ``scaled``/``repeated`` per x."""
    t = _grid(run["dynamics.t_final"], run["output.dt"])
    choice = run["output.solver"]
    solvers = SOLVERS if choice == "all" else (choice,)
    lam, gamma, e = run.lam, run.gamma, run.e
    curves: list[tuple[str, float | None, np.ndarray]] = []
    if "analytic" in solvers:
        curves.append(("analytic", None, amplitude_lorentzian(t, lam, gamma, e) * np.ones_like(t)))
    if "volterra" in solvers:
        params = run.system_params()
        if t.size == 1:
            values = np.ones(1, dtype=complex)
        else:
            h = run["volterra.h"]
            stride = int(round(run["output.dt"] / h))
            kernel = memory_kernel(params.sdf, params.e_g, h * np.arange(stride * (t.size - 1) + 1))
            series = volterra_amplitude(kernel, params.e_e, t)
            # back to the frame rotating at E_e, where the closed form lives
            values = series.values * np.exp(1j * params.e_e * t)
        curves.append(("volterra", None, values))
    for i, x in enumerate(run.x_values):
        if "scaled" in solvers:
            curves.append(("scaled", x, amplitude_scaled(t, run.scaling(i)) * np.ones_like(t)))
        if "repeated" in solvers:
            tau = run.tau_values[i]
            curves.append(("repeated", x, monitored_amplitude(t, tau, lam, gamma, e)))

    summary = []
    by_name = {name: v for name, x, v in curves if x is None}
    if "analytic" in by_name and "volterra" in by_name:
        summary.append(f"max|analytic - volterra| = {float(np.max(np.abs(by_name['analytic'] - by_name['volterra'])))!r}")
    for x in run.x_values:
        pair = [v for name, xx, v in curves if xx == x and name in ("scaled", "repeated")]
        if len(pair) == 2:
            gap = float(np.max(np.abs(np.abs(pair[0]) - np.abs(pair[1]))))
            summary.append(f"x = {x!r}: max||scaled| - |repeated|| = {gap!r}")

    rows = []
    for name, x, values in curves:
        for tk, v in zip(t, values):
            rows.append((name, x, tk, v.real, v.imag, abs(v)))
    return render(_header(run, summary), ["solver", "x", "t", "re_a", "im_a", "abs_a"], rows)


def cmd_rate(run: RunConfig, workers: int = 1) -> str:
    """Effective rate over Gamma: scaling formula and both coarse-step estimates."""
    dt = run["rate.dt"]
    rows = []
    for i, x in enumerate(run.x_values):
        scaling = run.scaling(i)
        abar = amplitude_scaled(dt, scaling)
        rows.append((
            x,
            run.c,
            effective_rate_scaled(scaling) / run.gamma,
            effective_rate_empirical(abar, dt, "linear") / run.gamma,
            effective_rate_empirical(abar, dt, "log") / run.gamma,
        ))
    return render(_header(run, []), ["x", "c", "rate_scaled", "rate_linear", "rate_log"], rows)


def cmd_traj(run: RunConfig, workers: int = 1) -> str:
    params = run.system_params()
    scaling = run.scaling()
    initial = run.initial_state()
    seed, index = run["ensemble.seed"], run["ensemble.index"]
    t_final, dt = run["dynamics.t_final"], run["dynamics.dt"]
    if run["dynamics.kind"] == "mcwf":
        record = mcwf_trajectory(initial, params, scaling, t_final, dt, seed, index, run["dynamics.source"])
        summary = [f"jumps = {int(record.events.sum())}"]
    else:
        config = HomodyneConfig(run["dynamics.phi"], dt)
        record = homodyne_trajectory(initial.projector(), params, scaling, config, t_final, seed, index)
        summary = [f"clamps = {record.clamp_count}"]
    event = "jump" if record.kind == "mcwf" else "current"
    return render(_header(run, summary), ["t", "rho_ee", event], record_rows(record))


def cmd_ensemble(run: RunConfig, workers: int = 1) -> str:
    params = run.system_params()
    scaling = run.scaling()
    initial = run.initial_state()
    t_final, samples = run["dynamics.t_final"], run["ensemble.samples"]
    config = EnsembleConfig(
        n_traj=run["ensemble.n_traj"],
        kind=run["dynamics.kind"],
        master_seed=run["ensemble.seed"],
        sample_times=t_final * np.arange(1, samples + 1) / samples,
        dt=run["dynamics.dt"],
        phi=run["dynamics.phi"],
        t_final=t_final,
    )
    result = run_ensemble(config, params, scaling, initial, workers=workers)
    master = master_reference(config, params, scaling, initial, dt=run["ensemble.master_dt"])
    threshold = run["ensemble.threshold"]
    if result.degenerate:
        z = np.full(master.shape, np.nan)
        summary = [f"result: DEGENERATE n_traj = 1, standard error undefined"]
    else:
        report = compare_series(result.rho_ee, master, result.rho_ee_stderr, threshold)
        z = report.z
        verdict = "PASS" if report.passed else "FAIL"
        summary = [f"result: {verdict} max_z = {report.max_z!r} at t = {float(config.sample_times[report.argmax])!r}"
                   f" (threshold {threshold!r})"]
    summary.append(f"clamps = {result.clamp_count}")
    rows = zip(config.sample_times, result.rho_ee, result.rho_ee_stderr, master, z)
    return render(_header(run, summary), ["t", "mean_rho_ee", "stderr", "master_rho_ee", "z"], rows)


def cmd_zeno(run: RunConfig, workers: int = 1) -> str:
    """Fidelity with the initial state after ``n = t / tau`` null results."""
    initial = run.initial_state()
    t = run["zeno.t"]
    rows = []
    for tau in run["zeno.tau"]:
        n = int(round(t / tau))
        state = zeno_sequence(ZenoParams(run["zeno.k"], tau, n), initial.alpha, initial.beta)
        f = fidelity(initial, state)
        rows.append((tau, n, f, 1.0 - f, (1.0 - run["zeno.k"] * tau**2) ** n))
    return render(_header(run, []), ["tau", "n", "fidelity", "infidelity", "excited_factor"], rows)


COMMANDS = {
    "amplitude": cmd_amplitude,
    "rate": cmd_rate,
    "traj": cmd_traj,
    "ensemble": cmd_ensemble,
    "zeno": cmd_zeno,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zenotraj", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"zenotraj {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="key = value file, or a previous output file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override one key")
        p.add_argument("--seed", type=int)
        p.add_argument("--out", type=Path)
        p.add_argument("--solver", choices=["analytic", "scaled", "volterra", "repeated", "all"])
        p.add_argument("--kind", choices=["mcwf", "homodyne"])
        p.add_argument("--workers", type=int, default=1, help="threads for ensembles (does not change results)")
    return parser


def run_command(args: argparse.Namespace) -> str:
    file_values = read_config(args.config.read_text(), str(args.config)) if args.config else None
    flags = {"ensemble.seed": args.seed, "output.solver": args.solver, "dynamics.kind": args.kind}
    run = RunConfig.build(args.command, file_values, args.set, flags)
    return COMMANDS[args.command](run, workers=args.workers)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            text = run_command(args)
    except (ConfigError, DomainError, OSError) as exc:
        print(f"zenotraj: configuration error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, FloatingPointError) as exc:
        print(f"zenotraj: numerical failure: {exc}", file=sys.stderr)
        return 2
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
