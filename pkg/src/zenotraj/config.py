"""Run configuration: a flat file of dotted ``section.key = value`` lines.

Values are resolved in the order command defaults, config file,
``--set`` assignments, dedicated flags (later wins).  Every resolved value
is echoed into the output header as ``#@ key = value`` so that an output
file can itself be passed back as ``--config``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import ConfigError
from .kernel import Lorentzian, ScalingParams, SystemParams
from .states import PureState


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _complex(text: str) -> complex:
    return complex(text.replace(" ", ""))


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        text = text.strip()
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text
    return parse


SCHEMA: dict[str, Callable[[str], Any]] = {
    "physics.gamma": float,
    "physics.d0": float,
    "physics.lambda": float,
    "physics.x": _floats,
    "physics.c": float,
    "physics.tau": _floats,
    "physics.e": float,
    "physics.omega0": float,
    "physics.e_g": float,
    "dynamics.dt": float,
    "dynamics.t_final": float,
    "dynamics.rabi": float,
    "dynamics.delta": float,
    "dynamics.phi": float,
    "dynamics.kind": _choice("mcwf", "homodyne"),
    "dynamics.source": _choice("scaled", "repeated"),
    "initial.alpha": _complex,
    "initial.beta": _complex,
    "ensemble.n_traj": int,
    "ensemble.seed": int,
    "ensemble.index": int,
    "ensemble.samples": int,
    "ensemble.threshold": float,
    "ensemble.master_dt": float,
    "volterra.h": float,
    "output.dt": float,
    "output.solver": _choice("analytic", "scaled", "volterra", "repeated", "all"),
    "rate.dt": float,
    "zeno.k": float,
    "zeno.t": float,
    "zeno.tau": _floats,
}

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_PHYSICS = {"physics.gamma": 1.0, "physics.lambda": 10.0, "physics.omega0": 1000.0}
_DRIVEN = {
    **_PHYSICS,
    "physics.x": [0.2],
    "physics.c": 0.0,
    "dynamics.rabi": 0.1,
    "dynamics.phi": 0.0,
    "dynamics.t_final": 40.0,
    "dynamics.kind": "mcwf",
    "dynamics.source": "scaled",
    "initial.alpha": 1 + 0j,
    "initial.beta": 0j,
    "ensemble.seed": 2017,
}

DEFAULTS: dict[str, dict[str, Any]] = {
    "amplitude": {
        **_PHYSICS,
        "physics.x": [0.2, 1.0, 2.0, 5.0],
        "physics.c": 0.0,
        "dynamics.t_final": 5.0,
        "output.dt": 0.01,
        "output.solver": "all",
        "volterra.h": 1e-3,
    },
    "rate": {
        "physics.gamma": 1.0,
        "physics.lambda": 10.0,
        "physics.x": [1e-3, 1e-2, 0.1, 0.2, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0],
        "physics.c": 0.0,
        "rate.dt": 1e-3,
    },
    "traj": {**_DRIVEN, "ensemble.index": 0},
    "ensemble": {**_DRIVEN, "ensemble.n_traj": 2000, "ensemble.samples": 50, "ensemble.threshold": 3.0},
    "zeno": {
        "zeno.k": 1.0,
        "zeno.t": 1.0,
        "zeno.tau": [0.02, 0.01, 0.005, 0.0025],
        "initial.alpha": _INV_SQRT2 + 0j,
        "initial.beta": _INV_SQRT2 + 0j,
    },
}

# step defaults that depend on the trajectory kind
KIND_DT = {"mcwf": 0.01, "homodyne": 0.0025}

_SCALING_KEYS = ("physics.x", "physics.c")
_EXPLICIT_KEYS = ("physics.tau", "physics.e")


def format_value(value: Any) -> str:
    if isinstance(value, list):
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return repr(value)
    return str(value)


def parse_assignment(text: str, where: str) -> tuple[str, Any]:
    if "=" not in text:
        raise ConfigError(f"{where}: expected 'key = value', got {text.strip()!r}")
    key, raw = (part.strip() for part in text.split("=", 1))
    if key not in SCHEMA:
        raise ConfigError(f"{where}: unknown key {key!r}")
    try:
        return key, SCHEMA[key](raw)
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {key!r}: {raw!r} ({exc})") from None


def read_config(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse a config file, or the ``#@`` header of a previous output file."""
    values: dict[str, Any] = {}
    from_output = any(line.startswith("#@") for line in text.splitlines())
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith("#@"):
            stripped = stripped[2:].strip()
        elif not stripped or stripped.startswith("#") or from_output:
            continue
        key, value = parse_assignment(stripped, f"{source}:{lineno}")
        values[key] = value
    return values


@dataclass
class RunConfig:
    """Resolved configuration for one subcommand."""

    command: str
    values: dict[str, Any]
    user_keys: set[str] = field(default_factory=set)

    @classmethod
    def build(cls, command: str, file_values: dict[str, Any] | None = None,
              assignments: list[str] = (), flags: dict[str, Any] | None = None) -> RunConfig:
        if command not in DEFAULTS:
            raise ConfigError(f"unknown command {command!r}")
        user: dict[str, Any] = dict(file_values or {})
        for i, text in enumerate(assignments, 1):
            key, value = parse_assignment(text, f"--set #{i}")
            user[key] = value
        user.update({k: v for k, v in (flags or {}).items() if v is not None})

        scaling = [k for k in _SCALING_KEYS if k in user]
        explicit = [k for k in _EXPLICIT_KEYS if k in user]
        if scaling and explicit:
            raise ConfigError(f"give either scaling {scaling} or explicit {explicit} parameters, not both")
        if "physics.gamma" in user and "physics.d0" in user:
            raise ConfigError("give either physics.gamma or physics.d0, not both")

        values = dict(DEFAULTS[command])
        if explicit:
            for k in _SCALING_KEYS:
                values.pop(k, None)
            values.setdefault("physics.e", 0.0)
        if "physics.d0" in user:
            values.pop("physics.gamma", None)
        values.update(user)
        if command in ("traj", "ensemble") and "dynamics.dt" not in values:
            values["dynamics.dt"] = KIND_DT[values["dynamics.kind"]]
        if command == "ensemble" and "ensemble.master_dt" not in values:
            values["ensemble.master_dt"] = values["dynamics.dt"]
        if "physics.omega0" in values and "physics.e_g" not in values and command == "amplitude":
            values["physics.e_g"] = -values["physics.omega0"]
        run = cls(command, values, set(user))
        run.validate()
        return run

    def __getitem__(self, key: str) -> Any:
        try:
            return self.values[key]
        except KeyError:
            raise ConfigError(f"{self.command}: missing required key {key!r}") from None

    def validate(self) -> None:
        _ = self.gamma
        if "physics.lambda" in self.values and not self["physics.lambda"] > 0:
            raise ConfigError("physics.lambda must be positive")
        if self.uses_explicit and "physics.lambda" not in self.values:
            raise ConfigError("explicit (tau, e) parameters need physics.lambda")
        if self.command in ("traj", "ensemble"):
            if len(self.x_values) != 1:
                raise ConfigError(f"{self.command} needs a single x (or tau) value")
            self.initial_state()

    # -- derived quantities ---------------------------------------------------

    @property
    def uses_explicit(self) -> bool:
        return "physics.tau" in self.values

    @property
    def gamma(self) -> float:
        if "physics.d0" in self.values:
            return 2.0 * math.pi * self["physics.d0"]
        if "physics.gamma" in self.values:
            gamma = self["physics.gamma"]
            if not gamma > 0:
                raise ConfigError("physics.gamma must be positive")
            return gamma
        return 1.0

    @property
    def d0(self) -> float:
        return self["physics.d0"] if "physics.d0" in self.values else self.gamma / (2.0 * math.pi)

    @property
    def lam(self) -> float:
        return self["physics.lambda"]

    @property
    def x_values(self) -> list[float]:
        if self.uses_explicit:
            return [self.lam * tau for tau in self["physics.tau"]]
        return list(self["physics.x"])

    @property
    def tau_values(self) -> list[float]:
        if self.uses_explicit:
            return list(self["physics.tau"])
        return [x / self.lam for x in self["physics.x"]]

    @property
    def c(self) -> float:
        return self["physics.e"] / self.lam if self.uses_explicit else self["physics.c"]

    @property
    def e(self) -> float:
        return self["physics.e"] if self.uses_explicit else self["physics.c"] * self.lam

    def scaling(self, i: int = 0) -> ScalingParams:
        return ScalingParams(x=self.x_values[i], c=self.c, gamma=self.gamma)

    def system_params(self) -> SystemParams:
        omega0 = self["physics.omega0"]
        e_g = self.values.get("physics.e_g", -omega0)
        # E_e chosen so that (E_e - E_g) - omega0 equals the offset E
        e_e = e_g + omega0 + self.e
        frame = None
        if "dynamics.delta" in self.values:
            frame = (e_e - e_g) - self["dynamics.delta"]
        sdf = Lorentzian(self.d0, omega0, self.lam)
        return SystemParams(e_e=e_e, e_g=e_g, rabi=self.values.get("dynamics.rabi", 0.0), sdf=sdf, frame=frame)

    def initial_state(self) -> PureState:
        try:
            return PureState(self["initial.alpha"], self["initial.beta"])
        except ValueError as exc:
            raise ConfigError(f"initial state: {exc}") from None

    # -- header ---------------------------------------------------------------

    def echo(self) -> list[str]:
        lines = [f"#@ {key} = {format_value(self.values[key])}" for key in sorted(self.values)]
        derived = [f"gamma = {self.gamma!r}", f"d0 = {self.d0!r}"]
        if "physics.lambda" in self.values and ("physics.x" in self.values or self.uses_explicit):
            derived.append(f"lambda = {self.lam!r}")
            derived.append("x = " + ", ".join(repr(v) for v in self.x_values))
            derived.append("tau = " + ", ".join(repr(v) for v in self.tau_values))
            derived.append(f"c = {self.c!r}")
            derived.append(f"e = {self.e!r}")
        return lines + [f"derived: {d}" for d in derived]
