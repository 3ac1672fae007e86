"""Survival amplitudes, memory kernels and effective decay rates.

The excited-state amplitude of a two-level atom coupled to a
single-excitation reservoir obeys, in the time domain,

    i da/dt = E_e a(t) + int_0^t F(t - t') a(t') dt',
    F(s)    = -i int D(w) exp(-i (w + E_g) s) dw.

For a Lorentzian spectral density ``D(w) = D0 L^2 / ((w - w0)^2 + L^2)``
the kernel is ``F(s) = -i (Gamma L / 2) exp(-i (w0 + E_g) s - L s)`` with
``Gamma = 2 pi D0``, and the amplitude has the closed two-pole form
returned by :func:`amplitude_lorentzian`.  That closed form is written in
the frame rotating at ``E_e``; the Volterra solver returns the amplitude
in the lab frame, so ``amplitude_lorentzian(t) = exp(i E_e t) a_volterra(t)``.

Null-result measurements every ``tau`` reset the reservoir memory, so the
amplitude after ``n`` of them is ``a(tau)**n``.  With ``x = L tau`` and
``E = c L`` this collapses onto a function of ``x`` alone
(:func:`amplitude_scaled`), which defines the measurement-dependent rate
returned by :func:`effective_rate_scaled`.

All functions here are pure.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .errors import ConfigError, DomainError, InstabilityError, ResolutionError
from .states import PureState

DEGENERATE_ROOT_TOL = 1e-8
SERIES_CUTOFF = 0.05
INSTABILITY_MARGIN = 0.01


class NegativeFrequencyWarning(UserWarning):
    """The Lorentzian center is not far enough above its width.

    The symmetric Lorentzian model assumes ``Delta_eg > omega0 >> Lambda``;
    otherwise measurement-broadened levels reach negative frequencies,
    where the model is not corrected.
    """


class ZenoValidityWarning(UserWarning):
    """``K tau^2`` is too large for the second-order short-time expansion."""


# -- domain types ------------------------------------------------------------


@dataclass(frozen=True)
class Lorentzian:
    """Lorentzian spectral density with height ``d0``, center ``omega0`` and half-width ``lam``."""

    d0: float
    omega0: float
    lam: float

    def __post_init__(self) -> None:
        if not self.d0 > 0:
            raise ConfigError(f"Lorentzian height must be positive, got {self.d0!r}")
        if not self.lam > 0:
            raise ConfigError(f"Lorentzian width must be positive, got {self.lam!r}")

    @classmethod
    def from_gamma(cls, gamma: float, omega0: float, lam: float) -> Lorentzian:
        return cls(gamma / (2.0 * math.pi), omega0, lam)

    @property
    def gamma(self) -> float:
        """Wide-band decay rate ``2 pi d0``."""
        return 2.0 * math.pi * self.d0

    def __call__(self, omega):
        omega = np.asarray(omega, dtype=float)
        return self.d0 * self.lam**2 / ((omega - self.omega0) ** 2 + self.lam**2)


@dataclass(frozen=True)
class Tabulated:
    """Spectral density sampled on a strictly increasing frequency grid."""

    omega: np.ndarray
    density: np.ndarray

    def __post_init__(self) -> None:
        omega = np.asarray(self.omega, dtype=float)
        density = np.asarray(self.density, dtype=float)
        if omega.ndim != 1 or omega.shape != density.shape:
            raise ConfigError("tabulated spectral density needs matching 1-D omega and density arrays")
        if omega.size < 2:
            raise ConfigError("tabulated spectral density needs at least 2 samples")
        if np.any(np.diff(omega) <= 0):
            raise ConfigError("tabulated frequency grid must be strictly increasing")
        if np.any(density < 0) or not np.all(np.isfinite(density)):
            raise ConfigError("tabulated spectral density must be finite and nonnegative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "density", density)


SpectralDensity = Union[Lorentzian, Tabulated]


@dataclass(frozen=True)
class SystemParams:
    """Atomic levels, drive strength and the Lorentzian environment.

    ``delta_eg`` and ``detuning_e`` are derived, so the identities
    ``delta_eg = e_e - e_g`` and ``detuning_e = delta_eg - omega0`` hold
    exactly.  ``frame`` is the rotating-frame (drive) frequency used for
    the drive Hamiltonian; None means the reservoir center ``omega0``.
    """

    e_e: float
    e_g: float
    rabi: float
    sdf: Lorentzian
    frame: float | None = None

    def __post_init__(self) -> None:
        if self.sdf.omega0 < 5.0 * self.sdf.lam:
            warnings.warn(
                f"omega0={self.sdf.omega0!r} < 5*Lambda={5.0 * self.sdf.lam!r}: "
                "negative-frequency corrections are not modeled",
                NegativeFrequencyWarning,
                stacklevel=2,
            )

    @classmethod
    def resonant(cls, gamma: float, lam: float, rabi: float = 0.0, detuning: float = 0.0,
                 omega0: float = 1000.0, frame: float | None = None) -> SystemParams:
        """Parameters with ``E_g = -omega0`` so that ``E_e`` equals the offset ``detuning``."""
        return cls(e_e=detuning, e_g=-omega0, rabi=rabi, sdf=Lorentzian.from_gamma(gamma, omega0, lam),
                   frame=frame)

    @property
    def delta_eg(self) -> float:
        return self.e_e - self.e_g

    @property
    def detuning_e(self) -> float:
        return self.delta_eg - self.sdf.omega0

    @property
    def gamma(self) -> float:
        return self.sdf.gamma

    def scaling(self, tau: float) -> ScalingParams:
        return ScalingParams.from_explicit(self.sdf.lam, tau, self.detuning_e, self.gamma)


@dataclass(frozen=True)
class ScalingParams:
    """Scaling variables ``x = Lambda tau`` and ``c = E / Lambda`` with rate ``gamma``."""

    x: float
    c: float = 0.0
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if not self.x > 0:
            raise ConfigError(f"scaling variable x must be positive, got {self.x!r}")
        if not self.gamma > 0:
            raise ConfigError(f"gamma must be positive, got {self.gamma!r}")

    @classmethod
    def from_explicit(cls, lam: float, tau: float, e: float, gamma: float) -> ScalingParams:
        return cls(x=lam * tau, c=e / lam, gamma=gamma)

    @property
    def kappa(self) -> complex:
        return complex(1.0, -self.c)


@dataclass(frozen=True)
class MeasurementSchedule:
    """``n`` null-result measurements spaced ``tau`` apart within one coarse step."""

    tau: float
    n: int = 1

    def __post_init__(self) -> None:
        if not self.tau > 0:
            raise ConfigError(f"measurement interval must be positive, got {self.tau!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigError(f"measurement count must be a positive integer, got {self.n!r}")

    @property
    def dt(self) -> float:
        return self.n * self.tau


@dataclass(frozen=True)
class MemoryKernel:
    """Kernel values ``F(k h)`` on a uniform grid starting at zero."""

    h: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise ConfigError(f"kernel spacing must be positive, got {self.h!r}")
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size == 0 or not np.isfinite(values[0]):
            raise ConfigError("kernel values must be a non-empty 1-D array with finite F(0)")
        object.__setattr__(self, "values", values)

    @property
    def grid(self) -> np.ndarray:
        return self.h * np.arange(self.values.size)


@dataclass(frozen=True)
class AmplitudeSeries:
    """Amplitude samples ``a(k h)`` with ``a(0) = 1``."""

    h: float
    values: np.ndarray = field(repr=False)

    @property
    def grid(self) -> np.ndarray:
        return self.h * np.arange(self.values.size)


@dataclass(frozen=True)
class ZenoParams:
    k_coupling: float
    tau: float
    n: int

    def __post_init__(self) -> None:
        if self.k_coupling < 0:
            raise ConfigError(f"coupling sum K must be nonnegative, got {self.k_coupling!r}")
        if not self.tau > 0:
            raise ConfigError(f"tau must be positive, got {self.tau!r}")
        if int(self.n) != self.n or self.n < 0:
            raise ConfigError(f"measurement count must be a nonnegative integer, got {self.n!r}")


# -- closed-form amplitudes --------------------------------------------------


def lorentzian_roots(lam: float, gamma: float, e: float) -> tuple[complex, complex]:
    """Decay exponents ``(A+, A-)`` of the two-pole amplitude (principal square root)."""
    k = complex(lam, -e)
    root = np.sqrt(k * k - 2.0 * gamma * lam)
    return 0.5 * (k + root), 0.5 * (k - root)


def two_pole_amplitude(t, a_plus: complex, a_minus: complex):
    """``(A+ exp(-A- t) - A- exp(-A+ t)) / (A+ - A-)``, with the confluent limit."""
    t = np.asarray(t, dtype=float)
    gap = a_plus - a_minus
    if abs(gap) < DEGENERATE_ROOT_TOL * max(abs(a_plus), abs(a_minus)):
        mid = 0.5 * (a_plus + a_minus)
        out = (1.0 + mid * t) * np.exp(-mid * t)
    else:
        out = (a_plus * np.exp(-a_minus * t) - a_minus * np.exp(-a_plus * t)) / gap
    # the difference quotient can round to 1 - eps at t = 0
    return np.where(t == 0, 1.0 + 0j, out)


def amplitude_lorentzian(t, lam: float, gamma: float, e: float = 0.0):
    """Survival amplitude ``a(t)`` of the excited level for a Lorentzian environment.

    Parameters
    ----------
    t : float or array_like
        Times, ``t >= 0``.
    lam : float
        Lorentzian half-width.
    gamma : float
        Wide-band decay rate ``2 pi D0``.
    e : float
        Energy offset ``E = Delta_eg - omega0``.

    Returns
    -------
    complex or ndarray
        ``a(t)``, equal to 1 at ``t = 0``; written in the frame rotating at ``E_e``.
    """
    if not lam > 0 or not gamma > 0:
        raise DomainError("lam and gamma must be positive")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("amplitude requested at negative time")
    a_plus, a_minus = lorentzian_roots(lam, gamma, e)
    out = two_pole_amplitude(t_arr, a_plus, a_minus)
    return complex(out) if out.ndim == 0 else out


def survival_repeated(tau: float, n, lam: float, gamma: float, e: float = 0.0):
    """Amplitude ``a(tau)**n`` after ``n`` null-result measurements spaced ``tau`` apart.

    The power is taken as ``exp(n log a(tau))``.  For integer ``n`` the
    result does not depend on the branch of the logarithm.
    """
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    n_arr = np.asarray(n)
    if np.any(n_arr < 0) or np.any(n_arr != np.floor(n_arr)):
        raise DomainError("measurement count must be a nonnegative integer")
    a_tau = amplitude_lorentzian(tau, lam, gamma, e)
    if a_tau == 0:
        out = np.where(n_arr == 0, 1.0 + 0j, 0.0 + 0j)
    else:
        out = np.exp(n_arr * np.log(a_tau))
    return complex(out) if np.ndim(out) == 0 else out


def monitored_amplitude(t, tau: float, lam: float, gamma: float, e: float = 0.0):
    """Amplitude at arbitrary ``t`` with null results at ``tau, 2 tau, ...``.

    Equals :func:`survival_repeated` at ``t = n tau`` and follows the free
    two-pole evolution since the last measurement in between.
    """
    t = np.asarray(t, dtype=float)
    n = np.floor(t / tau + 1e-9)
    rest = np.clip(t - n * tau, 0.0, None)
    return survival_repeated(tau, n, lam, gamma, e) * amplitude_lorentzian(rest, lam, gamma, e)


def _bracket(y):
    """``1 - (1 - exp(-y)) / y``, switching to its Taylor series near ``y = 0``."""
    y = np.asarray(y, dtype=complex)
    out = np.empty_like(y)
    small = np.abs(y) < SERIES_CUTOFF
    if np.any(small):
        ys = y[small]
        # sum_{k>=1} (-1)^(k+1) y^k / (k+1)!, Horner form through k = 10
        acc = np.zeros_like(ys)
        for k in range(10, 0, -1):
            acc = (-1) ** (k + 1) / math.factorial(k + 1) + ys * acc
        out[small] = ys * acc
    big = ~small
    if np.any(big):
        yb = y[big]
        out[big] = 1.0 + np.expm1(-yb) / yb
    return out


def _decay_exponent(scaling: ScalingParams) -> complex:
    """``[1/kappa - (1 - exp(-kappa x)) / (kappa^2 x)]``, the per-unit-``Gamma t/2`` exponent."""
    kappa = scaling.kappa
    return complex(_bracket(kappa * scaling.x)) / kappa


def amplitude_scaled(t, scaling: ScalingParams):
    """Scaling-limit survival amplitude ``exp(-bracket * Gamma t / 2)``."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("amplitude requested at negative time")
    out = np.exp(-_decay_exponent(scaling) * scaling.gamma * t_arr / 2.0)
    return complex(out) if out.ndim == 0 else out


def effective_rate_scaled(scaling: ScalingParams) -> float:
    """Effective decay rate ``Gamma Re{[1 - (1 - exp(-kappa x)) / (kappa x)] / kappa}``.

    Interpolates between 0 (``x -> 0``, Zeno freezing) and ``Gamma``
    (``x -> inf`` at ``c = 0``, the Markovian limit).
    """
    return scaling.gamma * _decay_exponent(scaling).real


def effective_rate_empirical(abar: complex, dt: float, flavor: Literal["linear", "log"] = "log") -> float:
    """Decay rate read off a coarse-step survival amplitude.

    ``linear`` gives ``(1 - |abar|^2) / dt`` and ``log`` gives
    ``-ln(|abar|^2) / dt``; both agree to first order in ``dt``.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    p = abs(abar) ** 2
    if p > 1.0 + 1e-12:
        raise DomainError(f"|abar| = {abs(abar)!r} exceeds 1")
    if flavor == "linear":
        return (1.0 - p) / dt
    if flavor == "log":
        if p == 0.0:
            raise DomainError("log-flavor rate is undefined for abar = 0")
        return -math.log(p) / dt
    raise ValueError(f"unknown flavor {flavor!r}")


def null_probability(abar: complex, alpha0: complex, beta0: complex) -> float:
    """Joint probability ``|abar alpha0|^2 + |beta0|^2`` of all-null measurement results."""
    norm2 = abs(alpha0) ** 2 + abs(beta0) ** 2
    if abs(norm2 - 1.0) > 1e-10:
        raise DomainError(f"initial state not normalized: {norm2!r}")
    return abs(abar * alpha0) ** 2 + abs(beta0) ** 2


# -- memory kernel and Volterra solver ---------------------------------------


def _uniform_spacing(grid: np.ndarray, what: str) -> float:
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ConfigError(f"{what} must be a 1-D grid with at least 2 points")
    if grid[0] != 0.0:
        raise ConfigError(f"{what} must start at 0")
    steps = np.diff(grid)
    h = float(steps.mean())
    if not h > 0 or np.max(np.abs(steps - h)) > 1e-9 * max(h, 1.0) * grid.size:
        raise ConfigError(f"{what} must be uniform and increasing")
    return (grid[-1] - grid[0]) / (grid.size - 1)


def memory_kernel(sdf: SpectralDensity, e_g: float, grid, chunk: int = 256) -> MemoryKernel:
    """Time-domain kernel ``F(s) = -i int D(w) exp(-i (w + e_g) s) dw`` on ``grid``.

    Lorentzian densities use the closed form; tabulated ones are integrated
    with the trapezoidal rule, which requires ``max(dw) * s_max < pi/4``.
    """
    grid = np.asarray(grid, dtype=float)
    h = _uniform_spacing(grid, "kernel grid")
    s = h * np.arange(grid.size)
    if isinstance(sdf, Lorentzian):
        phase = np.exp(-1j * (sdf.omega0 + e_g) * s)
        values = -0.5j * sdf.gamma * sdf.lam * phase * np.exp(-sdf.lam * s)
        return MemoryKernel(h, values)
    if isinstance(sdf, Tabulated):
        spacing = float(np.max(np.diff(sdf.omega)))
        if spacing * s[-1] >= math.pi / 4:
            raise ResolutionError(
                f"frequency spacing {spacing!r} cannot resolve exp(-i w s) up to s={s[-1]!r}; "
                f"need spacing < {math.pi / 4 / s[-1]!r}"
            )
        values = np.empty(s.size, dtype=complex)
        for start in range(0, s.size, chunk):
            block = s[start:start + chunk, None]
            integrand = sdf.density[None, :] * np.exp(-1j * (sdf.omega[None, :] + e_g) * block)
            values[start:start + chunk] = -1j * np.trapezoid(integrand, sdf.omega, axis=1)
        return MemoryKernel(h, values)
    raise TypeError(f"unsupported spectral density {type(sdf).__name__}")


def volterra_amplitude(kernel: MemoryKernel, e_e: float, grid) -> AmplitudeSeries:
    """Integrate ``i a' = e_e a + int_0^t F(t-t') a(t') dt'`` from ``a(0) = 1``.

    Trapezoidal rule in time and in the history integral; the corrector is
    linear in the new value, so it is solved exactly at each step.  The
    kernel spacing must divide the output spacing.  Global error is
    O(h^2).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 1:
        if grid[0] != 0.0:
            raise ConfigError("output grid must start at 0")
        return AmplitudeSeries(kernel.h, np.ones(1, dtype=complex))
    out_h = _uniform_spacing(grid, "output grid")
    ratio = out_h / kernel.h
    stride = int(round(ratio))
    if stride < 1 or abs(stride - ratio) > 1e-9 * ratio:
        raise ConfigError(f"kernel spacing {kernel.h!r} does not evenly divide output spacing {out_h!r}")
    n_steps = stride * (grid.size - 1)
    if kernel.values.size < n_steps + 1:
        raise ConfigError(f"kernel covers {kernel.values.size} points, integration needs {n_steps + 1}")

    h = kernel.h
    F = kernel.values
    a = np.empty(n_steps + 1, dtype=complex)
    a[0] = 1.0
    f_prev = -1j * e_e * a[0]
    denom = 1.0 + 0.5j * h * (e_e + 0.5 * h * F[0])
    for n in range(n_steps):
        # history sum without the (unknown) endpoint term F(0) a_{n+1}
        hist = 0.5 * F[n + 1] * a[0]
        if n:
            hist += np.dot(F[n:0:-1], a[1:n + 1])
        s_known = h * hist
        a_next = (a[n] + 0.5 * h * f_prev - 0.5j * h * s_known) / denom
        if not abs(a_next) <= 1.0 + INSTABILITY_MARGIN:
            raise InstabilityError(
                f"|a| = {abs(a_next)!r} > 1 + {INSTABILITY_MARGIN} at step {n + 1} "
                f"(t = {(n + 1) * h!r}, h = {h!r}); reduce the step"
            )
        a[n + 1] = a_next
        f_prev = -1j * (e_e * a_next + s_known + 0.5 * h * F[0] * a_next)
    return AmplitudeSeries(out_h, a[::stride].copy())


# -- Zeno product -------------------------------------------------------------


def zeno_sequence(params: ZenoParams, alpha0: complex, beta0: complex) -> PureState:
    """State after ``n`` null results in the short-time expansion.

    Each interval multiplies the excited amplitude by ``1 - K tau^2``; the
    result is renormalized.
    """
    initial = PureState(alpha0, beta0)
    ktau2 = params.k_coupling * params.tau**2
    if ktau2 >= 0.01:
        warnings.warn(f"K tau^2 = {ktau2!r} >= 0.01; second-order expansion is unreliable",
                      ZenoValidityWarning, stacklevel=2)
    factor = (1.0 - ktau2) ** params.n
    return PureState.normalized(initial.alpha * factor, initial.beta)
