import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zenotraj.errors import ConfigError, DomainError, InstabilityError, ResolutionError
from zenotraj.kernel import (
    AmplitudeSeries,
    Lorentzian,
    MeasurementSchedule,
    MemoryKernel,
    NegativeFrequencyWarning,
    ScalingParams,
    SystemParams,
    Tabulated,
    ZenoParams,
    ZenoValidityWarning,
    amplitude_lorentzian,
    amplitude_scaled,
    effective_rate_empirical,
    effective_rate_scaled,
    lorentzian_roots,
    memory_kernel,
    monitored_amplitude,
    null_probability,
    survival_repeated,
    two_pole_amplitude,
    volterra_amplitude,
    zeno_sequence,
)
from zenotraj.states import PureState, fidelity


def mp_amplitude(t, lam, gamma, e=0.0, dps=40):
    """High-precision two-pole amplitude, used as an independent oracle."""
    with mp.workdps(dps):
        k = mp.mpf(lam) - 1j * mp.mpf(e)
        r = mp.sqrt(k * k - 2 * mp.mpf(gamma) * mp.mpf(lam))
        ap, am = (k + r) / 2, (k - r) / 2
        t = mp.mpf(t)
        return complex((ap * mp.exp(-am * t) - am * mp.exp(-ap * t)) / (ap - am))


def mp_bracket(y, dps=40):
    with mp.workdps(dps):
        y = mp.mpc(y)
        return complex(1 - (1 - mp.exp(-y)) / y)


# -- data types ---------------------------------------------------------------


class TestTypes:
    def test_lorentzian_gamma(self):
        sdf = Lorentzian(d0=1 / (2 * math.pi), omega0=100.0, lam=10.0)
        assert sdf.gamma == pytest.approx(1.0, rel=1e-15)
        assert Lorentzian.from_gamma(2.5, 100.0, 10.0).gamma == pytest.approx(2.5, rel=1e-15)

    @pytest.mark.parametrize("d0,lam", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
    def test_lorentzian_rejects(self, d0, lam):
        with pytest.raises(ConfigError):
            Lorentzian(d0, 100.0, lam)

    def test_tabulated_rejects(self):
        with pytest.raises(ConfigError):
            Tabulated(np.array([0.0]), np.array([1.0]))
        with pytest.raises(ConfigError):
            Tabulated(np.array([0.0, 0.0, 1.0]), np.ones(3))
        with pytest.raises(ConfigError):
            Tabulated(np.array([0.0, 1.0]), np.array([1.0, -1e-3]))

    def test_system_params_identities(self):
        p = SystemParams(e_e=3.0, e_g=-1000.0, rabi=0.1, sdf=Lorentzian.from_gamma(1.0, 1000.0, 10.0))
        assert p.delta_eg == 1003.0
        assert p.detuning_e == 3.0
        assert p.gamma == pytest.approx(1.0)
        r = SystemParams.resonant(gamma=1.0, lam=10.0, detuning=0.5)
        assert r.detuning_e == pytest.approx(0.5)

    def test_negative_frequency_advisory(self):
        with pytest.warns(NegativeFrequencyWarning):
            SystemParams.resonant(gamma=1.0, lam=10.0, omega0=40.0)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            SystemParams.resonant(gamma=1.0, lam=10.0, omega0=50.0)

    def test_scaling_params(self):
        s = ScalingParams(x=0.5, c=0.3)
        assert s.kappa == complex(1.0, -0.3)
        e = ScalingParams.from_explicit(lam=10.0, tau=0.02, e=5.0, gamma=1.0)
        assert e.x == pytest.approx(0.2) and e.c == pytest.approx(0.5)
        with pytest.raises(ConfigError):
            ScalingParams(x=0.0)

    def test_schedule(self):
        s = MeasurementSchedule(tau=0.02, n=5)
        assert s.dt == 0.02 * 5
        with pytest.raises(ConfigError):
            MeasurementSchedule(tau=0.02, n=0)
        with pytest.raises(ConfigError):
            MeasurementSchedule(tau=-1.0, n=1)

    def test_zeno_params(self):
        with pytest.raises(ConfigError):
            ZenoParams(-1.0, 0.1, 1)


# -- amplitude_lorentzian -----------------------------------------------------


class TestAmplitudeLorentzian:
    def test_initial_value(self):
        for lam, gamma, e in [(10.0, 1.0, 0.0), (0.3, 2.0, -1.0), (5.0, 1.25, 2.0)]:
            assert amplitude_lorentzian(0.0, lam, gamma, e) == 1.0

    def test_reference_value(self):
        a = amplitude_lorentzian(1.0, 10.0, 1.0, 0.0)
        assert a.real == pytest.approx(0.6246709783475498, abs=1e-14)
        assert abs(a.imag) < 1e-15
        assert a.real == pytest.approx(mp_amplitude(1.0, 10.0, 1.0).real, abs=1e-14)

    def test_wide_band_limit(self):
        a = amplitude_lorentzian(1.0, 1e4, 1.0, 0.0)
        assert abs(a - math.exp(-0.5)) < 1e-3

    @pytest.mark.parametrize("lam,gamma,e", [(10.0, 1.0, 0.0), (10.0, 1.0, 3.0), (1.0, 2.0, -0.5), (0.5, 1.0, 0.0)])
    def test_matches_high_precision(self, lam, gamma, e):
        t = np.linspace(0.0, 5.0, 23)
        got = amplitude_lorentzian(t, lam, gamma, e)
        want = np.array([mp_amplitude(tk, lam, gamma, e) for tk in t])
        assert np.max(np.abs(got - want)) < 1e-13

    @given(
        lam=st.floats(0.05, 200.0),
        gamma=st.floats(0.05, 10.0),
        e=st.floats(-20.0, 20.0),
        t=st.floats(0.0, 10.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_branch_symmetry(self, lam, gamma, e, t):
        a_plus, a_minus = lorentzian_roots(lam, gamma, e)
        forward = two_pole_amplitude(t, a_plus, a_minus)
        swapped = two_pole_amplitude(t, a_minus, a_plus)
        assert abs(forward - swapped) <= 1e-12

    def test_degenerate_roots(self):
        # (Lambda - iE)^2 = 2 Gamma Lambda  ->  Lambda = 2 Gamma at E = 0
        gamma, lam = 1.0, 2.0
        a_plus, a_minus = lorentzian_roots(lam, gamma, 0.0)
        assert a_plus == a_minus
        t = np.linspace(0.0, 4.0, 9)
        got = amplitude_lorentzian(t, lam, gamma)
        assert np.all(np.isfinite(got))
        assert np.max(np.abs(got - (1 + t) * np.exp(-t))) < 1e-14
        near = amplitude_lorentzian(t, lam * (1 + 1e-6), gamma)
        assert np.max(np.abs(near - got)) < 1e-5

    def test_magnitude_bounded(self):
        t = np.linspace(0.0, 20.0, 401)
        for lam in (0.1, 1.0, 10.0, 100.0):
            assert np.all(np.abs(amplitude_lorentzian(t, lam, 1.0, 0.7)) <= 1.0 + 1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            amplitude_lorentzian(-0.1, 10.0, 1.0)
        with pytest.raises(DomainError):
            amplitude_lorentzian(1.0, 0.0, 1.0)


# -- survival_repeated --------------------------------------------------------


class TestSurvivalRepeated:
    def test_single_interval(self):
        for tau in (0.01, 0.3, 2.0):
            assert survival_repeated(tau, 1, 10.0, 1.0, 0.4) == pytest.approx(
                amplitude_lorentzian(tau, 10.0, 1.0, 0.4), abs=1e-15)

    def test_matches_direct_power(self):
        a = amplitude_lorentzian(0.07, 10.0, 1.0, 2.0)
        for n in (0, 1, 2, 7, 50):
            assert survival_repeated(0.07, n, 10.0, 1.0, 2.0) == pytest.approx(a**n, rel=1e-12, abs=1e-300)

    def test_integer_power_is_branch_free(self):
        # strongly underdamped case: a(tau) sits far from the positive real axis,
        # yet exp(n log a) equals the plain product for integer n
        tau, lam, gamma, e = 0.9, 1.0, 50.0, 3.0
        a = amplitude_lorentzian(tau, lam, gamma, e)
        assert abs(np.angle(a)) > 3.0
        for n in (2, 3, 4, 5, 11):
            assert survival_repeated(tau, n, lam, gamma, e) == pytest.approx(a**n, rel=1e-12)

    def test_converges_to_scaled(self):
        lam, x = 10.0, 2.0
        tau = x / lam
        n = np.arange(0, 26)
        gaps = np.abs(survival_repeated(tau, n, lam, 1.0) - amplitude_scaled(n * tau, ScalingParams(x=x)))
        assert gaps.max() < 0.02

    def test_zeno_freezing(self):
        t = 1.0
        values = [abs(survival_repeated(t / n, n, 10.0, 1.0)) for n in (10, 100, 1000, 10000)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert 1.0 - values[-1] < 1e-3

    def test_monitored_amplitude_at_measurements(self):
        tau = 0.05
        t = tau * np.arange(0, 41)
        assert np.allclose(monitored_amplitude(t, tau, 10.0, 1.0), survival_repeated(tau, np.arange(0, 41), 10.0, 1.0),
                           rtol=0, atol=1e-12)

    def test_monitored_amplitude_between(self):
        tau = 0.2
        got = monitored_amplitude(0.5, tau, 10.0, 1.0)
        want = amplitude_lorentzian(0.2, 10.0, 1.0) ** 2 * amplitude_lorentzian(0.1, 10.0, 1.0)
        assert got == pytest.approx(want, abs=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            survival_repeated(0.0, 1, 10.0, 1.0)
        with pytest.raises(DomainError):
            survival_repeated(0.1, 1.5, 10.0, 1.0)


# -- scaling formula and rates ------------------------------------------------


class TestScaled:
    def test_markov_limit(self):
        assert amplitude_scaled(1.0, ScalingParams(x=1e6)) == pytest.approx(math.exp(-0.5), abs=1e-6)

    def test_zeno_limit(self):
        for t in (0.0, 1.0, 100.0):
            assert abs(amplitude_scaled(t, ScalingParams(x=1e-9)) - 1.0) < 1e-7

    def test_reference_magnitude(self):
        got = abs(amplitude_scaled(1.0, ScalingParams(x=0.2)))
        assert got == pytest.approx(math.exp(-0.0936538 / 2), abs=1e-6)
        assert got == pytest.approx(0.9542525809270542, abs=1e-13)

    def test_initial_value(self):
        assert amplitude_scaled(0.0, ScalingParams(x=0.7, c=1.3)) == 1.0

    @pytest.mark.parametrize("x", [1e-8, 1e-4, 0.01, 0.049, 0.051, 0.2, 1.0, 5.0, 60.0])
    @pytest.mark.parametrize("c", [0.0, 0.7, -2.0])
    def test_bracket_against_high_precision(self, x, c):
        s = ScalingParams(x=x, c=c)
        kappa = s.kappa
        want = mp_bracket(kappa * x) / kappa
        got = effective_rate_scaled(s)
        assert got == pytest.approx(want.real, rel=1e-12, abs=1e-300)

    def test_rate_reference(self):
        assert effective_rate_scaled(ScalingParams(x=0.2)) == pytest.approx(0.0936538, abs=1e-7)
        assert effective_rate_scaled(ScalingParams(x=0.2)) == pytest.approx(0.09365376538990929, rel=1e-14)

    def test_rate_limits(self):
        assert effective_rate_scaled(ScalingParams(x=1e9)) == pytest.approx(1.0, abs=1e-8)
        assert 0.0 <= effective_rate_scaled(ScalingParams(x=1e-9)) <= 1e-9
        assert effective_rate_scaled(ScalingParams(x=2.0, gamma=3.0)) == pytest.approx(
            3.0 * effective_rate_scaled(ScalingParams(x=2.0)), rel=1e-15)

    def test_rate_small_x_series(self):
        for x in (1e-6, 1e-3, 0.04):
            assert effective_rate_scaled(ScalingParams(x=x)) == pytest.approx(x / 2 - x**2 / 6 + x**3 / 24 - x**4 / 120,
                                                                             rel=1e-8)

    def test_rate_monotone_in_x(self):
        xs = np.logspace(-3, 3, 400)
        rates = np.array([effective_rate_scaled(ScalingParams(x=x)) for x in xs])
        assert np.all(np.diff(rates) > 0)

    @given(x=st.floats(1e-6, 1e3), c=st.floats(-5.0, 5.0))
    @settings(max_examples=200, deadline=None)
    def test_rate_range(self, x, c):
        rate = effective_rate_scaled(ScalingParams(x=x, c=c))
        assert 0.0 <= rate <= 1.0 + abs(c)

    @given(x=st.floats(1e-6, 1e3), c=st.floats(-5.0, 5.0), t=st.floats(0.0, 20.0))
    @settings(max_examples=100, deadline=None)
    def test_scaled_magnitude_matches_rate(self, x, c, t):
        s = ScalingParams(x=x, c=c)
        assert abs(amplitude_scaled(t, s)) ** 2 == pytest.approx(math.exp(-effective_rate_scaled(s) * t),
                                                                rel=1e-10)


class TestEmpiricalRate:
    def test_unit_amplitude(self):
        for flavor in ("linear", "log"):
            assert effective_rate_empirical(1.0, 0.1, flavor) == 0.0
            assert effective_rate_empirical(1j, 0.1, flavor) == 0.0

    def test_log_identity(self):
        for dt in (1e-4, 1e-2, 0.5):
            assert effective_rate_empirical(math.exp(-dt / 2), dt, "log") == pytest.approx(1.0, rel=1e-10)

    def test_linear_series(self):
        dt = 1e-3
        got = effective_rate_empirical(math.exp(-dt / 2), dt, "linear")
        # (1 - e^{-dt}) / dt = 1 - dt/2 + dt^2/6 - ...
        assert got == pytest.approx(1 - dt / 2 + dt**2 / 6, rel=1e-10)
        assert abs(got - (1 - 5e-4)) < 2e-7

    def test_domain(self):
        with pytest.raises(DomainError):
            effective_rate_empirical(0.0, 0.1, "log")
        assert effective_rate_empirical(0.0, 0.1, "linear") == pytest.approx(10.0)
        with pytest.raises(DomainError):
            effective_rate_empirical(1.1, 0.1, "linear")
        with pytest.raises(DomainError):
            effective_rate_empirical(0.5, 0.0, "log")


class TestNullProbability:
    def test_examples(self):
        assert null_probability(1.0, 0.6, 0.8) == pytest.approx(1.0, abs=1e-15)
        assert null_probability(0.3, 0.0, 1.0) == 1.0
        r = 1 / math.sqrt(2)
        assert null_probability(0.95424, r, r) == pytest.approx(0.95529, abs=5e-6)

    def test_not_normalized(self):
        with pytest.raises(DomainError):
            null_probability(0.5, 1.0, 1.0)

    def test_joint_probability_of_null_sequence(self):
        # the product of per-measurement null probabilities, each computed for the
        # state conditioned on the earlier nulls, telescopes to the closed form
        lam, gamma, tau, n = 10.0, 1.0, 0.05, 40
        alpha0, beta0 = 0.6, 0.8j
        a_tau = amplitude_lorentzian(tau, lam, gamma)
        alpha, beta = alpha0, beta0
        joint = 1.0
        for _ in range(n):
            alpha = alpha * a_tau
            p_null = abs(alpha) ** 2 + abs(beta) ** 2
            joint *= p_null
            norm = math.sqrt(p_null)
            alpha, beta = alpha / norm, beta / norm
        abar = survival_repeated(tau, n, lam, gamma)
        assert joint == pytest.approx(null_probability(abar, alpha0, beta0), rel=1e-12)


# -- memory kernel ------------------------------------------------------------


def lorentzian_table(d0, omega0, lam, half_width, points):
    omega = np.linspace(omega0 - half_width, omega0 + half_width, points)
    return Tabulated(omega, Lorentzian(d0, omega0, lam)(omega))


class TestMemoryKernel:
    def test_zero_density(self):
        sdf = Tabulated(np.linspace(-5.0, 5.0, 11), np.zeros(11))
        k = memory_kernel(sdf, 0.0, np.linspace(0.0, 0.1, 11))
        assert np.all(k.values == 0)

    def test_origin_value(self):
        sdf = Lorentzian.from_gamma(1.0, 1000.0, 10.0)
        k = memory_kernel(sdf, -1000.0, np.linspace(0.0, 1.0, 11))
        assert k.values[0] == pytest.approx(-0.5j * 1.0 * 10.0, abs=1e-15)

    def test_closed_form_phase(self):
        sdf = Lorentzian.from_gamma(2.0, 50.0, 4.0)
        s = np.linspace(0.0, 1.0, 101)
        k = memory_kernel(sdf, -47.0, s)
        want = -1j * 2.0 * 4.0 / 2 * np.exp(-1j * 3.0 * s) * np.exp(-4.0 * s)
        assert np.max(np.abs(k.values - want)) < 1e-14
        assert k.h == pytest.approx(0.01)
        assert np.allclose(k.grid, s)

    def test_tabulated_matches_closed_form(self):
        d0, omega0, lam = 1 / (2 * math.pi), 0.0, 10.0
        table = lorentzian_table(d0, omega0, lam, half_width=4e4, points=800_001)
        s = np.linspace(0.0, 0.5, 51)
        quad = memory_kernel(table, 0.0, s)
        exact = memory_kernel(Lorentzian(d0, omega0, lam), 0.0, s)
        assert np.max(np.abs(quad.values - exact.values)) <= 1e-4 * 1.0 * lam

    def test_tabulated_origin_by_quadrature(self):
        # F(0) = -i * integral of D over all frequencies = -i Gamma Lambda / 2
        d0, lam = 1 / (2 * math.pi), 10.0
        table = lorentzian_table(d0, 0.0, lam, half_width=1e5, points=200_001)
        f0 = memory_kernel(table, 0.0, np.array([0.0, 1e-6])).values[0]
        assert f0.imag == pytest.approx(-0.5 * lam, rel=1e-4)

    def test_resolution_error(self):
        table = lorentzian_table(1.0, 0.0, 1.0, half_width=10.0, points=11)
        with pytest.raises(ResolutionError):
            memory_kernel(table, 0.0, np.linspace(0.0, 1.0, 5))

    def test_grid_validation(self):
        sdf = Lorentzian.from_gamma(1.0, 100.0, 10.0)
        with pytest.raises(ConfigError):
            memory_kernel(sdf, 0.0, np.array([0.0, 0.1, 0.3]))
        with pytest.raises(ConfigError):
            memory_kernel(sdf, 0.0, np.array([0.1, 0.2]))

    def test_types_validate(self):
        with pytest.raises(ConfigError):
            MemoryKernel(0.0, np.zeros(3, dtype=complex))
        with pytest.raises(ConfigError):
            MemoryKernel(0.1, np.array([np.nan, 0.0]))
        assert AmplitudeSeries(0.5, np.ones(3, dtype=complex)).grid[-1] == 1.0


# -- Volterra solver ----------------------------------------------------------


def lorentzian_volterra(lam, gamma, e, h, t_final, out_h=None):
    params = SystemParams.resonant(gamma=gamma, lam=lam, detuning=e)
    out_h = h if out_h is None else out_h
    steps = int(round(t_final / h))
    kernel = memory_kernel(params.sdf, params.e_g, h * np.arange(steps + 1))
    grid = out_h * np.arange(int(round(t_final / out_h)) + 1)
    series = volterra_amplitude(kernel, params.e_e, grid)
    return grid, series.values * np.exp(1j * params.e_e * grid)


class TestVolterra:
    def test_free_evolution(self):
        grid = np.linspace(0.0, 2.0, 201)
        kernel = MemoryKernel(0.01, np.zeros(201, dtype=complex))
        out = volterra_amplitude(kernel, 3.0, grid)
        # the trapezoidal rule multiplies by the Cayley factor each step
        cayley = (1 - 1.5j * 0.01) / (1 + 1.5j * 0.01)
        assert np.max(np.abs(out.values - cayley ** np.arange(201))) < 1e-12
        assert np.max(np.abs(out.values - np.exp(-3j * grid))) < 1e-3
        assert np.max(np.abs(np.abs(out.values) - 1.0)) < 1e-12

    def test_initial_value(self):
        _, a = lorentzian_volterra(10.0, 1.0, 0.0, 1e-2, 0.5)
        assert a[0] == 1.0

    def test_matches_closed_form(self):
        grid, a = lorentzian_volterra(10.0, 1.0, 0.0, 1e-3, 5.0, out_h=1e-2)
        assert np.max(np.abs(a - amplitude_lorentzian(grid, 10.0, 1.0))) <= 1e-4

    def test_matches_with_offset(self):
        grid, a = lorentzian_volterra(10.0, 1.0, 2.5, 2e-3, 3.0, out_h=1e-2)
        assert np.max(np.abs(a - amplitude_lorentzian(grid, 10.0, 1.0, 2.5))) <= 2e-4

    def test_second_order(self):
        errors = []
        for h in (4e-3, 2e-3, 1e-3):
            grid, a = lorentzian_volterra(10.0, 1.0, 0.0, h, 2.0, out_h=4e-3)
            errors.append(np.max(np.abs(a - amplitude_lorentzian(grid, 10.0, 1.0))))
        ratios = np.array(errors[:-1]) / np.array(errors[1:])
        assert np.all(np.abs(ratios - 4.0) < 0.5)

    def test_single_point_grid(self):
        kernel = MemoryKernel(0.01, np.zeros(3, dtype=complex))
        assert volterra_amplitude(kernel, 1.0, np.array([0.0])).values.tolist() == [1.0]

    def test_grid_mismatch(self):
        kernel = MemoryKernel(0.01, np.zeros(200, dtype=complex))
        with pytest.raises(ConfigError):
            volterra_amplitude(kernel, 0.0, np.linspace(0.0, 1.0, 67))
        with pytest.raises(ConfigError):
            volterra_amplitude(kernel, 0.0, np.linspace(0.0, 5.0, 501))

    def test_instability_detected(self):
        # a kernel with the wrong sign of its imaginary part pumps the amplitude up
        h = 0.01
        kernel = MemoryKernel(h, +0.5j * 10.0 * np.exp(-10.0 * h * np.arange(501)))
        with pytest.raises(InstabilityError):
            volterra_amplitude(kernel, 0.0, h * np.arange(501))


# -- Zeno product -------------------------------------------------------------


class TestZenoSequence:
    def test_ground_state_unchanged(self):
        for n in (0, 1, 10, 1000):
            s = zeno_sequence(ZenoParams(1.0, 0.01, n), 0.0, 1.0)
            assert s.alpha == 0 and s.beta == 1.0

    def test_normalized(self):
        s = zeno_sequence(ZenoParams(2.0, 0.05, 30), 0.6, 0.8j)
        assert abs(abs(s.alpha) ** 2 + abs(s.beta) ** 2 - 1.0) < 1e-12

    def test_fidelity_to_one(self):
        r = 1 / math.sqrt(2)
        initial = PureState(r, r)
        fids = [fidelity(initial, zeno_sequence(ZenoParams(1.0, 1.0 / n, n), r, r)) for n in (20, 200, 2000)]
        assert fids[0] < fids[1] < fids[2]
        assert 1.0 - fids[-1] < 1e-5

    def test_excited_factor_linear_in_tau(self):
        # (1 - K tau^2)^(t/tau) = exp(-K t tau) + O(tau^3): the amplitude deficit is linear in tau
        t = 1.0
        deficits = [1.0 - (1.0 - tau**2) ** round(t / tau) for tau in (0.02, 0.01, 0.005)]
        ratios = np.array(deficits[:-1]) / np.array(deficits[1:])
        assert np.all(np.abs(ratios - 2.0) < 0.05)

    def test_infidelity_is_quadratic_in_tau(self):
        # the overlap loss is the square of the amplitude deficit, so it quarters on halving tau
        r = 1 / math.sqrt(2)
        psi0 = PureState(r, r)
        inf = []
        for tau in (0.02, 0.01, 0.005, 0.0025):
            state = zeno_sequence(ZenoParams(1.0, tau, round(1.0 / tau)), r, r)
            inf.append(1.0 - fidelity(psi0, state))
        ratios = np.array(inf[:-1]) / np.array(inf[1:])
        assert np.all(np.abs(ratios - 4.0) < 0.1)

    def test_validity_warning(self):
        with pytest.warns(ZenoValidityWarning):
            zeno_sequence(ZenoParams(1.0, 0.2, 3), 1.0, 0.0)
