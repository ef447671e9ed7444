# Checks for the extremal-law family: closed-form propagation against an
# independent RK4 integrator, control waveforms, disk-curve kinematics, and
# the continuous phase lift.

import math

import numpy as np
import pytest

from su2opt.extremal import (
    ExtremalLaw,
    controls_at,
    curve_samples,
    disk_curve,
    model_constants,
    phase,
    phase_piecewise,
    phase_rate,
    propagate,
    radius_sq,
    singular_time,
)
from su2opt.oracle import rk4_propagate
from su2opt.su2 import disk_point, matrix_distance

GAMMAS = [1.0 / math.sqrt(3.0), 0.5, 0.7, 1.0 / math.sqrt(2.0), 1.0]


@pytest.mark.parametrize("gamma", GAMMAS)
def test_model_constants_identities(gamma):
    c = model_constants(gamma)
    g2 = gamma * gamma
    assert abs(c.omega_star - 0.5 * (1.0 + g2)) < 1e-15
    assert abs(c.omega_c - (1.0 + g2)) < 1e-15
    assert abs(c.a_star - c.omega_star) < 1e-15
    assert abs(c.a_c - gamma * math.sqrt(1.0 + g2)) < 1e-15
    assert abs(c.separatrix_center[0] - g2 / (1.0 + g2)) < 1e-15
    assert c.separatrix_center[1] == 0.0
    assert abs(c.separatrix_radius - 1.0 / (1.0 + g2)) < 1e-15
    assert abs(c.critical_circle_radius - gamma / math.sqrt(1.0 + g2)) < 1e-15


def test_law_derived_quantities():
    law = ExtremalLaw(0.8, 0.3)
    assert abs(law.b - 0.7) < 1e-15
    assert abs(law.a - math.hypot(0.7, 0.8)) < 1e-15


def test_propagate_stays_in_su2():
    rng = np.random.default_rng(21)
    for _ in range(40):
        law = ExtremalLaw(float(rng.uniform(0.3, 1.0)),
                          float(rng.uniform(-3.0, 3.0)),
                          float(rng.uniform(0.0, 2.0 * math.pi)))
        x = propagate(law, float(rng.uniform(0.0, 6.0)))
        assert abs(abs(x.alpha) ** 2 + abs(x.beta) ** 2 - 1.0) < 1e-12


@pytest.mark.parametrize("omega", [-2.0, 0.0, 0.9, 1.0, 1.6, 2.5])
def test_propagate_matches_rk4(omega):
    law = ExtremalLaw(0.8, omega, 1.3)
    s_end = 0.9 * math.pi / law.a
    assert matrix_distance(propagate(law, s_end),
                           rk4_propagate(law, s_end, steps=20_000)) < 1e-10


def test_rk4_convergence_is_fourth_order():
    # doubling the step count should shrink the defect by about 16x; demand
    # at least 8x to stay robust against rounding
    law = ExtremalLaw(0.7, 0.4, 0.9)
    s_end = 2.0
    exact = propagate(law, s_end)
    errs = [matrix_distance(exact, rk4_propagate(law, s_end, steps=n))
            for n in (250, 500, 1000)]
    assert errs[0] / errs[1] > 8.0
    assert errs[1] / errs[2] > 8.0


def test_controls_waveform():
    gamma, omega, phi = 0.6, 1.4, 0.8
    law = ExtremalLaw(gamma, omega, phi)
    t = np.linspace(0.0, 7.0, 200)
    ux, uy = controls_at(law, t)
    assert np.max(np.abs(ux * ux + uy * uy - gamma * gamma)) < 1e-13
    assert np.max(np.abs(ux - gamma * np.sin(omega * t + phi))) < 1e-13
    assert np.max(np.abs(uy + gamma * np.cos(omega * t + phi))) < 1e-13
    # scalar call agrees with the vectorized one
    ux0, uy0 = controls_at(law, 1.5)
    assert abs(ux0 - gamma * math.sin(omega * 1.5 + phi)) < 1e-15
    assert abs(uy0 + gamma * math.cos(omega * 1.5 + phi)) < 1e-15


def test_disk_curve_is_projection_of_propagation():
    rng = np.random.default_rng(22)
    for _ in range(30):
        law = ExtremalLaw(float(rng.uniform(0.3, 1.0)),
                          float(rng.uniform(-3.0, 3.0)))
        s = float(rng.uniform(0.0, math.pi / law.a))
        p = disk_curve(law, s)
        d = disk_point(propagate(law, s))
        assert math.hypot(p.x - d.x, p.y - d.y) < 1e-13


def test_curve_samples_match_pointwise():
    law = ExtremalLaw(0.9, 0.2)
    s = np.linspace(0.0, math.pi / law.a, 64)
    xs, ys = curve_samples(law, s)
    for i, si in enumerate(s):
        p = disk_curve(law, float(si))
        assert abs(xs[i] - p.x) < 1e-14
        assert abs(ys[i] - p.y) < 1e-14


def test_radius_extremes():
    # r^2 = 1 - (gamma/a)^2 sin^2(a s): unit at s = 0 and s = pi/a, minimal
    # 1 - (gamma/a)^2 at the half-period
    law = ExtremalLaw(0.8, -0.5)
    assert abs(radius_sq(law, 0.0) - 1.0) < 1e-15
    assert abs(radius_sq(law, math.pi / law.a) - 1.0) < 1e-12
    half = math.pi / (2.0 * law.a)
    assert abs(radius_sq(law, half) - (1.0 - (law.gamma / law.a) ** 2)) < 1e-13
    s = np.linspace(0.0, math.pi / law.a, 200)
    r2 = radius_sq(law, s)
    assert np.all(r2 >= 1.0 - (law.gamma / law.a) ** 2 - 1e-13)
    assert np.all(r2 <= 1.0 + 1e-13)


@pytest.mark.parametrize("omega", [-2.0, 0.0, 0.4, 0.8, 1.7])
def test_phase_is_continuous_lift(omega):
    law = ExtremalLaw(0.75, omega)
    s = np.linspace(1e-9, math.pi / law.a - 1e-9, 2000)
    vals = np.array([phase(law, float(si)) for si in s])
    assert phase(law, 0.0) == 0.0
    # no 2-pi jumps anywhere on the open interval
    assert np.max(np.abs(np.diff(vals))) < 0.1


def test_phase_matches_piecewise_arg():
    # for b >= 0 the piecewise principal-value phase agrees exactly; for
    # b < 0 the lift may differ by full turns
    for omega, mod in ((0.3, False), (0.9, False), (1.8, True), (2.6, True)):
        law = ExtremalLaw(0.8, omega)
        for s in np.linspace(0.05, math.pi / law.a - 0.05, 40):
            lift = phase(law, float(s))
            raw = phase_piecewise(law, float(s))
            if mod:
                d = (lift - raw) / (2.0 * math.pi)
                assert abs(d - round(d)) < 1e-10
            else:
                assert abs(lift - raw) < 1e-10


def test_phase_rate_matches_finite_difference():
    law = ExtremalLaw(0.65, 0.45)
    h = 1e-6
    for s in (0.2, 0.7, 1.4, 2.2):
        fd = (phase(law, s + h) - phase(law, s - h)) / (2.0 * h)
        assert abs(phase_rate(law, s) - fd) < 1e-8


@pytest.mark.parametrize("omega", [-3.0, -1.0, 0.0, 0.35])
def test_boundary_return_phase(omega):
    # a member returning to the boundary lands at angle omega*pi/a + pi
    gamma = 0.8
    law = ExtremalLaw(gamma, omega)
    s_ret = math.pi / law.a
    assert abs(radius_sq(law, s_ret) - 1.0) < 1e-12
    assert abs(phase(law, s_ret) - (omega * math.pi / law.a + math.pi)) < 1e-10


def test_singular_time_is_identity_in_phase():
    # the zero-control arc creeps along the boundary at unit phase rate
    for psi in (0.3, 1.0, 2.5, 5.0):
        assert singular_time(psi) == psi
