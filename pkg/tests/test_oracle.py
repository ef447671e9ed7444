# Checks for the independent numerical oracles: RK4 propagation, adjoint
# residuals, grid minimality search, and the qualitative facts report.

import math

import numpy as np
import pytest

from su2opt.extremal import ExtremalLaw, model_constants, propagate
from su2opt.oracle import (
    grid_minimality,
    pmp_residual,
    rk4_propagate,
    rk4_propagate_batch,
    verify_facts,
)
from su2opt.su2 import DiskPoint, matrix_distance


def test_rk4_agrees_with_closed_form():
    law = ExtremalLaw(0.6, 1.2, 0.5)
    s_end = 2.3
    assert matrix_distance(propagate(law, s_end),
                           rk4_propagate(law, s_end, steps=40_000)) < 1e-11


def test_rk4_batch_matches_single_runs():
    rng = np.random.default_rng(31)
    n = 8
    g = rng.uniform(0.4, 1.0, n)
    w = rng.uniform(-2.5, 2.5, n)
    p = rng.uniform(0.0, 2.0 * math.pi, n)
    s = rng.uniform(0.2, 5.0, n)
    al, be = rk4_propagate_batch(g, w, p, s, steps=4000)
    for i in range(n):
        single = rk4_propagate(ExtremalLaw(float(g[i]), float(w[i]), float(p[i])),
                               float(s[i]), steps=4000)
        assert abs(al[i] - single.alpha) < 1e-13
        assert abs(be[i] - single.beta) < 1e-13


@pytest.mark.parametrize("omega", [0.0, 1.0, 1.8])
def test_pmp_invariants_hold_along_extremals(omega):
    law = ExtremalLaw(0.8, omega, 1.0)
    res = pmp_residual(law, 0.8 * math.pi / law.a, steps=10_000)
    assert res.max_drift_bz < 1e-9
    assert res.max_drift_h < 1e-9
    assert res.max_control_mismatch < 1e-9
    assert res.worst < 1e-9


def test_grid_minimality_recovers_swap_time():
    g = 0.5
    res = grid_minimality(g, DiskPoint(0.0, 0.0), omega_range=(0.0, 2.0),
                          s_max=1.2 * math.pi / (2.0 * g))
    assert res.best_distance < 1e-3
    assert abs(res.T_grid - math.pi / (2.0 * g)) < 2e-3
    assert abs(res.best_omega - 1.0) < 0.05


@pytest.mark.parametrize("gamma", [0.4, 1.0 / math.sqrt(3.0), 0.8, 1.0])
def test_facts_report_passes(gamma):
    rep = verify_facts(gamma)
    assert rep.radius_monotone
    assert rep.radius_ordering
    assert rep.phase_positive_low
    assert rep.phase_positive_high
    assert rep.singular_is_boundary
    assert rep.curves_disjoint
    assert rep.passed
    d = rep.to_dict()
    assert d["passed"] is True
    assert "curves_disjoint" in d
