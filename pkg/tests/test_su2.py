# Unit-level checks for the SU(2) matrix layer: parametrization, products,
# distances, and the disk reduction of a target.

import cmath
import math

import numpy as np
import pytest

from su2opt.errors import NotUnitary
from su2opt.su2 import (
    IDENTITY,
    DiskPoint,
    Su2Matrix,
    adjoint,
    disk_point,
    from_complex_pair,
    matrix_distance,
    multiply,
    normalize_problem,
    reconstruct,
    to_target_params,
    z_conjugation_equivalent,
    z_rotation,
)


def _random_su2(rng: np.random.Generator) -> Su2Matrix:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return Su2Matrix(complex(v[0], v[1]), complex(v[2], v[3]))


def test_matrix_layout_and_unitarity():
    rng = np.random.default_rng(11)
    for _ in range(50):
        x = _random_su2(rng)
        m = x.matrix()
        assert m[0, 0] == x.alpha
        assert m[0, 1] == x.beta
        assert m[1, 0] == -np.conj(x.beta)
        assert m[1, 1] == np.conj(x.alpha)
        assert abs(np.linalg.det(m) - 1.0) < 1e-12
        assert np.max(np.abs(m @ m.conj().T - np.eye(2))) < 1e-12


def test_from_complex_pair_rejects_non_unit_norm():
    with pytest.raises(NotUnitary):
        from_complex_pair(1.0, 0.1)
    with pytest.raises(NotUnitary):
        from_complex_pair(0.5, 0.5)
    # exactly normalized pairs pass through unchanged
    x = from_complex_pair(complex(0.6, 0.0), complex(0.0, 0.8))
    assert x.alpha == complex(0.6, 0.0)
    assert x.beta == complex(0.0, 0.8)


def test_multiply_matches_matrix_product():
    rng = np.random.default_rng(3)
    for _ in range(25):
        x, y = _random_su2(rng), _random_su2(rng)
        direct = multiply(x, y).matrix()
        assert np.max(np.abs(direct - x.matrix() @ y.matrix())) < 1e-14


def test_adjoint_is_inverse():
    rng = np.random.default_rng(4)
    for _ in range(25):
        x = _random_su2(rng)
        assert matrix_distance(multiply(x, adjoint(x)), IDENTITY) < 1e-14


def test_matrix_distance_equals_frobenius_norm():
    rng = np.random.default_rng(5)
    for _ in range(25):
        x, y = _random_su2(rng), _random_su2(rng)
        fro = np.linalg.norm(x.matrix() - y.matrix(), ord="fro")
        assert abs(matrix_distance(x, y) - fro) < 1e-13


def test_z_rotation_is_diagonal_phase():
    theta = 0.7
    zr = z_rotation(theta)
    assert abs(zr.alpha - cmath.exp(0.5j * theta)) < 1e-15
    assert zr.beta == 0
    # group law: angles add
    prod = multiply(z_rotation(0.4), z_rotation(0.9))
    assert matrix_distance(prod, z_rotation(1.3)) < 1e-15


def test_target_params_round_trip():
    rng = np.random.default_rng(6)
    for _ in range(50):
        x = _random_su2(rng)
        p = to_target_params(x)
        assert abs(p.M - abs(x.beta)) < 1e-15
        assert matrix_distance(reconstruct(p), x) < 1e-12


def test_disk_point_is_upper_left_entry():
    rng = np.random.default_rng(7)
    for _ in range(25):
        x = _random_su2(rng)
        d = disk_point(x)
        assert abs(complex(d.x, d.y) - x.alpha) < 1e-15
        assert d.x * d.x + d.y * d.y <= 1.0 + 1e-12
    assert disk_point(IDENTITY) == DiskPoint(1.0, 0.0)
    assert disk_point(Su2Matrix(0.0, 1.0)) == DiskPoint(0.0, 0.0)


def test_z_conjugation_equivalence():
    rng = np.random.default_rng(8)
    for _ in range(25):
        x = _random_su2(rng)
        theta = float(rng.uniform(0, 2 * math.pi))
        zr = z_rotation(theta)
        y = multiply(multiply(zr, x), adjoint(zr))
        assert z_conjugation_equivalent(x, y)
    # distinct |alpha| breaks the equivalence
    assert not z_conjugation_equivalent(Su2Matrix(1.0, 0.0), Su2Matrix(0.0, 1.0))


def test_normalize_problem_scaling():
    # drift omega0 = 2 with bound 0.7 rescales to unit drift, gamma = 0.35;
    # negative drift sign flips via conjugation of the target.
    p = normalize_problem(2.0, -1, 0.7)
    assert abs(p.gamma - 0.35) < 1e-15
    assert abs(p.time_scale - 0.5) < 1e-15
    assert p.conjugate_target is True
    q = normalize_problem(1.0, 1, 0.5)
    assert abs(q.gamma - 0.5) < 1e-15
    assert abs(q.time_scale - 1.0) < 1e-15
    assert q.conjugate_target is False
