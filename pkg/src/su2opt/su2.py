"""SU(2) state representation and problem normalization.

A group element is stored by its first row (alpha, beta) with
|alpha|^2 + |beta|^2 = 1; the second row is (-conj(beta), conj(alpha)).
Targets are classified by the invariants of conjugation with diagonal
elements: the off-diagonal weight M = |beta| and the diagonal phase
psi = arg(alpha).  The generators used throughout are

    sigma_x = [[0, i],[i, 0]]/2,  sigma_y = [[0,-1],[1, 0]]/2,
    sigma_z = [[i, 0],[0,-i]]/2,

so that [sigma_x, sigma_y] = sigma_z (cyclically) and each has
Hilbert-Schmidt norm 1/sqrt(2).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundExceedsDrift, NotUnitary

__all__ = [
    "Su2Matrix",
    "TargetParams",
    "DiskPoint",
    "PauliBasis",
    "PAULI",
    "IDENTITY",
    "from_complex_pair",
    "to_target_params",
    "reconstruct",
    "disk_point",
    "z_rotation",
    "z_conjugation_equivalent",
    "normalize_problem",
    "NormalizedProblem",
    "multiply",
    "adjoint",
    "hs_inner",
    "matrix_distance",
]

TWO_PI = 2.0 * math.pi

# Unitarity slack accepted by from_complex_pair before renormalizing.
UNITARITY_TOL = 1e-9


def _lift(angle: float) -> float:
    """Map an angle to [0, 2*pi)."""
    return angle % TWO_PI


@dataclass(frozen=True)
class Su2Matrix:
    """SU(2) element stored by its first row (alpha, beta)."""

    alpha: complex
    beta: complex

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.alpha, self.beta],
             [-np.conj(self.beta), np.conj(self.alpha)]],
            dtype=complex,
        )

    def norm_defect(self) -> float:
        return abs(abs(self.alpha) ** 2 + abs(self.beta) ** 2 - 1.0)


IDENTITY = Su2Matrix(1.0 + 0.0j, 0.0 + 0.0j)


@dataclass(frozen=True)
class TargetParams:
    """Conjugation-class coordinates of a target: arg/weight of the first row.

    psi_defined is False when M = 1 (alpha = 0): the diagonal phase is then
    meaningless and reported as 0.  phi is reported as 0 when M = 0.
    x_psi is the affine phase coordinate (psi - pi)/pi used by the diagonal
    synthesis formulas.
    """

    psi: float
    phi: float
    M: float
    x_psi: float
    psi_defined: bool = True


@dataclass(frozen=True)
class DiskPoint:
    """Image of a group element in the closed unit disk: (Re alpha, Im alpha)."""

    x: float
    y: float

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def psi(self) -> float:
        """Polar angle lifted to [0, 2*pi)."""
        return _lift(math.atan2(self.y, self.x))


SIGMA_X = 0.5 * np.array([[0.0, 1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Y = 0.5 * np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = 0.5 * np.array([[1.0j, 0.0], [0.0, -1.0j]], dtype=complex)


@dataclass(frozen=True, eq=False)
class PauliBasis:
    """The three su(2) generators in the convention above."""

    sigma_x: np.ndarray = SIGMA_X
    sigma_y: np.ndarray = SIGMA_Y
    sigma_z: np.ndarray = SIGMA_Z


PAULI = PauliBasis()


def from_complex_pair(alpha: complex, beta: complex) -> Su2Matrix:
    """Build an element from a first row, renormalizing tiny defects.

    Raises NotUnitary when |alpha|^2 + |beta|^2 deviates from 1 by more
    than 1e-9.
    """
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm_sq - 1.0) > UNITARITY_TOL:
        raise NotUnitary(
            f"|alpha|^2 + |beta|^2 = {norm_sq!r} deviates from 1 by more than {UNITARITY_TOL}"
        )
    scale = 1.0 / math.sqrt(norm_sq)
    return Su2Matrix(complex(alpha) * scale, complex(beta) * scale)


def to_target_params(x: Su2Matrix) -> TargetParams:
    m = min(abs(x.beta), 1.0)
    psi_defined = abs(x.alpha) > 1e-12
    psi = _lift(cmath.phase(x.alpha)) if psi_defined else 0.0
    phi = _lift(cmath.phase(x.beta)) if m > 1e-12 else 0.0
    return TargetParams(psi=psi, phi=phi, M=m, x_psi=(psi - math.pi) / math.pi,
                        psi_defined=psi_defined)


def reconstruct(params: TargetParams) -> Su2Matrix:
    """Inverse of to_target_params on its image."""
    m = params.M
    if not 0.0 <= m <= 1.0:
        raise ValueError(f"M must lie in [0, 1], got {m}")
    alpha = cmath.exp(1j * params.psi) * math.sqrt(max(1.0 - m * m, 0.0))
    beta = cmath.exp(1j * params.phi) * m
    return Su2Matrix(alpha, beta)


def disk_point(x: Su2Matrix) -> DiskPoint:
    return DiskPoint(x.alpha.real, x.alpha.imag)


def z_rotation(angle: float) -> Su2Matrix:
    """exp(sigma_z * angle) = diag(e^{i angle/2}, e^{-i angle/2})."""
    return Su2Matrix(cmath.exp(0.5j * angle), 0.0j)


def z_conjugation_equivalent(x: Su2Matrix, y: Su2Matrix, tol: float = 1e-9) -> bool:
    """True iff x and y differ only by conjugation with a diagonal element.

    Conjugation by exp(sigma_z * angle) leaves alpha untouched and rotates
    beta, so the class is fixed by (psi, M) alone.
    """
    px, py = to_target_params(x), to_target_params(y)
    if abs(px.M - py.M) > tol:
        return False
    if px.M >= 1.0 - tol and py.M >= 1.0 - tol:
        return True
    dpsi = abs(px.psi - py.psi) % TWO_PI
    return min(dpsi, TWO_PI - dpsi) <= tol


@dataclass(frozen=True)
class NormalizedProblem:
    gamma: float
    time_scale: float
    conjugate_target: bool


def normalize_problem(omega0: float, drift_sign: int, control_bound: float) -> NormalizedProblem:
    """Reduce (omega0, sign, bound) to the unit-drift model.

    Scaling time by omega0 makes the drift speed 1, so gamma = bound/omega0
    and a solved time T corresponds to physical time T * time_scale.  A
    negative drift sign is absorbed by conjugating the target.
    """
    if omega0 <= 0.0:
        raise ValueError(f"omega0 must be positive, got {omega0}")
    if drift_sign not in (-1, 1):
        raise ValueError(f"drift_sign must be +1 or -1, got {drift_sign}")
    if control_bound <= 0.0:
        raise ValueError(f"control_bound must be positive, got {control_bound}")
    if control_bound > omega0:
        raise BoundExceedsDrift(
            f"control bound {control_bound} exceeds drift magnitude {omega0}"
        )
    return NormalizedProblem(
        gamma=control_bound / omega0,
        time_scale=1.0 / omega0,
        conjugate_target=(drift_sign == -1),
    )


def multiply(x: Su2Matrix, y: Su2Matrix) -> Su2Matrix:
    return Su2Matrix(
        x.alpha * y.alpha - x.beta * np.conj(y.beta),
        x.alpha * y.beta + x.beta * np.conj(y.alpha),
    )


def adjoint(x: Su2Matrix) -> Su2Matrix:
    return Su2Matrix(np.conj(x.alpha), -x.beta)


def _as_matrix(x: Su2Matrix | np.ndarray) -> np.ndarray:
    if isinstance(x, Su2Matrix):
        return x.matrix()
    return np.asarray(x, dtype=complex)


def hs_inner(a: Su2Matrix | np.ndarray, b: Su2Matrix | np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a b^dagger)."""
    ma, mb = _as_matrix(a), _as_matrix(b)
    return complex(np.trace(ma @ mb.conj().T))


def matrix_distance(x: Su2Matrix, y: Su2Matrix) -> float:
    """Frobenius distance between two elements."""
    return math.sqrt(
        2.0 * (abs(x.alpha - y.alpha) ** 2 + abs(x.beta - y.beta) ** 2)
    )
