"""Closed-form extremal trajectories of the driven two-level system.

The system is dX/dt = (sigma_z + u_x sigma_x + u_y sigma_y) X with
u_x^2 + u_y^2 <= gamma^2.  Time-optimal controls rotate at a constant
angular speed omega,

    u_x(t) = gamma sin(omega t + phi),   u_y(t) = -gamma cos(omega t + phi),

and the flow has an explicit solution.  All public functions below work in
*curve time* s = t/2 (the disk curve is traversed at unit drift rate in s);
physical-time quantities are exposed where noted.  With b = 1 - omega and
a = sqrt(b^2 + gamma^2) the first row of X at curve time s is

    alpha(s) = e^{i omega s} (cos(a s) + i (b/a) sin(a s)),
    beta(s)  = e^{i (omega s + phi)} (gamma/a) sin(a s).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .su2 import DiskPoint, Su2Matrix

__all__ = [
    "ExtremalLaw",
    "ModelConstants",
    "model_constants",
    "controls_at",
    "propagate",
    "disk_curve",
    "curve_samples",
    "radius_sq",
    "phase",
    "phase_piecewise",
    "phase_rate",
    "singular_time",
]


@dataclass(frozen=True)
class ExtremalLaw:
    """One member of the extremal family: saturated controls at frequency omega.

    gamma is the control bound (0 < gamma <= 1 after normalization), omega the
    control rotation frequency in physical time, phi_tilde the initial control
    phase.
    """

    gamma: float
    omega: float
    phi_tilde: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")

    @property
    def b(self) -> float:
        return 1.0 - self.omega

    @property
    def a(self) -> float:
        return math.hypot(self.b, self.gamma)


@dataclass(frozen=True)
class ModelConstants:
    """Derived landmarks of the optimal synthesis at a given gamma.

    omega_star is the separatrix frequency, omega_c = 2*omega_star the critical
    one; a_star/a_c the corresponding a values.  The separatrix is the circle
    of the stated center and radius; the critical circle is centered at the
    origin and bounds the radii reachable by the critical trajectory.
    """

    gamma: float
    omega_star: float
    omega_c: float
    b_star: float
    b_c: float
    a_star: float
    a_c: float
    separatrix_center: tuple[float, float]
    separatrix_radius: float
    critical_circle_radius: float


def model_constants(gamma: float) -> ModelConstants:
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")
    g2 = gamma * gamma
    omega_star = 0.5 * (1.0 + g2)
    omega_c = 1.0 + g2
    return ModelConstants(
        gamma=gamma,
        omega_star=omega_star,
        omega_c=omega_c,
        b_star=1.0 - omega_star,
        b_c=-g2,
        a_star=omega_star,  # algebraic identity: sqrt(b*^2 + gamma^2) = omega*
        a_c=gamma * math.sqrt(1.0 + g2),
        separatrix_center=(g2 / (1.0 + g2), 0.0),
        separatrix_radius=1.0 / (1.0 + g2),
        critical_circle_radius=gamma / math.sqrt(1.0 + g2),
    )


def controls_at(law: ExtremalLaw, t_phys):
    """Control pair at *physical* time t_phys (= 2 * curve time)."""
    angle = law.omega * np.asarray(t_phys, dtype=float) + law.phi_tilde
    u_x = law.gamma * np.sin(angle)
    u_y = -law.gamma * np.cos(angle)
    if np.ndim(t_phys) == 0:
        return float(u_x), float(u_y)
    return u_x, u_y


def propagate(law: ExtremalLaw, s: float) -> Su2Matrix:
    """State at curve time s >= 0 (physical time 2s), from the identity."""
    a, b = law.a, law.b
    cas, sas = math.cos(a * s), math.sin(a * s)
    alpha = cmath.exp(1j * law.omega * s) * complex(cas, (b / a) * sas)
    beta = cmath.exp(1j * (law.omega * s + law.phi_tilde)) * (law.gamma / a) * sas
    return Su2Matrix(alpha, beta)


def disk_curve(law: ExtremalLaw, s: float) -> DiskPoint:
    """Disk image of the trajectory, written out as the real curve directly."""
    a, b = law.a, law.b
    cos_w, sin_w = math.cos(law.omega * s), math.sin(law.omega * s)
    cas, sas = math.cos(a * s), math.sin(a * s)
    return DiskPoint(
        cos_w * cas - (b / a) * sin_w * sas,
        sin_w * cas + (b / a) * cos_w * sas,
    )


def curve_samples(law: ExtremalLaw, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized disk curve (x(s), y(s)) for an array of curve times."""
    a, b = law.a, law.b
    s = np.asarray(s, dtype=float)
    cos_w, sin_w = np.cos(law.omega * s), np.sin(law.omega * s)
    cas, sas = np.cos(a * s), np.sin(a * s)
    return cos_w * cas - (b / a) * sin_w * sas, sin_w * cas + (b / a) * cos_w * sas


def radius_sq(law: ExtremalLaw, s) -> float | np.ndarray:
    """Squared disk radius r^2(s) = 1 - (gamma^2/a^2) sin^2(a s)."""
    a = law.a
    sas = np.sin(a * np.asarray(s, dtype=float))
    out = 1.0 - (law.gamma / a) ** 2 * sas * sas
    return float(out) if np.ndim(s) == 0 else out


def phase(law: ExtremalLaw, s: float) -> float:
    """Continuous phase lift psi(s) of the disk curve with psi(0) = 0.

    psi(s) = omega s + theta(s) where theta is the unwrapped argument of the
    elliptic factor cos(a s) + i (b/a) sin(a s).  The factor winds by +pi per
    half period of a s when b > 0 and by -pi when b < 0; at b = 0 the curve
    passes through the origin and the lift takes the +pi convention (the
    b -> 0+ limit).
    """
    a, b = law.a, law.b
    as_ = a * s
    m = math.floor(as_ / math.pi)
    u = as_ - m * math.pi
    sigma = 1.0 if b >= 0.0 else -1.0
    theta = m * math.pi * sigma + math.atan2((b / a) * math.sin(u), math.cos(u))
    return law.omega * s + theta


def phase_piecewise(law: ExtremalLaw, s: float) -> float:
    """First-arc phase in its two-piece arctan form, for cross-checking.

    Valid for 0 <= s <= pi/a: omega s + arctan((b/a) tan(a s)), plus pi past
    the half-way point a s = pi/2.  Agrees with phase() exactly when b >= 0
    and modulo 2*pi otherwise.
    """
    a, b = law.a, law.b
    if not 0.0 <= a * s <= math.pi * (1.0 + 1e-12):
        raise ValueError("piecewise form only covers 0 <= s <= pi/a")
    base = law.omega * s + math.atan((b / a) * math.tan(a * s))
    if a * s > 0.5 * math.pi:
        base += math.pi
    return base


def phase_rate(law: ExtremalLaw, s: float) -> float:
    """d psi/ds = (a^2 - gamma^2 omega sin^2(a s)) / (a^2 cos^2 + b^2 sin^2).

    At b = 0 and a s = pi/2 (mod pi) the denominator vanishes; between the
    origin crossings the lift is psi(s) = omega s + const, so the removable
    value omega is reported there.
    """
    a, b = law.a, law.b
    cas, sas = math.cos(a * s), math.sin(a * s)
    den = a * a * cas * cas + b * b * sas * sas
    if den < 1e-24:
        return law.omega
    return (a * a - law.gamma ** 2 * law.omega * sas * sas) / den


def singular_time(psi_f: float) -> float:
    """Curve time of the singular (boundary) arc reaching diagonal phase psi_f.

    The singular control is u = 0; the disk image stays on the unit circle and
    advances phase at unit rate, so the time is psi_f itself.  Never optimal
    for psi_f in (0, 2*pi) when gamma > 0.
    """
    if not 0.0 <= psi_f <= 2.0 * math.pi:
        raise ValueError(f"psi_f must lie in [0, 2*pi], got {psi_f}")
    return float(psi_f)
