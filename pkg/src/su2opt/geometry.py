"""Disk geometry of the optimal synthesis.

The unit disk splits along the separatrix circle (the omega* trajectory).
Outside it, trajectories with omega < omega* fill the region simply; inside,
trajectories with omega in [omega*, omega_c] are optimal until they meet the
critical trajectory (the omega_c curve up to its cusp).  This module knows the
landmark curves, classifies points, and carries the descending/ascending phase
comparison functions used to locate the loss-of-optimality locus.

Everything here is proved for gamma >= 1/sqrt(3); for smaller gamma the same
computations run but carry an unproven-regime caveat (see unproven_regime()).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, Indeterminate, NoBracket, OutsideDisk, RadiusUnreachable
from .extremal import ExtremalLaw, disk_curve, model_constants
from .su2 import TWO_PI, DiskPoint

__all__ = [
    "Region",
    "DepartureSide",
    "Circle",
    "CriticalParam",
    "PROVEN_GAMMA_MIN",
    "unproven_regime",
    "separatrix",
    "classify",
    "delta",
    "delta_expanded",
    "delta_quartic_coeff",
    "initial_departure_side",
    "critical_point",
    "cusp_check",
    "phi_p",
    "phi_c",
    "phi_p_prime",
    "phi_c_prime",
    "f_eps",
    "f_eps_domega",
    "f_eps_dlambda",
    "zeta",
]

PROVEN_GAMMA_MIN = 1.0 / math.sqrt(3.0)


class Region(enum.Enum):
    IDENTITY = "identity"
    BOUNDARY = "boundary"
    OUTSIDE_SEPARATRIX = "outside_separatrix"
    ON_SEPARATRIX = "on_separatrix"
    INSIDE_SEPARATRIX = "inside_separatrix"
    ON_CRITICAL_TRAJECTORY = "on_critical_trajectory"
    ON_CRITICAL_CIRCLE = "on_critical_circle"


class DepartureSide(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_SEPARATRIX = "on_separatrix"


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class CriticalParam:
    """Position along the critical trajectory: lam = sin(a_c s) in [0, 1]."""

    lam: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")


def _lam_value(lam: float | CriticalParam) -> float:
    return lam.lam if isinstance(lam, CriticalParam) else float(lam)


def unproven_regime(gamma: float) -> bool:
    """True when the inside-separatrix synthesis is conjectural at this gamma."""
    return gamma < PROVEN_GAMMA_MIN - 1e-12


def separatrix(gamma: float) -> Circle:
    c = model_constants(gamma)
    return Circle(center=c.separatrix_center, radius=c.separatrix_radius)


def classify(gamma: float, point: DiskPoint, tol: float = 1e-9) -> Region:
    """Tag a disk point by its place in the synthesis.

    Order matters: identity and boundary first, then the separatrix side,
    then the critical landmarks before the generic inside tag.  Raises
    OutsideDisk for points beyond radius 1 + tol.
    """
    r = point.r
    if r > 1.0 + tol:
        raise OutsideDisk(f"point ({point.x}, {point.y}) has radius {r} > 1")
    if math.hypot(point.x - 1.0, point.y) <= tol:
        return Region.IDENTITY
    if r >= 1.0 - tol:
        return Region.BOUNDARY
    c = model_constants(gamma)
    cx, cy = c.separatrix_center
    d_sep = math.hypot(point.x - cx, point.y - cy) - c.separatrix_radius
    if abs(d_sep) <= tol:
        return Region.ON_SEPARATRIX
    if d_sep > 0.0:
        return Region.OUTSIDE_SEPARATRIX
    lam_sq = (1.0 - r * r) * (1.0 + gamma * gamma)
    if lam_sq <= 1.0 + tol:
        lam = math.sqrt(min(lam_sq, 1.0))
        cp = critical_point(gamma, lam)
        if math.hypot(point.x - cp.x, point.y - cp.y) <= tol:
            return Region.ON_CRITICAL_TRAJECTORY
    if abs(r - c.critical_circle_radius) <= tol:
        return Region.ON_CRITICAL_CIRCLE
    return Region.INSIDE_SEPARATRIX


def delta(law: ExtremalLaw, s: float) -> float:
    """Signed separatrix defect: |P(s) - center|^2 - radius^2 (0 on the circle)."""
    c = model_constants(law.gamma)
    p = disk_curve(law, s)
    cx, _ = c.separatrix_center
    return (p.x - cx) ** 2 + p.y ** 2 - c.separatrix_radius ** 2


def delta_expanded(law: ExtremalLaw, s: float) -> float:
    """Same defect through the expanded trigonometric identity (cross-check)."""
    g2 = law.gamma ** 2
    a = law.a
    p = disk_curve(law, s)
    sas = math.sin(a * s)
    return g2 * (2.0 / (1.0 + g2) - (sas * sas) / (a * a) - 2.0 * p.x / (1.0 + g2))


def delta_quartic_coeff(gamma: float, omega: float) -> float:
    """Leading small-s coefficient: delta(s) = gamma^2 * C4 * s^4 + O(s^6).

    The s^2 term cancels identically; C4 vanishes at omega = omega* (the
    curve stays on the separatrix) and at omega = 3*omega*, and its sign
    gives the initial departure side elsewhere.
    """
    b = 1.0 - omega
    a2 = b * b + gamma * gamma
    num = a2 * a2 + omega ** 4 + 6.0 * omega * omega * a2 \
        + 4.0 * b * omega * (a2 + omega * omega)
    return a2 / 3.0 - num / (12.0 * (1.0 + gamma * gamma))


def initial_departure_side(gamma: float, omega: float) -> DepartureSide:
    """Which side of the separatrix the omega-curve enters for small s > 0.

    Probes delta at s0 = 1e-3 (halving s0 up to five times if the value sits
    at the noise floor) and checks the sign against the quartic coefficient.
    """
    c = model_constants(gamma)
    if abs(omega - c.omega_star) <= 1e-12:
        return DepartureSide.ON_SEPARATRIX
    law = ExtremalLaw(gamma, omega)
    s0 = 1e-3
    value = None
    for _ in range(6):
        v = delta(law, s0)
        if abs(v) > 1e-15:
            value = v
            break
        s0 *= 0.5
    if value is None:
        raise Indeterminate(
            f"delta stayed below the noise floor near s=0 for omega={omega}, gamma={gamma}"
        )
    c4 = delta_quartic_coeff(gamma, omega)
    predicted = gamma * gamma * c4 * s0 ** 4
    if abs(predicted) > 1e-13 and predicted * value < 0.0:
        raise Indeterminate(
            f"probe sign {value} contradicts quartic prediction {predicted} "
            f"at omega={omega}, gamma={gamma}"
        )
    return DepartureSide.INSIDE if value < 0.0 else DepartureSide.OUTSIDE


def critical_point(gamma: float, lam: float | CriticalParam) -> DiskPoint:
    """Point of the critical trajectory at parameter lam = sin(a_c s)."""
    lam = _lam_value(lam)
    if not 0.0 <= lam <= 1.0 + 1e-12:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    c = model_constants(gamma)
    s = math.asin(min(lam, 1.0)) / c.a_c
    return disk_curve(ExtremalLaw(gamma, c.omega_c), s)


def cusp_check(gamma: float, h: float = 1e-6) -> tuple[float, float, float]:
    """Cusp time pi/(2 a_c) of the critical trajectory and the (vanishing)
    central-difference velocity there."""
    c = model_constants(gamma)
    s_cusp = 0.5 * math.pi / c.a_c
    law = ExtremalLaw(gamma, c.omega_c)
    p_plus = disk_curve(law, s_cusp + h)
    p_minus = disk_curve(law, s_cusp - h)
    return s_cusp, (p_plus.x - p_minus.x) / (2.0 * h), (p_plus.y - p_minus.y) / (2.0 * h)


# --- descending-branch / critical phase comparison -------------------------
#
# Positions at equal radius are indexed by lam = sin(a_c s_c) on the critical
# curve; a generic omega-curve is at the same radius where sin(a s) = a lam / a_c.


def phi_p(gamma: float, omega: float, lam: float | CriticalParam) -> float:
    """Descending-branch phase of the omega-curve at the radius indexed by lam."""
    lam = _lam_value(lam)
    c = model_constants(gamma)
    law = ExtremalLaw(gamma, omega)
    a = law.a
    arg = a * lam / c.a_c
    if arg > 1.0 + 1e-12:
        raise RadiusUnreachable(
            f"omega={omega} curve never descends to the lam={lam} radius (a lam > a_c)"
        )
    arg = min(arg, 1.0)
    root = math.sqrt(max(c.a_c ** 2 - a * a * lam * lam, 0.0))
    return (omega / a) * math.asin(arg) + math.atan2(law.b * lam, root)


def phi_c(gamma: float, lam: float | CriticalParam) -> float:
    """Phase of the critical trajectory itself at parameter lam."""
    lam = _lam_value(lam)
    c = model_constants(gamma)
    root = c.a_c * math.sqrt(max(1.0 - lam * lam, 0.0))
    return (c.omega_c / c.a_c) * math.asin(min(lam, 1.0)) \
        + math.atan2(-gamma * gamma * lam, root)


def phi_p_prime(gamma: float, omega: float, lam: float) -> float:
    """d phi_p / d lam in closed form."""
    c = model_constants(gamma)
    a2 = (1.0 - omega) ** 2 + gamma * gamma
    ac2 = c.a_c ** 2
    rad = ac2 - a2 * lam * lam
    if rad <= 0.0:
        raise DomainError(
            f"a*lam reaches a_c (omega={omega}, lam={lam}); derivative unbounded"
        )
    root = math.sqrt(rad)
    return (ac2 - omega * gamma ** 2 * lam * lam) / ((ac2 - gamma ** 2 * lam * lam) * root)


def phi_c_prime(gamma: float, lam: float) -> float:
    """d phi_c / d lam in closed form."""
    c = model_constants(gamma)
    ac2 = c.a_c ** 2
    return c.a_c * math.sqrt(1.0 - lam * lam) / (ac2 - gamma ** 2 * lam * lam)


# --- ascending-branch matching function F^eps ------------------------------


def f_eps(gamma: float, eps: float, lam: float | CriticalParam, omega: float) -> float:
    """Ascending-branch phase-match defect against the (eps-lowered) critical curve.

    F^eps(lam, omega) = 0 says the omega-curve, on its way back out, passes
    through the point at the lam radius whose phase sits eps*lam below the
    critical trajectory's.  Strictly decreasing in lam, strictly increasing
    in omega on [omega*, omega_c].
    """
    lam = _lam_value(lam)
    if eps < 0.0:
        raise DomainError(f"eps must be >= 0, got {eps}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    c = model_constants(gamma)
    if not c.omega_star - 1e-12 <= omega <= c.omega_c + 1e-12:
        raise DomainError(
            f"omega must lie in [omega*, omega_c] = [{c.omega_star}, {c.omega_c}], got {omega}"
        )
    law = ExtremalLaw(gamma, omega)
    a = law.a
    arg = a * lam / c.a_c
    if arg > 1.0 + 1e-12:
        raise DomainError(
            f"a*lam exceeds a_c (omega={omega}, lam={lam}); radius unreachable"
        )
    arg = min(arg, 1.0)
    root = math.sqrt(max(c.a_c ** 2 - a * a * lam * lam, 0.0))
    sq = math.sqrt(1.0 + gamma * gamma)
    return (
        (omega / a) * (math.pi - math.asin(arg))
        - math.atan2(law.b * lam, root)
        - math.pi
        - (sq / gamma) * math.asin(lam)
        + math.atan2(gamma * lam, sq * math.sqrt(max(1.0 - lam * lam, 0.0)))
        - eps * lam
    )


def f_eps_domega(gamma: float, eps: float, lam: float, omega: float) -> float:
    """Closed-form dF/domega; positive for omega < omega_c."""
    del eps  # the eps term carries no omega dependence
    c = model_constants(gamma)
    a2 = (1.0 - omega) ** 2 + gamma * gamma
    a = math.sqrt(a2)
    arg = min(a * lam / c.a_c, 1.0)
    rad = c.a_c ** 2 - a2 * lam * lam
    if rad <= 0.0:
        raise DomainError(
            f"a*lam reaches a_c (omega={omega}, lam={lam}); derivative unbounded"
        )
    root = math.sqrt(rad)
    lead = gamma * gamma + 1.0 - omega
    return lead * (math.pi - math.asin(arg)) / (a2 * a) + lam * lead / (a2 * root)


def f_eps_dlambda(gamma: float, eps: float, lam: float, omega: float) -> float:
    """Closed-form dF/dlambda; strictly negative on the domain."""
    g2 = gamma * gamma
    c = model_constants(gamma)
    a2 = (1.0 - omega) ** 2 + g2
    rad = c.a_c ** 2 - a2 * lam * lam
    if rad <= 0.0:
        raise DomainError(
            f"a*lam reaches a_c (omega={omega}, lam={lam}); derivative unbounded"
        )
    root = math.sqrt(rad)
    term1 = -(g2 + 1.0 - omega * lam * lam) / ((g2 + 1.0 - lam * lam) * root)
    term2 = -math.sqrt(g2 + 1.0) * math.sqrt(max(1.0 - lam * lam, 0.0)) \
        / (gamma * (g2 + 1.0 - lam * lam))
    return term1 + term2 - eps


def zeta(gamma: float, lam: float | CriticalParam, tol: float = 1e-12) -> float:
    """Frequency whose ascending branch meets the critical curve at parameter lam.

    Unique root in omega of F^0(lam, omega) on [omega*, omega_c]; zeta(0) =
    omega*, zeta(1) = omega_c, strictly increasing.  Bracketed bisection to a
    tol-wide interval.  Raises NoBracket when the endpoint signs are wrong
    (possible for gamma < 1/sqrt(3), where a(omega*) can exceed a_c and the
    construction is out of its proven regime).
    """
    lam = _lam_value(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    c = model_constants(gamma)
    # exact limits: F^0(0, omega*) and F^0(1, omega_c) vanish identically,
    # and at lam = 1 the bracket values sit below the float noise floor, so
    # bisection there would only recover the endpoint to ~1e-8
    if lam == 0.0:
        return c.omega_star
    if lam == 1.0:
        return c.omega_c
    lo, hi = c.omega_star, c.omega_c
    try:
        flo = f_eps(gamma, 0.0, lam, lo)
        fhi = f_eps(gamma, 0.0, lam, hi)
    except DomainError as exc:
        raise NoBracket(f"F^0 undefined at a bracket end for gamma={gamma}: {exc}") from exc
    if flo > 1e-10:
        raise NoBracket(
            f"F^0(lam={lam}, omega*) = {flo} > 0; no root in [omega*, omega_c] "
            f"for gamma={gamma}"
        )
    if fhi < -1e-10:
        raise NoBracket(
            f"F^0(lam={lam}, omega_c) = {fhi} < 0; no root in [omega*, omega_c] "
            f"for gamma={gamma}"
        )
    if flo >= 0.0:
        return lo
    if fhi <= 0.0:
        return hi
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        fm = f_eps(gamma, 0.0, lam, mid)
        if fm == 0.0:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
