"""Optimal-control synthesis: map a target gate to its fastest control law.

The solver works in the unit-disk picture.  A target is reduced to its
diagonal-conjugation class (psi, M), placed at the disk point
P = (r cos psi, r sin psi) with r = sqrt(1 - M^2), and matched against the
one-parameter family of candidate trajectories.  Closed forms cover diagonal
targets and the special loci (origin, separatrix, critical trajectory);
everywhere else the law frequency comes from bracketed bisection on the
trajectory phase at the target radius.  The transverse phase phi_tilde is
attached at the end and never affects the time.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AmbiguousBranch,
    DegeneratePhase,
    DomainError,
    NoBracket,
    NoConvergence,
    NotFound,
    RadiusUnreachable,
    Unreachable,
)
from .extremal import ExtremalLaw, disk_curve, model_constants, phase, propagate
from .geometry import Region, classify, unproven_regime, zeta
from .oracle import grid_minimality
from .su2 import (
    IDENTITY,
    TWO_PI,
    DiskPoint,
    Su2Matrix,
    disk_point,
    from_complex_pair,
    matrix_distance,
    to_target_params,
)

__all__ = [
    "SynthesisResult",
    "TkmSolution",
    "synth_diagonal",
    "solve_tkm",
    "radius_crossing_times",
    "synth_outside",
    "synth_inside",
    "match_phase",
    "synthesize",
]

# Targets with |beta| at or below this are phase-free: leaving their
# transverse entry unmatched keeps the matrix residual under 1e-9.
PHASE_FREE_M = 3e-10
RESIDUAL_TOL = 1e-9
_BISECT_TOL = 1e-13
_MAX_ITER = 200
_SCAN = 257
_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SynthesisResult:
    """An optimal control law together with its bookkeeping.

    residual is the disk-point mismatch when produced by the region solvers
    and the full matrix mismatch when produced by synthesize.
    """

    gamma: float
    omega: float
    s_final: float
    phi_tilde: float
    region: Region
    residual: float
    unproven_regime: bool = False

    @property
    def T_curve(self) -> float:
        return self.s_final

    @property
    def T_physical(self) -> float:
        return 2.0 * self.s_final

    @property
    def law(self) -> ExtremalLaw:
        return ExtremalLaw(self.gamma, self.omega, self.phi_tilde)


@dataclass(frozen=True)
class TkmSolution:
    """Boundary returns after k half-arcs with m extra full phase windings.

    omega_roots and times run in parallel, fastest first; both are empty when
    the winding ratio is out of range.
    """

    k: int
    m: int
    omega_roots: tuple[float, ...]
    times: tuple[float, ...]

    @property
    def feasible(self) -> bool:
        return len(self.times) > 0

    @property
    def T(self) -> float:
        """Fastest return time; inf when infeasible."""
        return self.times[0] if self.times else math.inf


def _check_gamma(gamma: float) -> None:
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")


def _bisect(f, lo: float, hi: float, f_lo: float, f_hi: float,
            tol: float = _BISECT_TOL, max_iter: int = _MAX_ITER) -> float:
    """Bisection root of f on [lo, hi]; endpoint values must bracket zero."""
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoBracket(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi or hi - lo <= tol:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


# --- diagonal targets --------------------------------------------------------


def _diag_a(gamma: float, psi_f: float) -> float:
    """Frequency scale of the fastest single-arc boundary return with phase psi_f."""
    x = (psi_f - math.pi) / math.pi
    span = psi_f * (TWO_PI - psi_f) / (math.pi * math.pi)  # = 1 - x^2, stable at both ends
    root = math.sqrt(1.0 + gamma * gamma * span)
    if x < 0.0:
        return (root - x) / span
    return (1.0 + gamma * gamma) / (x + root)


def _diag_omega(gamma: float, psi_f: float) -> float:
    return (psi_f / math.pi - 1.0) * _diag_a(gamma, psi_f)


def synth_diagonal(gamma: float, psi_f: float) -> SynthesisResult:
    """Fastest law reaching the diagonal class with phase psi_f in (0, 2*pi).

    The law runs one full arc back to the boundary, s_final = pi/a, and lands
    exactly psi_f of phase.  Among all boundary returns this one is fastest,
    and it always beats the boundary-following singular arc of duration psi_f.
    """
    _check_gamma(gamma)
    if not 0.0 < psi_f < TWO_PI:
        raise DegeneratePhase(
            f"diagonal phase must lie strictly inside (0, 2*pi), got {psi_f}")
    a = _diag_a(gamma, psi_f)
    omega = (psi_f / math.pi - 1.0) * a
    s_final = math.pi / a
    p = disk_curve(ExtremalLaw(gamma, omega), s_final)
    residual = math.hypot(p.x - math.cos(psi_f), p.y - math.sin(psi_f))
    return SynthesisResult(gamma, omega, s_final, 0.0, Region.BOUNDARY, residual,
                           unproven_regime(gamma))


def solve_tkm(gamma: float, psi_f: float, k: int, m: int) -> TkmSolution:
    """All laws whose k-th boundary return lands phase psi_f plus m windings.

    Solving 1 + omega/a = (psi_f + 2*pi*m)/(k*pi) for the frequency gives a
    quadratic in a with at most two admissible roots; the solution is empty
    when the winding ratio falls outside (0, 1 + sqrt(1+gamma^2)/gamma].
    """
    _check_gamma(gamma)
    if k < 1 or int(k) != k:
        raise ValueError(f"k must be a positive integer, got {k}")
    if m < 0 or int(m) != m:
        raise ValueError(f"m must be a non-negative integer, got {m}")
    if not 0.0 < psi_f < TWO_PI:
        raise DegeneratePhase(
            f"diagonal phase must lie strictly inside (0, 2*pi), got {psi_f}")
    k, m = int(k), int(m)
    rho = (psi_f + TWO_PI * m) / (math.pi * k)
    cap = 1.0 + math.sqrt(1.0 + gamma * gamma) / gamma
    if rho <= 0.0 or rho > cap * (1.0 + 1e-15):
        return TkmSolution(k, m, (), ())
    al = rho - 1.0
    disc = 1.0 + gamma * gamma * (1.0 - al * al)
    if disc < 0.0:
        return TkmSolution(k, m, (), ())
    root = math.sqrt(disc)
    denom = 1.0 - al * al
    a_vals: list[float] = []
    if abs(denom) < 1e-12:
        if al > 0.0:
            a_vals.append((1.0 + gamma * gamma) / (2.0 * al))
    else:
        for cand in ((root - al) / denom, (-root - al) / denom):
            if cand > 1e-12 and all(abs(cand - u) > 1e-12 * max(1.0, cand)
                                    for u in a_vals):
                a_vals.append(cand)
    pairs = sorted((k * math.pi / av, al * av) for av in a_vals)
    return TkmSolution(k, m,
                       tuple(w for _, w in pairs),
                       tuple(t for t, _ in pairs))


# --- radius geometry ---------------------------------------------------------


def _crossing_times_q2(law: ExtremalLaw, q2: float) -> tuple[float, float]:
    """Crossing times for squared transverse magnitude q2 = 1 - r^2."""
    arg = law.a * math.sqrt(max(q2, 0.0)) / law.gamma
    if arg > 1.0 + 1e-12:
        raise Unreachable(
            f"radius below the turning radius {abs(law.b) / law.a:.6g} of "
            f"omega={law.omega:.6g}")
    arg = min(arg, 1.0)
    s_desc = math.asin(arg) / law.a
    return s_desc, math.pi / law.a - s_desc


def radius_crossing_times(law: ExtremalLaw, r_target: float) -> tuple[float, float]:
    """Curve times at which the trajectory radius equals r_target.

    Returns (s_desc, s_asc): the crossing on the way down and the mirrored
    crossing on the way back up, s_desc + s_asc = pi/a.
    """
    if not 0.0 <= r_target <= 1.0 + 1e-12:
        raise DomainError(f"radius must lie in [0, 1], got {r_target}")
    q2 = max(0.0, (1.0 - r_target) * (1.0 + r_target))
    return _crossing_times_q2(law, q2)


# --- shared root scanning ----------------------------------------------------


def _phase_roots(f_phase, lo: float, hi: float, psi_p: float,
                 n_scan: int = _SCAN) -> list[float]:
    """All x in [lo, hi] where f_phase(x) hits psi_p modulo 2*pi.

    f_phase must be continuous on the window (NaN entries are skipped); the
    integer lifts psi_p + 2*pi*k worth checking are read off the scanned
    range, and each sign change is polished by bisection.
    """
    if not hi > lo:
        return []
    xs = np.linspace(lo, hi, n_scan)
    vals = np.array([f_phase(float(x)) for x in xs])
    finite = np.isfinite(vals)
    if not finite.any():
        return []
    k_lo = math.ceil((float(vals[finite].min()) - psi_p) / TWO_PI - 1e-9)
    k_hi = math.floor((float(vals[finite].max()) - psi_p) / TWO_PI + 1e-9)
    roots: list[float] = []
    for kk in range(k_lo, k_hi + 1):
        tau = psi_p + TWO_PI * kk
        g = vals - tau
        for i in range(n_scan - 1):
            if not (finite[i] and finite[i + 1]):
                continue
            g0, g1 = float(g[i]), float(g[i + 1])
            if g0 == 0.0:
                roots.append(float(xs[i]))
                continue
            if (g0 > 0.0) != (g1 > 0.0):
                roots.append(_bisect(lambda x, t=tau: f_phase(x) - t,
                                     float(xs[i]), float(xs[i + 1]), g0, g1))
        if finite[-1] and g[-1] == 0.0:
            roots.append(float(xs[-1]))
    return roots


def _select_candidate(candidates: list[tuple[float, float, float]],
                      context: str) -> tuple[float, float, float]:
    """Earliest validated (s, omega, dist) candidate, after deduplication.

    Near-duplicates (same law found by more than one scan) are merged keeping
    the most accurate hit, since a scan running close to one of its fold
    plateaus can report the shared solution with a slightly skewed time.
    """
    candidates.sort()
    uniq: list[tuple[float, float, float]] = []
    for s_c, w_c, d_c in candidates:
        merged = False
        for j, (s_u, w_u, d_u) in enumerate(uniq):
            if abs(s_c - s_u) <= 1e-9 and abs(w_c - w_u) <= 1e-9:
                if d_c < d_u:
                    uniq[j] = (s_c, w_c, d_c)
                merged = True
                break
        if not merged:
            uniq.append((s_c, w_c, d_c))
    if not uniq:
        raise NoConvergence(context)
    uniq.sort()
    if len(uniq) >= 2 and uniq[1][0] - uniq[0][0] < 1e-12:
        raise AmbiguousBranch(
            f"two distinct laws reach the target at the same time "
            f"(omega={uniq[0][1]:.12g} and omega={uniq[1][1]:.12g})")
    return uniq[0]


# --- region solvers ----------------------------------------------------------


def synth_outside(gamma: float, point: DiskPoint,
                  m_target: float | None = None) -> SynthesisResult:
    """Optimal law for a target outside the separatrix.

    The search runs over the single-arc family indexed by its boundary-return
    phase psi_t: the frequency scale a(psi_t) falls monotonically from +inf
    to omega_star, so reachability of the target radius fixes a lower bracket
    end, and bisection on (trajectory phase at the target radius) - psi_P
    over both radius crossings locates the matching member.  A fold-local
    rescan covers targets at or near the deepest point of a member, where the
    two crossings coalesce and the per-branch scans lose resolution.  m_target
    may supply |beta| exactly when the radius sits too close to 1 for the disk
    coordinates to resolve it.
    """
    _check_gamma(gamma)
    region = classify(gamma, point)
    if region not in (Region.OUTSIDE_SEPARATRIX, Region.BOUNDARY):
        raise DomainError(
            f"target classifies as {region.value}, not outside the separatrix")
    psi_p = point.psi
    if m_target is not None:
        q2 = float(m_target) ** 2
    else:
        q2 = max(0.0, (1.0 - point.r) * (1.0 + point.r))
    if q2 <= PHASE_FREE_M * PHASE_FREE_M:
        return synth_diagonal(gamma, psi_p)

    c = model_constants(gamma)
    a_cap = gamma / math.sqrt(q2)  # fastest member that still reaches the radius
    if a_cap <= c.omega_star:
        raise RadiusUnreachable(
            f"no single-arc law reaches radius {math.sqrt(1.0 - q2):.6g} "
            f"outside the separatrix")

    def a_of(psi_t: float) -> float:
        return _diag_a(gamma, psi_t)

    psi_floor = 1e-14
    if a_of(psi_floor) <= a_cap:
        psi_lo = psi_floor
    else:
        psi_lo = _bisect(lambda p: a_of(p) - a_cap, psi_floor, TWO_PI - 1e-12,
                         a_of(psi_floor) - a_cap, a_of(TWO_PI - 1e-12) - a_cap,
                         tol=1e-15)
    lo, hi = psi_lo + 1e-13, TWO_PI - 1e-12

    def phase_at(psi_t: float, branch: int) -> float:
        law = ExtremalLaw(gamma, _diag_omega(gamma, psi_t))
        try:
            s_pair = _crossing_times_q2(law, q2)
        except Unreachable:
            return math.nan
        return phase(law, s_pair[branch])

    candidates: list[tuple[float, float, float]] = []
    for branch in (0, 1):
        for psi_root in _phase_roots(lambda p, br=branch: phase_at(p, br),
                                     lo, hi, psi_p):
            law = ExtremalLaw(gamma, _diag_omega(gamma, psi_root))
            try:
                s_cand = _crossing_times_q2(law, q2)[branch]
            except Unreachable:
                continue
            p_hit = disk_curve(law, s_cand)
            dist = math.hypot(p_hit.x - point.x, p_hit.y - point.y)
            if dist <= RESIDUAL_TOL:
                candidates.append((s_cand, law.omega, dist))

    # Near a = a_cap the two crossings coalesce (the member is tangent to the
    # target radius) and the per-branch phase develops a square-root fold that
    # the uniform scan above cannot resolve.  Substituting a = a_cap (1 - t^2)
    # with t < 0 on the descending crossing and t > 0 on the ascending one
    # unfolds it: sin(a s) = 1 - t^2 gives a s = pi/2 + sqrt(2) t + O(t^2), so
    # the crossing phase is C^1 through t = 0 and ordinary scanning works.
    t_loc = min(1e-3, 0.5 * math.sqrt(1.0 - c.omega_star / a_cap))

    def fold_law_time(t: float) -> tuple[ExtremalLaw, float]:
        a_val = a_cap * (1.0 - t * t)
        law = ExtremalLaw(gamma, 1.0 - math.sqrt(a_val * a_val - gamma * gamma))
        # s solves sin(a s) = 1 - t^2 on the branch picked by sign(t); the
        # half-angle form asin(1 - t^2) = pi/2 - 2 asin(t/sqrt(2)) keeps full
        # precision in t where the direct asin flattens to float plateaus.
        return law, (0.5 * math.pi + 2.0 * math.asin(t / _SQRT2)) / law.a

    for t_root in _phase_roots(lambda t: phase(*fold_law_time(t)),
                               -t_loc, t_loc, psi_p):
        law, s_cand = fold_law_time(t_root)
        p_hit = disk_curve(law, s_cand)
        dist = math.hypot(p_hit.x - point.x, p_hit.y - point.y)
        if dist <= RESIDUAL_TOL:
            candidates.append((s_cand, law.omega, dist))

    s_f, w_f, d_f = _select_candidate(
        candidates,
        f"no outside-family member matches psi={psi_p:.6g} at "
        f"r={math.sqrt(max(0.0, 1.0 - q2)):.6g} "
        f"(return-phase bracket [{lo:.6g}, {hi:.6g}])")
    return SynthesisResult(gamma, w_f, s_f, 0.0, region, d_f,
                           unproven_regime(gamma))


def _validate_against_grid(gamma: float, point: DiskPoint,
                           result: SynthesisResult,
                           window: tuple[float, float]) -> None:
    """Cross-check an unproven-regime answer against the brute-force oracle."""
    try:
        g = grid_minimality(gamma, point, window,
                            s_max=result.s_final * 1.05 + 0.2,
                            n_omega=81, n_s=1501, tol_hit=1e-2)
    except NotFound as exc:
        raise NoConvergence(
            "unproven-regime synthesis not corroborated: the grid oracle "
            "found no passage near the target") from exc
    if g.best_s < result.s_final - 0.1:
        raise NoConvergence(
            f"unproven-regime synthesis contradicted by the grid oracle: "
            f"grid passage at s={g.best_s:.6g} vs synthesized "
            f"s={result.s_final:.6g}")


def synth_inside(gamma: float, point: DiskPoint,
                 m_target: float | None = None) -> SynthesisResult:
    """Optimal law for a target inside (or on) the separatrix.

    Special loci use closed forms: the origin takes the resonant law for a
    quarter turn, the separatrix itself is the omega_star trajectory traversed
    at uniform angular rate omega_c about its center, and points on the
    critical trajectory belong to the omega_c law.  Generic points bisect the
    branch-resolved trajectory phase at the target radius over the frequency
    window that reaches it.  Ascending-branch candidates whose law crosses the
    critical trajectory before the passage are discarded, and the earliest
    surviving passage wins.  Below gamma = 1/sqrt(3) the same computation is
    flagged unproven_regime and cross-checked against a coarse grid oracle.
    """
    _check_gamma(gamma)
    region = classify(gamma, point)
    if region not in (Region.INSIDE_SEPARATRIX, Region.ON_SEPARATRIX,
                      Region.ON_CRITICAL_TRAJECTORY, Region.ON_CRITICAL_CIRCLE):
        raise DomainError(
            f"target classifies as {region.value}, not inside the separatrix")
    c = model_constants(gamma)
    flag = unproven_regime(gamma)
    if m_target is not None:
        q2 = float(m_target) ** 2
    else:
        q2 = max(0.0, (1.0 - point.r) * (1.0 + point.r))
    r_p = math.sqrt(max(0.0, 1.0 - q2))
    psi_p = point.psi

    if r_p <= 1e-9:
        # Origin: the resonant law erases the diagonal part in a quarter turn.
        law = ExtremalLaw(gamma, 1.0)
        s_f = math.pi / (2.0 * gamma)
        p_hit = disk_curve(law, s_f)
        res = math.hypot(p_hit.x - point.x, p_hit.y - point.y)
        return SynthesisResult(gamma, 1.0, s_f, 0.0, region, res, flag)

    if region is Region.ON_SEPARATRIX:
        cx = c.separatrix_center[0]
        angle = math.atan2(point.y, point.x - cx) % TWO_PI
        s_f = angle / c.omega_c
        p_hit = disk_curve(ExtremalLaw(gamma, c.omega_star), s_f)
        res = math.hypot(p_hit.x - point.x, p_hit.y - point.y)
        return SynthesisResult(gamma, c.omega_star, s_f, 0.0, region, res, flag)

    if region is Region.ON_CRITICAL_TRAJECTORY:
        lam = min(1.0, math.sqrt(q2 * (1.0 + gamma * gamma)))
        s_f = math.asin(lam) / c.a_c
        p_hit = disk_curve(ExtremalLaw(gamma, c.omega_c), s_f)
        res = math.hypot(p_hit.x - point.x, p_hit.y - point.y)
        return SynthesisResult(gamma, c.omega_c, s_f, 0.0, region, res, flag)

    q = math.sqrt(q2)
    half_width = gamma * r_p / q
    w_lo = max(c.omega_star, 1.0 - half_width)
    w_hi = min(c.omega_c, 1.0 + half_width)

    # Ascending passages of laws past zeta(lambda_P) happen after the law has
    # crossed the critical trajectory and are no longer optimal.  Points
    # deeper than the critical circle (lam_p > 1) are passed before any
    # crossing, so no cap applies there.
    zeta_cap = None
    lam_p = math.sqrt(q2 * (1.0 + gamma * gamma))
    if lam_p <= 1.0 + 1e-9:
        try:
            zeta_cap = zeta(gamma, min(1.0, lam_p))
        except (NoBracket, DomainError):
            zeta_cap = None

    def phase_at(w: float, branch: int) -> float:
        law = ExtremalLaw(gamma, w)
        try:
            s_pair = _crossing_times_q2(law, q2)
        except Unreachable:
            return math.nan
        return phase(law, s_pair[branch])

    candidates: list[tuple[float, float, float]] = []

    def try_candidate(w: float, branch: int) -> None:
        law = ExtremalLaw(gamma, w)
        try:
            s_cand = _crossing_times_q2(law, q2)[branch]
        except Unreachable:
            return
        if branch == 1 and zeta_cap is not None and w > zeta_cap + 1e-9:
            return
        p_hit = disk_curve(law, s_cand)
        dist = math.hypot(p_hit.x - point.x, p_hit.y - point.y)
        if dist <= RESIDUAL_TOL:
            candidates.append((s_cand, law.omega, dist))

    for w_root in _phase_roots(lambda w: phase_at(w, 0), w_lo, w_hi, psi_p):
        try_candidate(w_root, 0)
    # The ascending-branch phase jumps by 2*pi where b = 1 - omega changes
    # sign, so the two sign-definite windows are scanned separately.
    for sub_lo, sub_hi in ((w_lo, min(1.0, w_hi)),
                           (max(1.0 + 1e-15, w_lo), w_hi)):
        for w_root in _phase_roots(lambda w: phase_at(w, 1), sub_lo, sub_hi,
                                   psi_p):
            try_candidate(w_root, 1)

    s_f, w_f, d_f = _select_candidate(
        candidates,
        f"no inside-family member matches psi={psi_p:.6g} at r={r_p:.6g} "
        f"(frequency window [{w_lo:.6g}, {w_hi:.6g}])")
    result = SynthesisResult(gamma, w_f, s_f, 0.0, region, d_f, flag)
    if flag:
        grid_window = (max(w_lo, c.omega_star - 1.0), min(w_hi, c.omega_c + 1.0))
        _validate_against_grid(gamma, point, result, grid_window)
    return result


# --- phase matching and the dispatcher ---------------------------------------


def match_phase(gamma: float, omega: float, s_final: float,
                target: Su2Matrix) -> float:
    """Initial control phase aligning the law's transverse output with the target.

    The propagated transverse entry carries phase omega*s_final + phi_tilde,
    plus pi on the second half-arc where sin(a s_final) < 0; solving for
    phi_tilde and lifting to [0, 2*pi) matches arg(beta).  Targets with
    |beta| at rounding level are phase-free and get 0.
    """
    _check_gamma(gamma)
    if abs(target.beta) <= PHASE_FREE_M:
        return 0.0
    law = ExtremalLaw(gamma, omega)
    sin_as = math.sin(law.a * s_final)
    if abs(sin_as) < 1e-15:
        raise DomainError(
            "the law lands on a diagonal state; a nonzero target beta "
            "cannot be phase-matched")
    phi = cmath.phase(target.beta) - omega * s_final
    if sin_as < 0.0:
        phi -= math.pi
    return phi % TWO_PI


def synthesize(gamma: float, target: Su2Matrix) -> SynthesisResult:
    """Time-optimal control law for an arbitrary target gate.

    Dispatch: identity targets take zero time; targets with a vanishing
    transverse entry use the diagonal closed form; everything else goes to
    the outside or inside solver according to where the target falls relative
    to the separatrix.  The returned residual is the full matrix distance of
    the propagated law from the (unitarized) target.

    Raises DegeneratePhase for targets that sit within tolerance of the
    identity class without being the identity: their synthesis is not
    resolvable at the working precision.
    """
    _check_gamma(gamma)
    t = from_complex_pair(target.alpha, target.beta)
    dist_id = matrix_distance(t, IDENTITY)
    if dist_id <= RESIDUAL_TOL:
        return SynthesisResult(gamma, 0.0, 0.0, 0.0, Region.IDENTITY, dist_id,
                               unproven_regime(gamma))
    params = to_target_params(t)
    if params.M <= PHASE_FREE_M:
        if not 0.0 < params.psi < TWO_PI:
            raise DegeneratePhase(
                "target is indistinguishable from the identity class at "
                "working precision")
        base = synth_diagonal(gamma, params.psi)
        final = propagate(base.law, base.s_final)
        return SynthesisResult(gamma, base.omega, base.s_final, 0.0,
                               base.region, matrix_distance(final, t),
                               base.unproven_regime)
    p = disk_point(t)
    region = classify(gamma, p)
    if region is Region.IDENTITY:
        raise DegeneratePhase(
            "target lies within tolerance of the identity in the disk but "
            "carries an unresolvable transverse part")
    if region in (Region.BOUNDARY, Region.OUTSIDE_SEPARATRIX):
        base = synth_outside(gamma, p, m_target=params.M)
    else:
        base = synth_inside(gamma, p, m_target=params.M)
    phi = match_phase(gamma, base.omega, base.s_final, t)
    final = propagate(ExtremalLaw(gamma, base.omega, phi), base.s_final)
    return SynthesisResult(gamma, base.omega, base.s_final, phi, base.region,
                           matrix_distance(final, t), base.unproven_regime)
