"""Time-optimal control synthesis on SU(2) with bounded transverse drive.

The library computes, for a two-level system evolving under a fixed drift
plus a magnitude-bounded transverse control, the control law reaching a
target group element in minimum time.  Laws live in a two-parameter extremal
family (frequency omega, entry phase phi_tilde); synthesis reduces a target
to a point of the unit disk, classifies it against the separatrix geometry,
and inverts the appropriate trajectory family.
"""

from .errors import (
    AmbiguousBranch,
    BoundExceedsDrift,
    DegeneratePhase,
    DomainError,
    Indeterminate,
    NoBracket,
    NoConvergence,
    NotFound,
    NotUnitary,
    OutsideDisk,
    RadiusUnreachable,
    SingularAdjoint,
    Su2OptError,
    Unreachable,
)
from .extremal import (
    ExtremalLaw,
    ModelConstants,
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
from .geometry import (
    Circle,
    CriticalParam,
    DepartureSide,
    Region,
    classify,
    critical_point,
    cusp_check,
    delta,
    f_eps,
    f_eps_dlambda,
    f_eps_domega,
    initial_departure_side,
    phi_c,
    phi_c_prime,
    phi_p,
    phi_p_prime,
    separatrix,
    unproven_regime,
    zeta,
)
from .oracle import (
    AdjointState,
    FactsReport,
    GridMinimalityResult,
    PmpResiduals,
    grid_minimality,
    pmp_residual,
    rk4_propagate,
    verify_facts,
)
from .su2 import (
    IDENTITY,
    DiskPoint,
    Su2Matrix,
    TargetParams,
    disk_point,
    from_complex_pair,
    matrix_distance,
    multiply,
    normalize_problem,
    to_target_params,
    z_rotation,
)
from .synthesis import (
    SynthesisResult,
    TkmSolution,
    match_phase,
    radius_crossing_times,
    solve_tkm,
    synth_diagonal,
    synth_inside,
    synth_outside,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AdjointState",
    "AmbiguousBranch",
    "BoundExceedsDrift",
    "Circle",
    "CriticalParam",
    "DegeneratePhase",
    "DepartureSide",
    "DiskPoint",
    "DomainError",
    "ExtremalLaw",
    "FactsReport",
    "GridMinimalityResult",
    "IDENTITY",
    "Indeterminate",
    "ModelConstants",
    "NoBracket",
    "NoConvergence",
    "NotFound",
    "NotUnitary",
    "OutsideDisk",
    "PmpResiduals",
    "RadiusUnreachable",
    "Region",
    "SingularAdjoint",
    "Su2Matrix",
    "Su2OptError",
    "SynthesisResult",
    "TargetParams",
    "TkmSolution",
    "Unreachable",
    "classify",
    "controls_at",
    "critical_point",
    "curve_samples",
    "cusp_check",
    "delta",
    "disk_curve",
    "disk_point",
    "f_eps",
    "f_eps_dlambda",
    "f_eps_domega",
    "from_complex_pair",
    "grid_minimality",
    "initial_departure_side",
    "match_phase",
    "matrix_distance",
    "model_constants",
    "multiply",
    "normalize_problem",
    "phase",
    "phase_piecewise",
    "phase_rate",
    "phi_c",
    "phi_c_prime",
    "phi_p",
    "phi_p_prime",
    "pmp_residual",
    "propagate",
    "radius_crossing_times",
    "radius_sq",
    "rk4_propagate",
    "separatrix",
    "singular_time",
    "solve_tkm",
    "synth_diagonal",
    "synth_inside",
    "synth_outside",
    "synthesize",
    "to_target_params",
    "unproven_regime",
    "verify_facts",
    "z_rotation",
    "zeta",
]
