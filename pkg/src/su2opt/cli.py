"""Command-line surface: synthesize gates, trace and export trajectory
families, and run the verification suites.

Four subcommands share one convention set: gamma is always explicit, CSV
carries full double precision, JSON keys are sorted, and identical inputs
produce byte-identical output.  Exit codes: 0 success, 1 verification
failure, 2 usage error, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .errors import DomainError, NoBracket, NotUnitary, RadiusUnreachable, \
    Su2OptError
from .extremal import ExtremalLaw, controls_at, curve_samples, \
    model_constants, phase, propagate
from .geometry import delta, f_eps, f_eps_dlambda, f_eps_domega, phi_c, \
    phi_p, zeta
from .oracle import pmp_residual, rk4_propagate, verify_facts
from .su2 import Su2Matrix, from_complex_pair, matrix_distance
from .synthesis import RESIDUAL_TOL, solve_tkm, synth_diagonal, synthesize

_NAMED_GATES = {
    "identity": Su2Matrix(1.0 + 0.0j, 0.0 + 0.0j),
    "swap": Su2Matrix(0.0 + 0.0j, 1.0 + 0.0j),
    "hadamard": Su2Matrix(complex(1.0 / math.sqrt(2.0), 0.0),
                          complex(1.0 / math.sqrt(2.0), 0.0)),
}

_ATLAS_PRESETS = ("diagonal-family", "inside-family", "swap-family")
_VERIFY_SUITES = ("facts", "appendix-a", "appendix-b", "oracle")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_gate(text: str) -> Su2Matrix:
    """Resolve a gate description to a group element.

    Accepts the named gates, phase(theta)/diag(psi) with their argument in
    parentheses or after a colon, or four comma-separated floats
    alpha_re,alpha_im,beta_re,beta_im.
    """
    name = text.strip()
    lowered = name.lower()
    if lowered in _NAMED_GATES:
        return _NAMED_GATES[lowered]
    for prefix in ("phase", "diag"):
        if lowered.startswith(prefix):
            rest = name[len(prefix):].strip()
            if rest.startswith("(") and rest.endswith(")"):
                rest = rest[1:-1]
            elif rest.startswith(":"):
                rest = rest[1:]
            else:
                raise ValueError(f"malformed gate {text!r}")
            angle = float(rest)
            if prefix == "diag":
                return Su2Matrix(cmath.exp(1j * angle), 0.0 + 0.0j)
            # phase(theta) = diag(e^{-i theta/2}, e^{i theta/2})
            return Su2Matrix(cmath.exp(-0.5j * angle), 0.0 + 0.0j)
    parts = name.split(",")
    if len(parts) != 4:
        raise ValueError(
            f"gate {text!r} is neither a known name nor four comma-separated "
            f"floats")
    a_re, a_im, b_re, b_im = (float(p) for p in parts)
    return from_complex_pair(complex(a_re, a_im), complex(b_re, b_im))


def _resolve_tol(args: argparse.Namespace) -> float:
    """Residual tolerance: --tol beats SU2OPT_TOL beats the default."""
    if args.tol is not None:
        tol = float(args.tol)
    else:
        env = os.environ.get("SU2OPT_TOL")
        if env is None:
            return RESIDUAL_TOL
        try:
            tol = float(env)
        except ValueError as exc:
            raise ValueError(f"SU2OPT_TOL={env!r} is not a float") from exc
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return tol


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _check_gamma_arg(gamma: float) -> str | None:
    if not 0.0 < gamma <= 1.0:
        return f"gamma must lie in (0, 1], got {gamma}"
    return None


# --- synthesize ---------------------------------------------------------------


def cmd_synthesize(args: argparse.Namespace) -> int:
    bad = _check_gamma_arg(args.gamma)
    if bad:
        print(bad, file=sys.stderr)
        return 2
    try:
        tol = _resolve_tol(args)
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return 2
    if args.samples < 2:
        print(f"samples must be >= 2, got {args.samples}", file=sys.stderr)
        return 2
    try:
        target = _parse_gate(args.gate)
    except (ValueError, NotUnitary) as exc:
        print(f"invalid gate: {exc}", file=sys.stderr)
        return 2
    try:
        result = synthesize(args.gamma, target)
    except Su2OptError as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return 3
    if result.residual > tol:
        print(
            f"synthesis residual {result.residual:.3e} exceeds tolerance "
            f"{tol:.3e}", file=sys.stderr)
        return 3

    law = result.law
    if result.s_final > 0.0:
        s_grid = np.linspace(0.0, result.s_final, args.samples)
    else:
        s_grid = np.array([0.0])
    xs, ys = curve_samples(law, s_grid)
    rows = []
    for s_val, x, y in zip(s_grid, xs, ys):
        t_phys = 2.0 * float(s_val)
        u_x, u_y = controls_at(law, t_phys)
        rows.append((t_phys, u_x, u_y, float(s_val), float(x), float(y)))

    if args.format == "json":
        doc = {
            "command": "synthesize",
            "gamma": args.gamma,
            "gate": args.gate,
            "target": {
                "alpha_re": target.alpha.real,
                "alpha_im": target.alpha.imag,
                "beta_re": target.beta.real,
                "beta_im": target.beta.imag,
            },
            "result": {
                "omega": result.omega,
                "s_final": result.s_final,
                "phi_tilde": result.phi_tilde,
                "T_curve": result.T_curve,
                "T_physical": result.T_physical,
                "region": result.region.value,
                "residual": result.residual,
                "unproven_regime": result.unproven_regime,
            },
            "tolerance": tol,
            "controls": [[t, ux, uy] for t, ux, uy, _, _, _ in rows],
            "trajectory": [[s, x, y] for _, _, _, s, x, y in rows],
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = [
            f"# command=synthesize gamma={_fmt(args.gamma)} gate={args.gate}",
            f"# omega={_fmt(result.omega)} s_final={_fmt(result.s_final)} "
            f"phi_tilde={_fmt(result.phi_tilde)}",
            f"# T_curve={_fmt(result.T_curve)} "
            f"T_physical={_fmt(result.T_physical)} "
            f"region={result.region.value} residual={_fmt(result.residual)} "
            f"unproven_regime={str(result.unproven_regime).lower()}",
            "t_phys,u_x,u_y,s,x,y",
        ]
        for t, ux, uy, s_val, x, y in rows:
            lines.append(",".join(_fmt(v) for v in (t, ux, uy, s_val, x, y)))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# --- trace --------------------------------------------------------------------


def cmd_trace(args: argparse.Namespace) -> int:
    bad = _check_gamma_arg(args.gamma)
    if bad:
        print(bad, file=sys.stderr)
        return 2
    if args.samples < 2:
        print(f"samples must be >= 2, got {args.samples}", file=sys.stderr)
        return 2
    if not args.s_max > 0.0:
        print(f"s-max must be positive, got {args.s_max}", file=sys.stderr)
        return 2
    law = ExtremalLaw(args.gamma, args.omega)
    s_grid = np.linspace(0.0, args.s_max, args.samples)
    xs, ys = curve_samples(law, s_grid)
    lines = [
        f"# command=trace gamma={_fmt(args.gamma)} omega={_fmt(args.omega)} "
        f"s_max={_fmt(args.s_max)} samples={args.samples}",
        "s,x,y,r,psi,delta",
    ]
    for s_val, x, y in zip(s_grid, xs, ys):
        s_f = float(s_val)
        r = math.hypot(float(x), float(y))
        lines.append(",".join(_fmt(v) for v in (
            s_f, float(x), float(y), r, phase(law, s_f), delta(law, s_f))))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# --- atlas --------------------------------------------------------------------


def _curve_rows(label: str, gamma: float, omega: float, s_end: float,
                samples: int) -> list[tuple[str, float, float, float, float, float]]:
    law = ExtremalLaw(gamma, omega)
    s_grid = np.linspace(0.0, s_end, samples)
    xs, ys = curve_samples(law, s_grid)
    return [(label, gamma, omega, float(s), float(x), float(y))
            for s, x, y in zip(s_grid, xs, ys)]


def _loss_time(gamma: float, omega: float) -> float:
    """Curve time at which an inside-family law stops being optimal.

    The law loses optimality when it meets the critical trajectory on its
    ascending branch; the meeting level lambda solves zeta(lambda) = omega.
    Falls back to the full half-arc when the root is unavailable.
    """
    c = model_constants(gamma)
    law = ExtremalLaw(gamma, omega)
    if omega <= c.omega_star:
        return math.pi / law.a
    lo, hi = 0.0, 1.0
    try:
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if zeta(gamma, mid) < omega:
                lo = mid
            else:
                hi = mid
    except (NoBracket, DomainError):
        return math.pi / law.a
    lam = 0.5 * (lo + hi)
    return math.pi / law.a - math.asin(
        min(1.0, law.a * lam / c.a_c)) / law.a


def _atlas_curves(gamma: float, preset: str,
                  samples: int) -> list[tuple[str, float, float, float, float, float]]:
    c = model_constants(gamma)
    rows: list[tuple[str, float, float, float, float, float]] = []

    def base_curves(g: float, suffix: str = "") -> None:
        cg = model_constants(g)
        sep_law = ExtremalLaw(g, cg.omega_star)
        rows.extend(_curve_rows("separatrix" + suffix, g, cg.omega_star,
                                math.pi / sep_law.a, samples))
        rows.extend(_curve_rows("critical" + suffix, g, cg.omega_c,
                                0.5 * math.pi / cg.a_c, samples))

    if preset == "diagonal-family":
        omegas = [("-3", -3.0), ("0", 0.0), ("1/2", 0.5)]
        if 8.0 / 9.0 < c.omega_star:
            omegas.append(("8/9", 8.0 / 9.0))
        for name, w in omegas:
            law = ExtremalLaw(gamma, w)
            rows.extend(_curve_rows(f"omega={name}", gamma, w,
                                    math.pi / law.a, samples))
        base_curves(gamma)
    elif preset == "inside-family":
        for mult in ("1.1", "1.2", "1.5", "1.8"):
            w = float(mult) * c.omega_star
            rows.extend(_curve_rows(f"omega={mult}*omega_star", gamma,
                                    w, _loss_time(gamma, w), samples))
        base_curves(gamma)
    elif preset == "swap-family":
        for name, g in (("2/7", 2.0 / 7.0), ("1/2", 0.5),
                        ("2/3", 2.0 / 3.0), ("1", 1.0)):
            rows.extend(_curve_rows(f"swap gamma={name}", g, 1.0,
                                    math.pi / g, samples))
            base_curves(g, f" gamma={name}")
    return rows


def _atlas_svg(rows: list[tuple[str, float, float, float, float, float]]) -> str:
    """Hand-written SVG: one polyline per curve over the unit disk."""
    palette = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b",
               "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e")

    def sx(x: float) -> str:
        return f"{240.0 + 200.0 * x:.2f}"

    def sy(y: float) -> str:
        return f"{240.0 - 200.0 * y:.2f}"

    curves: dict[str, list[tuple[float, float]]] = {}
    for label, _, _, _, x, y in rows:
        curves.setdefault(label, []).append((x, y))
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="480" height="480" '
        'viewBox="0 0 480 480">',
        '<circle cx="240" cy="240" r="200" fill="none" stroke="#000000" '
        'stroke-width="1"/>',
    ]
    for i, (label, pts) in enumerate(curves.items()):
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in pts)
        color = palette[i % len(palette)]
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{coords}"><title>{label}</title></polyline>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_atlas(args: argparse.Namespace) -> int:
    bad = _check_gamma_arg(args.gamma)
    if bad:
        print(bad, file=sys.stderr)
        return 2
    if args.preset not in _ATLAS_PRESETS:
        print(f"unknown preset {args.preset!r}; choose from "
              f"{', '.join(_ATLAS_PRESETS)}", file=sys.stderr)
        return 2
    if args.samples < 2:
        print(f"samples must be >= 2, got {args.samples}", file=sys.stderr)
        return 2
    rows = _atlas_curves(args.gamma, args.preset, args.samples)
    lines = [
        f"# command=atlas gamma={_fmt(args.gamma)} preset={args.preset} "
        f"samples={args.samples}",
        "curve,gamma,omega,s,x,y",
    ]
    for label, g, w, s_val, x, y in rows:
        lines.append(label + "," + ",".join(
            _fmt(v) for v in (g, w, s_val, x, y)))
    _emit("\n".join(lines) + "\n", args.out)
    if args.svg is not None:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(_atlas_svg(rows))
    return 0


# --- verify -------------------------------------------------------------------


def _suite_facts(gamma: float, tol: float) -> list[dict]:
    report = verify_facts(gamma)
    checks = []
    for name, value in report.to_dict().items():
        if name in ("gamma", "phase_counterexample", "passed"):
            continue
        checks.append({"check": name, "passed": bool(value)})
    checks.append({
        "check": "phase_counterexample_recorded",
        "passed": report.phase_counterexample is not None,
    })
    return checks

def _suite_appendix_a(gamma: float, tol: float) -> list[dict]:
    """Boundary targets: the single half-arc return is the fastest one."""
    checks = []
    worst_gap = math.inf
    worst_resid = 0.0
    for psi_f in np.linspace(0.12, 2.0 * math.pi - 0.12, 21):
        base = synth_diagonal(gamma, float(psi_f))
        best_multi = math.inf
        for k in range(1, 7):
            for m in range(0, 7):
                if k == 1 and m == 0:
                    continue
                sol = solve_tkm(gamma, float(psi_f), k, m)
                if sol.feasible:
                    best_multi = min(best_multi, sol.T)
        t10 = solve_tkm(gamma, float(psi_f), 1, 0)
        worst_resid = max(worst_resid, abs(t10.T - base.T_curve))
        worst_gap = min(worst_gap, best_multi - base.T_curve)
    checks.append({
        "check": "single_return_matches_closed_form",
        "passed": worst_resid <= 1e-10,
        "worst": worst_resid,
    })
    checks.append({
        "check": "multi_return_never_faster",
        "passed": worst_gap > 0.0,
        "worst_margin": worst_gap,
    })
    singular_margin = math.inf
    for psi_f in np.linspace(0.12, 2.0 * math.pi - 0.12, 21):
        base = synth_diagonal(gamma, float(psi_f))
        singular_margin = min(singular_margin, float(psi_f) - base.T_curve)
    checks.append({
        "check": "beats_singular_arc",
        "passed": singular_margin > 0.0,
        "worst_margin": singular_margin,
    })
    return checks


def _suite_appendix_b(gamma: float, tol: float) -> list[dict]:
    checks = []
    lam_grid = np.linspace(1e-2, 1.0 - 1e-3, 60)
    c = model_constants(gamma)

    # Descending-branch phase stays above the critical trajectory's wherever
    # the radius is reachable at all.  Strict only below omega_c: at omega_c
    # the member IS the critical trajectory, so that endpoint is excluded.
    margin = math.inf
    for w in np.linspace(c.omega_star, c.omega_c, 11)[:-1]:
        for lam in lam_grid:
            try:
                gap = phi_p(gamma, float(w), float(lam)) - phi_c(gamma, float(lam))
            except RadiusUnreachable:
                continue
            margin = min(margin, gap)
    checks.append({"check": "phase_gap_positive", "passed": bool(margin > 0.0),
                   "worst_margin": float(margin)})

    h = 1e-6
    worst_fd = 0.0
    sign_ok = True
    for eps in (0.0, 0.02):
        for lam in (0.15, 0.5, 0.85):
            for w in np.linspace(c.omega_star + 0.02, c.omega_c - 0.02, 5):
                try:
                    dw = f_eps_domega(gamma, eps, lam, float(w))
                    dl = f_eps_dlambda(gamma, eps, lam, float(w))
                    fd_w = (f_eps(gamma, eps, lam, float(w) + h)
                            - f_eps(gamma, eps, lam, float(w) - h)) / (2 * h)
                    fd_l = (f_eps(gamma, eps, lam + h, float(w))
                            - f_eps(gamma, eps, lam - h, float(w))) / (2 * h)
                except (DomainError, NoBracket):
                    continue
                sign_ok = sign_ok and dw > 0.0 and dl < 0.0
                worst_fd = max(worst_fd, abs(dw - fd_w), abs(dl - fd_l))
    checks.append({"check": "partial_signs", "passed": sign_ok})
    checks.append({"check": "partials_match_finite_differences",
                   "passed": worst_fd <= 1e-6, "worst": worst_fd})

    try:
        z0 = zeta(gamma, 0.0)
        z1 = zeta(gamma, 1.0)
        ends_ok = (abs(z0 - c.omega_star) <= 1e-9
                   and abs(z1 - c.omega_c) <= 1e-9)
        zs = [zeta(gamma, float(l)) for l in np.linspace(0.0, 1.0, 40)]
        mono = all(b > a for a, b in zip(zs, zs[1:]))
        checks.append({"check": "zeta_endpoints", "passed": ends_ok,
                       "zeta0": z0, "zeta1": z1})
        checks.append({"check": "zeta_increasing", "passed": mono})
    except (NoBracket, DomainError) as exc:
        checks.append({"check": "zeta_endpoints", "passed": False,
                       "error": str(exc)})
        checks.append({"check": "zeta_increasing", "passed": False,
                       "error": str(exc)})
    return checks


def _suite_oracle(gamma: float, tol: float) -> list[dict]:
    checks = []
    c = model_constants(gamma)
    worst = 0.0
    for w in (-2.0, 0.0, 0.5 * c.omega_star, 1.0, c.omega_c, 2.5):
        for phi in (0.0, 2.1):
            law = ExtremalLaw(gamma, w, phi)
            s_end = min(2.0 * math.pi, 0.95 * math.pi / law.a)
            exact = propagate(law, s_end)
            num = rk4_propagate(law, s_end, steps=20_000)
            worst = max(worst, matrix_distance(exact, num))
    checks.append({"check": "closed_form_vs_rk4",
                   "passed": bool(worst <= 1e-8), "worst": float(worst)})

    worst_pmp = 0.0
    for w in (0.0, 1.0, c.omega_c):
        law = ExtremalLaw(gamma, w, 1.0)
        res = pmp_residual(law, 0.8 * math.pi / law.a, steps=20_000)
        worst_pmp = max(worst_pmp, float(res.worst))
    checks.append({"check": "pmp_residuals", "passed": bool(worst_pmp <= 1e-7),
                   "worst": worst_pmp})

    synth_worst = 0.0
    for w, s_frac in ((0.3, 0.6), (1.0, 0.4)):
        law = ExtremalLaw(gamma, w)
        s_true = s_frac * math.pi / law.a
        target = propagate(law, s_true)
        result = synthesize(gamma, target)
        synth_worst = max(synth_worst, result.residual)
    checks.append({"check": "round_trip_residual",
                   "passed": synth_worst <= tol, "worst": synth_worst})
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    bad = _check_gamma_arg(args.gamma)
    if bad:
        print(bad, file=sys.stderr)
        return 2
    try:
        tol = _resolve_tol(args)
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return 2
    if args.suite not in _VERIFY_SUITES:
        print(f"unknown suite {args.suite!r}; choose from "
              f"{', '.join(_VERIFY_SUITES)}", file=sys.stderr)
        return 2
    suites = {
        "facts": _suite_facts,
        "appendix-a": _suite_appendix_a,
        "appendix-b": _suite_appendix_b,
        "oracle": _suite_oracle,
    }
    try:
        checks = suites[args.suite](args.gamma, tol)
    except Su2OptError as exc:
        print(f"verification suite failed to run: {exc}", file=sys.stderr)
        return 3
    passed = all(c["passed"] for c in checks)
    doc = {
        "command": "verify",
        "gamma": args.gamma,
        "suite": args.suite,
        "tolerance": tol,
        "checks": checks,
        "passed": passed,
    }
    _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
    return 0 if passed else 1


# --- entry point --------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--gamma", type=float, required=True,
                     help="control bound, in (0, 1]")
    sub.add_argument("--out", type=str, default=None,
                     help="write output to this path instead of stdout")
    sub.add_argument("--tol", type=float, default=None,
                     help="residual tolerance (default: SU2OPT_TOL or 1e-9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su2opt",
        description="Time-optimal control synthesis for a driven two-level "
                    "system with bounded transverse drive.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_syn = subs.add_parser(
        "synthesize", help="compute the optimal control law for a gate")
    _add_common(p_syn)
    p_syn.add_argument("--gate", type=str, required=True,
                       help="identity|swap|hadamard|phase(t)|diag(psi)|"
                            "a_re,a_im,b_re,b_im")
    p_syn.add_argument("--format", choices=("json", "csv"), default="json")
    p_syn.add_argument("--samples", type=int, default=201,
                       help="control/trajectory sample count")
    p_syn.set_defaults(func=cmd_synthesize)

    p_tr = subs.add_parser(
        "trace", help="sample one extremal trajectory as CSV")
    _add_common(p_tr)
    p_tr.add_argument("--omega", type=float, required=True)
    p_tr.add_argument("--s-max", type=float, required=True,
                      help="trace over curve time [0, s_max]")
    p_tr.add_argument("--samples", type=int, default=401)
    p_tr.set_defaults(func=cmd_trace)

    p_at = subs.add_parser(
        "atlas", help="export a trajectory-family figure as CSV (+SVG)")
    _add_common(p_at)
    p_at.add_argument("--preset", type=str, required=True,
                      help="|".join(_ATLAS_PRESETS))
    p_at.add_argument("--samples", type=int, default=401,
                      help="samples per curve")
    p_at.add_argument("--svg", type=str, default=None,
                      help="also write a minimal SVG rendering to this path")
    p_at.set_defaults(func=cmd_atlas)

    p_ve = subs.add_parser(
        "verify", help="run a verification suite and report JSON")
    _add_common(p_ve)
    p_ve.add_argument("--suite", type=str, required=True,
                      help="|".join(_VERIFY_SUITES))
    p_ve.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
