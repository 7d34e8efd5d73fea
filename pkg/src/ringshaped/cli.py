"""Command line: ``ringshaped {spectrum,wavefunction,verify,table1}``.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from ringshaped import __version__, hartmann, suite
from ringshaped.errors import InvalidParameter, OracleError
from ringshaped.hartmann import EPS0_EV, ParabolicState, PotentialParams, SphericalState

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_UNCONVERGED = 0, 1, 2, 3

# nbar -> E in eV for delta sigma**2 = 1, q = 0. The reference column of the
# published table stops at nbar = 5; the last value is ours.
TABLE1_GOLDEN = {1: -13.605820, 2: -3.401455, 3: -1.511757, 4: -0.850363, 5: -0.544232, 6: -0.377939}
TABLE1_BLANK = {6}
TABLE1_TOL = 1e-6


@dataclass
class RunConfig:
    command: str
    params: PotentialParams
    mode: str = "principal"
    output_format: str = "csv"
    output_path: str | None = None
    n_bar_max: float | None = None
    grid_points: int | None = None
    box: float | None = None
    coords: str | None = None
    state: tuple[int, int, int] = (0, 0, 0)
    ranges: dict = field(default_factory=dict)


def _eps0_from_env() -> float:
    raw = os.environ.get("RINGSHAPED_EPS0_EV")
    if raw is None or raw.strip() == "":
        return EPS0_EV
    try:
        return float(raw)
    except ValueError:
        raise InvalidParameter(f"RINGSHAPED_EPS0_EV is not a number: {raw!r}") from None


def _state_arg(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("state needs three comma-separated integers")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"state must be integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--delta", type=float, default=1.0)
    common.add_argument("--sigma", type=float, default=1.0)
    common.add_argument("--q", type=float, default=0.0)
    common.add_argument("--mode", choices=hartmann.BETA_MODES, default="principal",
                        help="parabolic beta index: principal (upsilon) or exact (sqrt(upsilon**2 - 1/4))")
    common.add_argument("--format", dest="output_format", choices=("csv", "json"), default=None)
    common.add_argument("--out", dest="output_path", default=None)
    common.add_argument("--nbar-max", dest="n_bar_max", type=float, default=None)

    parser = argparse.ArgumentParser(prog="ringshaped", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="closed-form levels up to --nbar-max")
    sp.add_argument("--coords", choices=("parabolic", "spherical"), default="parabolic")

    wf = sub.add_parser("wavefunction", parents=[common], help="sample one eigenfunction on a grid")
    wf.add_argument("--coords", choices=("parabolic", "spherical"), default=None,
                    help="default spherical, or parabolic with --mode exact")
    wf.add_argument("--state", type=_state_arg, default=(0, 0, 0),
                    help="n_r,n_theta,m (spherical) or n,n',m (parabolic)")
    for name in ("c1", "c2", "c3"):
        wf.add_argument(f"--{name}", nargs=3, type=float, metavar=("LO", "HI", "N"), default=None)

    vf = sub.add_parser("verify", parents=[common], help="oracle, residual, orthogonality and reduction checks")
    vf.add_argument("--grid-points", dest="grid_points", type=int, default=None)
    vf.add_argument("--box", type=float, default=None)

    sub.add_parser("table1", parents=[common], help="hydrogen-like levels against the reference values")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = PotentialParams(delta=args.delta, sigma_p=args.sigma, q=args.q, eps0_mag=_eps0_from_env())
    fmt = args.output_format or ("json" if args.command == "verify" else "csv")
    cfg = RunConfig(args.command, params, args.mode, fmt, args.output_path, args.n_bar_max)
    if args.command == "verify":
        cfg.grid_points, cfg.box = args.grid_points, args.box
        if cfg.grid_points is not None and cfg.grid_points < 16:
            raise InvalidParameter("--grid-points must be at least 16")
        if cfg.box is not None and not cfg.box > 0:
            raise InvalidParameter("--box must be positive")
    if args.command in ("spectrum", "wavefunction"):
        cfg.coords = args.coords
    if args.command == "wavefunction":
        cfg.state = args.state
        cfg.ranges = {k: getattr(args, k) for k in ("c1", "c2", "c3") if getattr(args, k) is not None}
    if cfg.n_bar_max is not None and not cfg.n_bar_max >= 1:
        raise InvalidParameter("--nbar-max must be at least 1")
    return cfg


# --- emitters ------------------------------------------------------------------


def _meta(cfg: RunConfig) -> dict:
    p = cfg.params
    return {"params": {"delta": p.delta, "sigma": p.sigma_p, "q": p.q, "eps0_ev": p.eps0_mag},
            "mode": cfg.mode, "version": __version__, "command": cfg.command}


def _ev(x: float) -> str:
    return f"{x:.6f}"


def _internal(x: float) -> str:
    return f"{x:.12g}"


def _csv(header: list[str], rows: list[list[str]], comments=(), footer=()) -> str:
    out = io.StringIO()
    for line in comments:
        out.write(f"# {line}\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(row) + "\n")
    for line in footer:
        out.write(f"# {line}\n")
    return out.getvalue()


def _json(cfg: RunConfig, rows: list[dict], **extra) -> str:
    doc = {"meta": _meta(cfg), "rows": rows, **extra}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ------------------------------------------------------------------


def spectrum_rows(cfg: RunConfig) -> tuple[list[tuple], int]:
    """(coords, quantum numbers, nbar, E_eV, E_internal) sorted by energy, then quantum numbers."""
    p = cfg.params
    n_bar_max = cfg.n_bar_max or 3
    shells = int(math.floor(n_bar_max)) + 1
    rows, skipped = [], 0
    if cfg.coords == "spherical":
        for st in hartmann.spherical_states(shells):
            res = hartmann.energy_spherical(p, st)
            rows.append(("spherical", (st.n_r, st.n_theta, st.m), res))
    else:
        for st in hartmann.parabolic_states(shells):
            try:
                res = hartmann.energy_parabolic(p, st, cfg.mode)
            except hartmann.ComplexBeta:
                skipped += 1
                continue
            rows.append(("parabolic", (st.n, st.n_prime, int(st.m_prime)), res))
    rows = [r for r in rows if r[2].n_bar <= n_bar_max + 1e-9]
    rows.sort(key=lambda r: (r[2].energy_internal, r[1]))
    return [(c, qn, r.n_bar, r.energy_ev, r.energy_internal) for c, qn, r in rows], skipped


def cmd_spectrum(cfg: RunConfig) -> int:
    rows, skipped = spectrum_rows(cfg)
    comments = [f"ringshaped {__version__} spectrum coords={cfg.coords} mode={cfg.mode}"]
    if skipped:
        comments.append(f"skipped {skipped} states with complex beta")
    if cfg.output_format == "json":
        recs = [{"coords": c, "quantum_numbers": list(qn), "n_bar": float(_internal(nb)),
                 "energy_ev": round(e, 6), "energy_internal": float(_internal(ei))}
                for c, qn, nb, e, ei in rows]
        _emit(cfg, _json(cfg, recs, skipped_complex_beta=skipped))
    else:
        body = [[c, *map(str, qn), _internal(nb), _ev(e), _internal(ei)] for c, qn, nb, e, ei in rows]
        _emit(cfg, _csv(["coords", "q1", "q2", "q3", "n_bar", "energy_ev", "energy_internal"], body, comments))
    return EXIT_OK


def cmd_table1(cfg: RunConfig) -> int:
    n_bar_max = cfg.n_bar_max or 6
    if n_bar_max != int(n_bar_max) or n_bar_max > 6:
        raise InvalidParameter("table1 --nbar-max must be an integer between 1 and 6")
    rows = hartmann.table1(cfg.params, int(n_bar_max))
    records, diffs = [], []
    for row in rows:
        golden = TABLE1_GOLDEN[row.n_bar]
        ok = abs(row.energy_ev - golden) <= TABLE1_TOL
        status = "reference: blank" if row.n_bar in TABLE1_BLANK else "ok"
        if not ok:
            status = "MISMATCH" + (" (reference: blank)" if row.n_bar in TABLE1_BLANK else "")
            diffs.append(f"nbar={row.n_bar} m={row.m}: computed {row.energy_ev:.6f}, "
                         f"expected {golden:.6f}, diff {row.energy_ev - golden:+.2e}")
        records.append((row, golden, status))
    if cfg.output_format == "json":
        recs = [{"n_bar": r.n_bar, "m": r.m, "n_sum": r.n_sum, "energy_ev": round(r.energy_ev, 6),
                 "golden_ev": g, "status": s} for r, g, s in records]
        _emit(cfg, _json(cfg, recs))
    else:
        body = [[str(r.n_bar), str(r.m), str(r.n_sum), _ev(r.energy_ev), _ev(g), s] for r, g, s in records]
        _emit(cfg, _csv(["n_bar", "m", "n_sum", "energy_ev", "golden_ev", "status"], body,
                        [f"hydrogen-like levels, tolerance {TABLE1_TOL:g} eV"]))
    if diffs:
        sys.stderr.write("table1 mismatch:\n" + "".join(f"  {d}\n" for d in diffs))
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    checks = suite.run_all(cfg.params, n_points=cfg.grid_points or 2001, box=cfg.box,
                           n_bar_max=cfg.n_bar_max or 4)
    passed = all(c.passed for c in checks)
    if cfg.output_format == "json":
        _emit(cfg, _json(cfg, [c.as_dict() for c in checks], passed=passed,
                         non_integer_ell=cfg.params.q > 0))
    else:
        body = [[c.name, "pass" if c.passed else "FAIL", f"{c.measured:.6e}", f"{c.tolerance:g}", c.detail]
                for c in checks]
        _emit(cfg, _csv(["check", "result", "measured", "tolerance", "detail"], body))
    return EXIT_OK if passed else EXIT_MISMATCH


def _default_ranges(cfg: RunConfig, n_bar: float) -> dict:
    z = cfg.params.z_eff
    if cfg.coords == "spherical":
        return {"c1": (0.05, max(20.0, 20.0 * n_bar) / z, 120), "c2": (0.0, math.pi, 41),
                "c3": (0.0, 2 * math.pi, 9)}
    reach = math.sqrt(30 * n_bar / z)
    return {"c1": (0.01, reach, 100), "c2": (0.01, reach, 100), "c3": (0.0, 2 * math.pi, 9)}


def cmd_wavefunction(cfg: RunConfig) -> int:
    p = cfg.params
    if cfg.coords is None:
        cfg.coords = "parabolic" if cfg.mode == "exact" else "spherical"
    if cfg.coords == "spherical":
        if cfg.mode == "exact":
            raise InvalidParameter("--mode exact applies to parabolic coordinates only")
        st = SphericalState(*cfg.state[:2], cfg.state[2])
        n_bar = st.n_bar(p)
        names = ("r", "theta", "phi")
    else:
        st = ParabolicState(*cfg.state[:2], cfg.state[2])
        n_bar = st.n_bar(p, cfg.mode)
        names = ("xi", "eta", "phi")
    ranges = {**_default_ranges(cfg, n_bar), **cfg.ranges}
    axes = []
    for key in ("c1", "c2", "c3"):
        lo, hi, n = ranges[key]
        if int(n) != n or n < 2 or not lo < hi:
            raise InvalidParameter(f"--{key} needs LO < HI and an integer N >= 2")
        axes.append(np.linspace(lo, hi, int(n)))
    a, b, c = np.meshgrid(*axes, indexing="ij")
    if cfg.coords == "spherical":
        if axes[0][0] <= 0:
            raise InvalidParameter("r must be positive")
        psi = hartmann.wavefunction_spherical(p, st, a, b, c)
        volume = a**2 * np.sin(b)
    else:
        if axes[0][0] <= 0 or axes[1][0] <= 0:
            raise InvalidParameter("xi and eta must be positive")
        psi = hartmann.wavefunction_parabolic(p, st, a, b, c, cfg.mode)
        volume = a * b * (a**2 + b**2)
    density = np.abs(psi) ** 2
    norm = trapezoid(trapezoid(trapezoid(density * volume, axes[2], axis=2), axes[1], axis=1), axes[0])
    footer = [f"norm_estimate={norm:.6f} (trapezoid over the grid with the volume element)"]
    if cfg.output_format == "json":
        recs = [{names[0]: float(x), names[1]: float(y), names[2]: float(z), "re_psi": float(_internal(w.real)),
                 "im_psi": float(_internal(w.imag)), "density": float(_internal(d))}
                for x, y, z, w, d in zip(a.ravel(), b.ravel(), c.ravel(), psi.ravel(), density.ravel())]
        _emit(cfg, _json(cfg, recs, norm_estimate=round(float(norm), 6), state=list(cfg.state), coords=cfg.coords))
    else:
        body = [[_internal(x), _internal(y), _internal(z), _internal(w.real), _internal(w.imag), _internal(d)]
                for x, y, z, w, d in zip(a.ravel(), b.ravel(), c.ravel(), psi.ravel(), density.ravel())]
        comments = [f"ringshaped {__version__} wavefunction coords={cfg.coords} state={cfg.state} "
                    f"mode={cfg.mode} n_bar={n_bar:.12g}"]
        _emit(cfg, _csv([*names, "re_psi", "im_psi", "density"], body, comments, footer))
    return EXIT_OK


COMMANDS = {"spectrum": cmd_spectrum, "wavefunction": cmd_wavefunction, "verify": cmd_verify,
            "table1": cmd_table1}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except InvalidParameter as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except OracleError as exc:
        sys.stderr.write(f"not converged: {exc}\n")
        return EXIT_UNCONVERGED


if __name__ == "__main__":
    sys.exit(main())
