"""Command-line interface: deterministic CSV/report emitters over the
solver modules.

Every output starts with a '#'-prefixed comment block echoing the full
effective configuration, so a run is reproducible from its own output.
Numbers are printed with 17 significant digits and '.' decimal
separators; reruns of the same configuration are byte-identical,
whatever --workers says.

Exit status: 0 on success, 2 on usage errors, 3 on solver failures.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext

from . import __version__
from .errors import FluxhoopError
from .feasibility import FeasibilityParams, estimate
from .model import (EXTERIOR, INTERIOR, Channel, ModelParams,
                    effective_potential, rotational_energy)
from .multichannel import TruncationScheme, solve_static_system
from .scattering import find_resonance, phase_shift_scan, single_channel_window
from .specfun import OverlapTable
from .variational import (DEFAULT_E_RANGE, DEFAULT_L_FIT_MIN, DEFAULT_L_MAX,
                          DEFAULT_L_MIN, DEFAULT_N_MAX, extrapolate_bound,
                          log_divergence_fit, simple_trial_energy,
                          variational_grid)

USAGE_EXIT = 2
SOLVER_EXIT = 3


def _fmt(x) -> str:
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return f"{float(x):.17g}"


class GridSpec:
    """min:max:count[:log] grid specification."""

    def __init__(self, spec: str):
        parts = spec.split(":")
        if len(parts) not in (3, 4):
            raise ValueError(f"grid must be min:max:count[:log], got {spec!r}")
        self.lo = float(parts[0])
        self.hi = float(parts[1])
        self.count = int(parts[2])
        self.spacing = "linear"
        if len(parts) == 4:
            if parts[3] != "log":
                raise ValueError(f"unknown grid spacing {parts[3]!r}")
            self.spacing = "log"
        if self.count < 2:
            raise ValueError("grid count must be at least 2")
        if not self.lo < self.hi:
            raise ValueError("grid needs min < max")
        if self.spacing == "log" and self.lo <= 0:
            raise ValueError("log grid needs positive min")

    def points(self) -> list[float]:
        n = self.count
        if self.spacing == "log":
            ratio = (self.hi / self.lo) ** (1.0 / (n - 1))
            return [self.lo * ratio ** i for i in range(n)]
        step = (self.hi - self.lo) / (n - 1)
        return [self.lo + step * i for i in range(n)]

    def __str__(self):
        base = f"{_fmt(self.lo)}:{_fmt(self.hi)}:{self.count}"
        return base + (":log" if self.spacing == "log" else "")


def _parse_trunc(spec: str) -> TruncationScheme:
    try:
        fields = dict(part.split("=") for part in spec.split(","))
        return TruncationScheme(N=int(fields["N"]), L=int(fields["L"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise ValueError(f"truncation must be N=<even>,L=<odd>, got {spec!r}: {exc}")


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _resolve(args, parser, defaults: dict):
    """Fill argparse results from config file then hardcoded defaults.

    Flags win over the config file, which wins over defaults; argparse
    options are declared with default=None so explicit flags are
    distinguishable.
    """
    cfg = {}
    if getattr(args, "config", None):
        try:
            cfg = _load_config_file(args.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
    merged = {}
    for key, fallback in defaults.items():
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            merged[key] = flag_val
        elif key in cfg:
            merged[key] = cfg[key]
        else:
            merged[key] = fallback
    extra = set(cfg) - set(defaults) - {"config"}
    if extra:
        parser.error(f"unknown config keys: {sorted(extra)}")
    return merged


def _params_for(units: str) -> ModelParams:
    if units == "natural":
        return ModelParams.natural()
    if units == "si":
        return ModelParams.si_nanotube()
    raise ValueError(f"units must be natural or si, got {units!r}")


def _emit(out_path: str, lines):
    ctx = (open(out_path, "w", encoding="utf-8", newline="\n")
           if out_path != "-" else nullcontext(sys.stdout))
    with ctx as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _header(command: str, config: dict) -> list[str]:
    lines = [f"# fluxhoop {__version__}", f"# command = {command}"]
    for key in sorted(config):
        lines.append(f"# {key} = {config[key]}")
    return lines


def _map_fn(workers: int, stack):
    if workers > 1:
        ex = stack.enter_context(ThreadPoolExecutor(max_workers=workers))
        return ex.map
    return map


# ---------------------------------------------------------------- commands

def cmd_phase_scan(args, parser):
    defaults = {"grid": "1.0005:1.2:400", "units": "natural",
                "out": "-", "workers": 1}
    cfg = _resolve(args, parser, defaults)
    try:
        grid = GridSpec(str(cfg["grid"]))
        params = _params_for(str(cfg["units"]))
        workers = int(cfg["workers"])
    except ValueError as exc:
        parser.error(str(exc))
    W = params.threshold
    lo, hi = single_channel_window(params)
    if not (1.0 < grid.lo and grid.hi * W < hi):
        parser.error(f"grid must lie inside the single-channel window "
                     f"(1, {hi / W:g}) in units of W")
    config = {"grid": str(grid), "units": cfg["units"], "workers": workers}
    lines = _header("phase-scan", config)
    lines.append("E_over_W,k1R,delta_rad,sin2_delta,re_S,im_S")
    energies = [f * W for f in grid.points()]
    points = phase_shift_scan(params, energies)
    for pt in points:
        k1r = math.sqrt(2.0 * params.reduced_mass
                        * (pt.E_over_W - 1.0) * W) / params.hbar * params.hoop_radius
        lines.append(",".join(_fmt(v) for v in
                              (pt.E_over_W, k1r, pt.delta, pt.sin2_delta,
                               pt.S.real, pt.S.imag)))
    _emit(str(cfg["out"]), lines)
    return 0


def cmd_resonance(args, parser):
    defaults = {"scan": "1.0002:1.2:600", "tol": 1e-10,
                "units": "natural", "out": "-"}
    cfg = _resolve(args, parser, defaults)
    try:
        scan = GridSpec(str(cfg["scan"]))
        params = _params_for(str(cfg["units"]))
        tol = float(cfg["tol"])
    except ValueError as exc:
        parser.error(str(exc))
    config = {"scan": str(scan), "tol": _fmt(tol), "units": cfg["units"]}
    rep = find_resonance(params, e_min_over_w=scan.lo, e_max_over_w=scan.hi,
                         n_scan=scan.count, tol=tol)
    lines = _header("resonance", config)
    lines.append(f"E_peak_over_W = {_fmt(rep.E_peak_over_W)}")
    lines.append(f"fwhm_over_W = {_fmt(rep.fwhm_over_W)}")
    lines.append(f"tau_hoop_units = {_fmt(rep.tau)}")
    lines.append(f"nu_R_over_nu_T = {_fmt(rep.nu_ratio)}")
    lines.append(f"tau_over_rotation_time = {_fmt(rep.tau_over_rotation)}")
    _emit(str(cfg["out"]), lines)
    return 0


def _parse_channels(spec: str) -> list[Channel]:
    chans = []
    for part in spec.split(","):
        region, _, l = part.partition(":")
        region = {"in": INTERIOR, "interior": INTERIOR,
                  "ex": EXTERIOR, "exterior": EXTERIOR}.get(region.strip())
        if region is None:
            raise ValueError(f"channel region must be interior/exterior, got {part!r}")
        chans.append(Channel(region, int(l)))
    return chans


def cmd_potential(args, parser):
    defaults = {"grid": "0.05:3:237", "channels": "interior:0,exterior:1",
                "units": "natural", "out": "-"}
    cfg = _resolve(args, parser, defaults)
    try:
        grid = GridSpec(str(cfg["grid"]))
        params = _params_for(str(cfg["units"]))
        channels = _parse_channels(str(cfg["channels"]))
    except ValueError as exc:
        parser.error(str(exc))
    if not (grid.lo < 1.0 < grid.hi):
        parser.error("radial grid must span both sides of r = R")
    config = {"grid": str(grid), "channels": cfg["channels"],
              "units": cfg["units"]}
    W = params.threshold
    R = params.hoop_radius
    lines = _header("potential", config)
    lines.append("r_over_R,l,V_over_W")
    for ch in channels:
        for x in grid.points():
            if ch.region == INTERIOR and x > 1.0:
                continue
            if ch.region == EXTERIOR and x < 1.0:
                continue
            v = effective_potential(params, ch, x * R)
            lines.append(",".join((_fmt(x), str(ch.l), _fmt(v / W))))
    _emit(str(cfg["out"]), lines)
    return 0


def cmd_variational(args, parser):
    defaults = {"trial": "bessel", "nmax": DEFAULT_N_MAX,
                "lmax": DEFAULT_L_MAX, "lmin": DEFAULT_L_MIN,
                "lfit": DEFAULT_L_FIT_MIN,
                "e_range": f"{DEFAULT_E_RANGE[0]}:{DEFAULT_E_RANGE[1]}",
                "e_scan": 24, "units": "natural", "out": "-", "workers": 1}
    cfg = _resolve(args, parser, defaults)
    try:
        trial = str(cfg["trial"])
        if trial not in ("bessel", "simple"):
            raise ValueError(f"trial must be bessel or simple, got {trial!r}")
        nmax = int(cfg["nmax"])
        lmax = int(cfg["lmax"])
        lmin = int(cfg["lmin"])
        lfit = int(cfg["lfit"])
        e_parts = str(cfg["e_range"]).split(":")
        if len(e_parts) != 2:
            raise ValueError("e-range must be lo:hi")
        e_range = (float(e_parts[0]), float(e_parts[1]))
        e_scan = int(cfg["e_scan"])
        params = _params_for(str(cfg["units"]))
        workers = int(cfg["workers"])
    except ValueError as exc:
        parser.error(str(exc))

    if trial == "simple":
        config = {"trial": trial, "lmax": lmax, "units": cfg["units"]}
        series = simple_trial_energy(lmax)
        slope, r2 = log_divergence_fit(series, l_min=min(21, lmax))
        lines = _header("variational", config)
        lines.append("l,grad_term,centrifugal_term,rotation_term,"
                     "cum_energy,cum_norm,rayleigh_quotient")
        for i, l in enumerate(series.l_values):
            q = series.cumulative_energy[i] / series.cumulative_norm[i]
            lines.append(",".join(
                (str(int(l)), _fmt(series.grad_terms[i]),
                 _fmt(series.centrifugal_terms[i]),
                 _fmt(series.rotation_terms[i]),
                 _fmt(series.cumulative_energy[i]),
                 _fmt(series.cumulative_norm[i]), _fmt(q))))
        lines.append(f"# lnL_fit_slope = {_fmt(slope)}")
        lines.append(f"# lnL_fit_r2 = {_fmt(r2)}")
        _emit(str(cfg["out"]), lines)
        return 0

    config = {"trial": trial, "nmax": nmax, "lmax": lmax, "lmin": lmin,
              "lfit": lfit, "e_range": f"{_fmt(e_range[0])}:{_fmt(e_range[1])}",
              "e_scan": e_scan, "units": cfg["units"], "workers": workers}
    with nullcontext() if workers <= 1 else ThreadPoolExecutor(workers) as ex:
        map_fn = map if workers <= 1 else ex.map
        results = variational_grid(params, n_max=nmax, l_max=lmax,
                                   l_min=lmin, e_range=e_range,
                                   n_scan=e_scan, map_fn=map_fn)
    report = extrapolate_bound(results, l_fit_min=lfit)
    lines = _header("variational", config)
    lines.append("N,L,e,E_min_over_W")
    for r in results:
        lines.append(",".join((str(r.N), str(r.L), _fmt(r.e),
                               _fmt(r.E_min_over_W))))
    lines.append(f"# extrapolated_bound_over_W = {_fmt(report.bound_over_W)}")
    lines.append(f"# beta_inf = {_fmt(report.beta_inf)}")
    lines.append(f"# alpha_fit_r2 = {_fmt(report.alpha_r2)}")
    lines.append(f"# beta_fit_r2 = {_fmt(report.beta_r2)}")
    for n in report.n_values:
        lines.append(f"# N={n}: alpha = {_fmt(report.alpha_by_n[n])}, "
                     f"beta = {_fmt(report.beta_by_n[n])}, "
                     f"r2 = {_fmt(report.r2_lnl_by_n[n])}")
    _emit(str(cfg["out"]), lines)
    return 0


def cmd_static_scan(args, parser):
    defaults = {"grid": "5:50:10", "grid_var": "k1r", "trunc": "N=8,L=9",
                "units": "natural", "out": "-", "workers": 1}
    cfg = _resolve(args, parser, defaults)
    try:
        grid = GridSpec(str(cfg["grid"]))
        grid_var = str(cfg["grid_var"])
        if grid_var not in ("k1r", "e"):
            raise ValueError(f"grid-var must be k1r or e, got {grid_var!r}")
        trunc = _parse_trunc(str(cfg["trunc"]))
        params = _params_for(str(cfg["units"]))
        workers = int(cfg["workers"])
    except ValueError as exc:
        parser.error(str(exc))
    config = {"grid": str(grid), "grid_var": grid_var, "trunc": f"N={trunc.N},L={trunc.L}",
              "units": cfg["units"], "workers": workers}
    W = params.threshold
    R = params.hoop_radius
    overlaps = OverlapTable(trunc.N, trunc.L)

    def energy_of(x: float) -> float:
        if grid_var == "e":
            return x * W
        k1 = x / R
        return W + (params.hbar * k1) ** 2 / (2.0 * params.reduced_mass)

    tasks = [(x, L) for x in grid.points()
             for L in range(1, trunc.L + 1, 2)]

    def run(task):
        x, L = task
        amp = solve_static_system(params, energy_of(x),
                                  TruncationScheme.for_L(L), overlaps)
        return (x, L, amp)

    lines = _header("static-scan", config)
    lines.append("E_or_k1R,L,re_c1,im_c1,chi,sum_abs_cl_sq_above_1")
    with nullcontext() if workers <= 1 else ThreadPoolExecutor(workers) as ex:
        map_fn = map if workers <= 1 else ex.map
        for x, L, amp in map_fn(run, tasks):
            lines.append(",".join(
                (_fmt(x), str(L), _fmt(amp.S.real), _fmt(amp.S.imag),
                 _fmt(amp.chi), _fmt(amp.sum_higher))))
    _emit(str(cfg["out"]), lines)
    return 0


def cmd_estimate(args, parser):
    defaults = {"alpha": 50.0, "beta": 50.0, "n": 50.0, "out": "-"}
    cfg = _resolve(args, parser, defaults)
    try:
        fp = FeasibilityParams(alpha=float(cfg["alpha"]),
                               beta=float(cfg["beta"]),
                               n_minor=float(cfg["n"]))
    except ValueError as exc:
        parser.error(str(exc))
    config = {"alpha": _fmt(fp.alpha), "beta": _fmt(fp.beta),
              "n": _fmt(fp.n_minor)}
    rep = estimate(fp)
    lines = _header("estimate", config)
    lines.append(f"n_major_atoms = {_fmt(rep.n_major)}")
    lines.append(f"hoop_radius_m = {_fmt(rep.hoop_radius_m)}")
    lines.append(f"hoop_mass_kg = {_fmt(rep.hoop_mass_kg)}")
    lines.append(f"particle_radius_m = {_fmt(rep.particle_radius_m)}")
    lines.append(f"particle_mass_kg = {_fmt(rep.particle_mass_kg)}")
    lines.append(f"tau_seconds = {_fmt(rep.tau_seconds)}")
    lines.append(f"tau_hours = {_fmt(rep.tau_hours)}")
    lines.append(f"temperature_K = {_fmt(rep.temperature_K)}")
    lines.append("tau_exponents_alpha_beta_n = "
                 + ",".join(_fmt(v) for v in rep.tau_exponents))
    lines.append("n_exponents_alpha_beta_n = "
                 + ",".join(_fmt(v) for v in rep.n_exponents))
    lines.append("# tau uses the fixed 143 m_H R^2/hbar lifetime "
                 "coefficient (hoop mass, heavy-particle convention)")
    _emit(str(cfg["out"]), lines)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxhoop",
        description="Scattering on a half-flux-quantum hoop: phase shifts, "
                    "resonance, variational bounds, feasibility estimates.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_help=None):
        p.add_argument("--out", help="output path, '-' for stdout")
        p.add_argument("--units", choices=["natural", "si"],
                       help="parameter set (outputs are dimensionless)")
        p.add_argument("--config", help="key = value config file; flags win")
        if grid_help:
            p.add_argument("--grid", help=grid_help)

    p = sub.add_parser("phase-scan", help="S/P phase shift over an energy grid")
    common(p, "E/W grid as min:max:count[:log]")
    p.add_argument("--workers", type=int, help="parallel evaluation degree")
    p.set_defaults(func=cmd_phase_scan)

    p = sub.add_parser("resonance", help="peak/width/lifetime report")
    common(p)
    p.add_argument("--scan", help="E/W scan as min:max:count")
    p.add_argument("--tol", type=float, help="refinement tolerance in E/W")
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("potential", help="effective potential profiles")
    common(p, "r/R grid as min:max:count[:log]")
    p.add_argument("--channels", help="for example interior:0,exterior:1")
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("variational", help="Rayleigh-Ritz bound or simple-trial series")
    common(p)
    p.add_argument("--trial", choices=["bessel", "simple"])
    p.add_argument("--nmax", type=int, help="largest interior cutoff N (even)")
    p.add_argument("--lmax", type=int, help="largest exterior cutoff L (odd)")
    p.add_argument("--lmin", type=int, help="smallest exterior cutoff in the grid")
    p.add_argument("--lfit", type=int, help="smallest L used in the ln L fits")
    p.add_argument("--e-range", dest="e_range", help="construction-energy scan lo:hi")
    p.add_argument("--e-scan", dest="e_scan", type=int, help="coarse e samples")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_variational)

    p = sub.add_parser("static-scan", help="multichannel amplitudes over a grid")
    common(p, "grid as min:max:count[:log] (k1R by default)")
    p.add_argument("--grid-var", dest="grid_var", choices=["k1r", "e"])
    p.add_argument("--trunc", help="largest truncation as N=<even>,L=<odd>")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_static_scan)

    p = sub.add_parser("estimate", help="material-feasibility scaling estimate")
    p.add_argument("--out", help="output path, '-' for stdout")
    p.add_argument("--config", help="key = value config file; flags win")
    p.add_argument("--alpha", type=float, help="hoop-to-particle radius ratio")
    p.add_argument("--beta", type=float, help="particle-to-hoop mass ratio")
    p.add_argument("--n", type=float, help="atoms spanning the minor circumference")
    p.set_defaults(func=cmd_estimate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except FluxhoopError as exc:
        print(f"fluxhoop: solver failure: {exc}", file=sys.stderr)
        return SOLVER_EXIT


if __name__ == "__main__":
    sys.exit(main())
