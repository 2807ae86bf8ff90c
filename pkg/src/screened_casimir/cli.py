"""Command-line front end.

Subcommands::

    eval     single separation / temperature point
    sweep    CSV over a separation grid (correction-factor curves)
    ratio    CSV of exact-to-asymptote ratios over a separation grid
    nuclear  nuclear-scale energy partition report

Every subcommand accepts ``--config FILE`` with ``key = value`` lines named
after the long flags (without dashes); flags given on the command line win.

Exit codes: 0 success, 2 usage or domain error, 3 numerical non-convergence.
"""

import argparse
import csv
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .asymptotics import asym_n0, asym_npos, asym_total
from .dielectric import Drude, Material, PerfectMetal, Plasma, Vacuum, load_dielectric_table
from .errors import ConvergenceError, DomainError
from .lifshitz import (
    EngineConfig,
    correction_factor,
    free_energy_general,
    free_energy_ideal_plasma,
    free_energy_zero_temperature,
)
from .nuclear import (
    QUOTED_SCREENING_LENGTH_FM,
    QUOTED_TEMPERATURE_K,
    effective_temperature,
    energy_partition,
    temperature_from_meson_mass,
)
from .units import CONSTANTS, reduce_parameters

EXIT_USAGE = 2
EXIT_CONVERGENCE = 3

SWEEP_COLUMNS = [
    "l_m", "T_K", "wp_rad_s", "x", "kappa_l", "F_total_J_m2", "F_n0_J_m2",
    "F_npos_J_m2", "corr_factor", "asym_n0_J_m2", "asym_npos_J_m2",
    "ratio_n0", "ratio_npos", "err",
]
RATIO_COLUMNS = SWEEP_COLUMNS[:-1] + ["ratio_total", "err"]

# flags that do not influence results and are left out of provenance lines
_NON_PROVENANCE = {"threads", "output", "config", "command", "func"}
_FIELD_FLAGS = {"l": "--sep", "T": "--temp", "omega_p": "--wp"}


class UsageError(Exception):
    pass


def _fmt(v):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return f"{v:.9e}"


def parse_mirror(text):
    """``perfect``, ``plasma:WP``, ``drude:WP:GAMMA`` or ``table:PATH``."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "perfect" and not rest:
            return PerfectMetal()
        if kind == "plasma":
            return Material(Plasma(float(rest)))
        if kind == "drude":
            wp, gamma = rest.split(":")
            return Material(Drude(float(wp), float(gamma)))
        if kind == "table":
            with open(rest) as fh:
                return Material(load_dielectric_table(fh))
    except (ValueError, OSError) as exc:
        raise UsageError(f"--mirror: cannot interpret {text!r}: {exc}") from None
    raise UsageError(f"--mirror: unknown model {text!r}")


def _parse_wp_list(text):
    try:
        values = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--wp: cannot parse {text!r}") from None
    if not values:
        raise UsageError("--wp: empty list")
    for v in values:
        if not math.isfinite(v) or v < 0:
            raise UsageError(f"--wp: must be >= 0, got {v!r}")
    return values


@dataclass(frozen=True)
class SweepSpec:
    l_min: float
    l_max: float
    points: int
    spacing: str
    T: float
    omega_p: tuple
    mirror: object
    medium: object
    output: str = "-"

    def __post_init__(self):
        if not (self.l_min > 0 and self.l_max > self.l_min):
            raise UsageError("--l-min/--l-max: need 0 < l-min < l-max")
        if self.points < 2:
            raise UsageError("--points: need at least 2")
        if self.spacing not in ("linear", "log"):
            raise UsageError("--spacing: must be 'linear' or 'log'")
        if not (math.isfinite(self.T) and self.T > 0):
            raise UsageError("--temp: must be > 0 for sweeps")

    def separations(self):
        if self.spacing == "log":
            return np.geomspace(self.l_min, self.l_max, self.points)
        return np.linspace(self.l_min, self.l_max, self.points)


def _is_ideal_plasma(mirror, medium):
    return isinstance(mirror, PerfectMetal) and isinstance(medium, (Plasma, Vacuum))


def _engine(l, T, wp, mirror, medium, cfg):
    if medium is None:
        medium = Plasma(wp) if wp > 0 else Vacuum()
    if _is_ideal_plasma(mirror, medium):
        return free_energy_ideal_plasma(l, T, wp, cfg)
    return free_energy_general(l, T, mirror, medium, cfg)


def sweep_row(l, T, wp, mirror, medium, cfg, with_total=False):
    """One CSV row as a dict of formatted strings.  Numerical failures are
    reported in the ``err`` column rather than raised."""
    row = {"l_m": _fmt(l), "T_K": _fmt(T), "wp_rad_s": _fmt(wp)}
    try:
        p = reduce_parameters(l, T, wp)
        row["x"] = _fmt(p.x)
        row["kappa_l"] = _fmt(p.kl)
        b = _engine(l, T, wp, mirror, medium, cfg)
        row["F_total_J_m2"] = _fmt(b.F_total)
        row["F_n0_J_m2"] = _fmt(b.F_n0)
        row["F_npos_J_m2"] = _fmt(b.F_npos)
        row["corr_factor"] = _fmt(b.correction_factor)
        if medium is None and isinstance(mirror, PerfectMetal):
            kappa = wp / CONSTANTS.c
            a_pos = asym_npos(l, T, kappa)
            row["asym_npos_J_m2"] = _fmt(a_pos)
            row["ratio_npos"] = _fmt(b.F_npos / a_pos if a_pos else math.nan)
            if kappa > 0:
                a0 = asym_n0(l, T, kappa)
                row["asym_n0_J_m2"] = _fmt(a0)
                row["ratio_n0"] = _fmt(b.F_n0 / a0 if a0 else math.nan)
            if with_total:
                row["ratio_total"] = _fmt(b.F_total / asym_total(l, T, kappa).asym_total)
        row["err"] = ""
    except (ConvergenceError, DomainError, ArithmeticError) as exc:
        row["err"] = f"{type(exc).__name__}: {exc}"
    return row


def write_csv(rows, columns, provenance, stream):
    for line in provenance:
        stream.write(f"# {line}\n")
    writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n", restval="")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def run_sweep(spec, cfg, threads=1, with_total=False):
    """Evaluate every (omega_p, l) pair of ``spec``; rows ordered by omega_p
    then ascending l regardless of ``threads``."""
    tasks = [(float(l), spec.T, wp) for wp in spec.omega_p for l in spec.separations()]

    def work(task):
        l, T, wp = task
        return sweep_row(l, T, wp, spec.mirror, spec.medium, cfg, with_total)

    if threads <= 1:
        return [work(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, tasks))


def _provenance(args):
    items = []
    for key in sorted(vars(args)):
        if key in _NON_PROVENANCE:
            continue
        items.append(f"--{key.replace('_', '-')}={getattr(args, key)}")
    return [f"screened_casimir {__version__}", f"{args.command} " + " ".join(items)]


def _medium_from_args(args):
    if getattr(args, "medium_file", None):
        if args.wp is not None and any(_parse_wp_list(args.wp)):
            raise UsageError("--wp and --medium-file are mutually exclusive")
        try:
            with open(args.medium_file) as fh:
                return load_dielectric_table(fh)
        except OSError as exc:
            raise UsageError(f"--medium-file: {exc}") from None
    return None


def _config(args):
    return EngineConfig(rel_tolerance=args.rel_tol, max_matsubara=args.max_matsubara,
                        quadrature_rel_tol=args.quad_tol)


def cmd_eval(args, out):
    if args.sep is None:
        raise UsageError("--sep is required")
    if args.temp is None:
        raise UsageError("--temp is required")
    medium = _medium_from_args(args)
    wp_values = _parse_wp_list(args.wp if args.wp is not None else "0")
    if len(wp_values) != 1:
        raise UsageError("--wp: eval takes a single value")
    wp = wp_values[0]
    mirror = parse_mirror(args.mirror)
    cfg = _config(args)
    if args.temp == 0:
        gap = medium if medium is not None else (Plasma(wp) if wp > 0 else Vacuum())
        E = free_energy_zero_temperature(args.sep, mirror, gap, cfg)
        out.write(f"F_total={_fmt(E)} J/m^2 corr_factor={_fmt(correction_factor(E, args.sep))} "
                  f"T=0\n")
        return 0
    b = _engine(args.sep, args.temp, wp, mirror, medium, cfg)
    p = reduce_parameters(args.sep, args.temp, wp)
    out.write(
        f"F_total={_fmt(b.F_total)} J/m^2 F_n0={_fmt(b.F_n0)} J/m^2 "
        f"F_npos={_fmt(b.F_npos)} J/m^2 corr_factor={_fmt(b.correction_factor)} "
        f"x={_fmt(p.x)} kappa_l={_fmt(p.kl)} n_terms={b.n_terms} "
        f"est_error={_fmt(b.est_error)}\n"
    )
    return 0


def _spec_from_args(args):
    return SweepSpec(
        l_min=args.l_min, l_max=args.l_max, points=args.points, spacing=args.spacing,
        T=args.temp if args.temp is not None else math.nan,
        omega_p=tuple(_parse_wp_list(args.wp if args.wp is not None else "0")),
        mirror=parse_mirror(args.mirror), medium=_medium_from_args(args),
        output=args.output,
    )


def _emit(args, rows, columns, out):
    if args.output and args.output != "-":
        with open(args.output, "w", newline="") as fh:
            write_csv(rows, columns, _provenance(args), fh)
    else:
        write_csv(rows, columns, _provenance(args), out)


def cmd_sweep(args, out):
    spec = _spec_from_args(args)
    rows = run_sweep(spec, _config(args), args.threads)
    _emit(args, rows, SWEEP_COLUMNS, out)
    return 0


def cmd_ratio(args, out):
    spec = _spec_from_args(args)
    if spec.medium is not None or not isinstance(spec.mirror, PerfectMetal):
        raise UsageError("ratio: asymptotes exist only for perfect mirrors across a plasma")
    if any(wp <= 0 for wp in spec.omega_p):
        raise UsageError("--wp: ratio needs omega_p > 0 (asymptote undefined at kappa = 0)")
    rows = run_sweep(spec, _config(args), args.threads, with_total=True)
    _emit(args, rows, RATIO_COLUMNS, out)
    return 0


def cmd_nuclear(args, out):
    mode = args.temp_mode
    t_quoted = QUOTED_TEMPERATURE_K
    t_balance = effective_temperature(args.sep)
    t_density = temperature_from_meson_mass(args.meson_mass)
    if args.temp is not None:
        T, mode = args.temp, "explicit"
    else:
        T = {"paper": t_quoted, "balance": t_balance, "density": t_density}[mode]
    r = energy_partition(args.sep, T, args.meson_mass, args.area, _config(args))
    lines = [
        f"meson_mass_MeV = {r.meson_mass:.6g}",
        f"screening_length_fm = {r.screening_length:.6g}  "
        f"(quoted {QUOTED_SCREENING_LENGTH_FM}; "
        f"{100 * (r.screening_length / QUOTED_SCREENING_LENGTH_FM - 1):+.2f}%)",
        f"kappa_per_fm = {r.kappa:.6g}",
        f"pair_density_each_fm3 = {r.pair_density_each:.6g}",
        f"total_density_fm3 = {r.total_density:.6g}",
        f"temperature_mode = {mode}",
        f"temperature_K = {r.effective_temperature:.6g}",
        f"kT_MeV = {r.kT:.6g}",
        f"T_quoted_K = {t_quoted:.6g}",
        f"T_balance_K = {t_balance:.6g}  (hbar c / (2 l k_B) at l = {args.sep:g} fm)",
        f"T_density_K = {t_density:.6g}  (pair density giving m = {args.meson_mass:g} MeV; "
        f"{t_density / t_quoted:.3f} x quoted value)",
        f"separation_fm = {r.separation:.6g}",
        f"plate_area_fm2 = {r.plate_area:.6g}",
        f"x = {2 * r.kT * r.separation / CONSTANTS.hbar_c_MeV_fm:.6g}",
        f"E_n0_MeV = {r.E_n0:.6g}  (asymptote; exact n=0 sum {r.E_n0_exact:.6g})",
        f"E_npos_asym_MeV = {r.E_npos_asym:.6g}",
        f"E_npos_exact_MeV = {r.E_npos_exact:.6g}",
        f"E_total_MeV = {r.E_total:.6g}  (E_n0 + E_npos_asym)",
    ]
    if T == t_quoted:
        lines.append("note: T = 3.2e11 K is the quoted effective temperature; "
                     "the density chain gives T_density instead")
    out.write("\n".join(lines) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="screened-casimir",
        description="Screened Casimir-Lifshitz free energy between parallel plates.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value file with defaults for any flag")
        p.add_argument("--rel-tol", type=float, default=1e-10, help="Matsubara truncation tolerance")
        p.add_argument("--quad-tol", type=float, default=1e-11, help="quadrature relative tolerance")
        p.add_argument("--max-matsubara", type=int, default=20_000_000)

    def medium(p):
        p.add_argument("--temp", type=float, help="temperature, K")
        p.add_argument("--wp", help="gap plasma frequency, rad/s (comma list for sweeps)")
        p.add_argument("--medium-file", help="tabulated gap permittivity CSV (xi_rad_s,eps)")
        p.add_argument("--mirror", default="perfect",
                       help="perfect | plasma:WP | drude:WP:GAMMA | table:PATH")

    p = sub.add_parser("eval", help="evaluate one point")
    p.add_argument("--sep", type=float, help="plate separation, m")
    medium(p)
    common(p)
    p.set_defaults(func=cmd_eval)

    for name, func, helptext in (
        ("sweep", cmd_sweep, "correction factor over a separation grid"),
        ("ratio", cmd_ratio, "exact / asymptote ratios over a separation grid"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--l-min", type=float, default=1e-7)
        p.add_argument("--l-max", type=float, default=1e-5)
        p.add_argument("--points", type=int, default=50)
        p.add_argument("--spacing", choices=["linear", "log"], default="log")
        p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
        p.add_argument("--threads", type=int, default=1)
        medium(p)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("nuclear", help="nuclear-scale energy partition")
    p.add_argument("--meson-mass", type=float, default=135.0, help="MeV")
    p.add_argument("--sep", type=float, default=0.5, help="fm")
    p.add_argument("--area", type=float, default=1.0, help="fm^2")
    p.add_argument("--temp-mode", choices=["paper", "balance", "density"], default="paper")
    p.add_argument("--temp", type=float, help="explicit temperature, K (overrides --temp-mode)")
    common(p)
    p.set_defaults(func=cmd_nuclear)
    return parser


def read_config(path):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _apply_config(parser, argv):
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        values = read_config(args.config)
    except OSError as exc:
        raise UsageError(f"--config: {exc}") from None
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in subparser._actions}
    unknown = sorted(set(values) - known)
    if unknown:
        raise UsageError(f"--config: unknown keys {', '.join(unknown)}")
    subparser.set_defaults(**values)
    return parser.parse_args(argv)


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        for name in ("threads", "points", "max_matsubara"):
            if hasattr(args, name) and not isinstance(getattr(args, name), int):
                setattr(args, name, int(getattr(args, name)))
        return args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        flag = _FIELD_FLAGS.get(exc.field, "--" + exc.field.replace("_", "-"))
        print(f"error: {flag}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
