"""Command-line front end: ``shearspec <command> [options]``.

Every command writes a CSV with a one-line header (or an SVG polyline plot
with ``--format svg``).  Floats use 15 significant digits and rows are
sorted, so a fixed configuration gives byte-identical output.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Energies in ``spectrum``, ``wkb``, ``hf`` and ``validate`` are spectral
(E_n = n + 1/2 for the symmetric oscillator); ``period`` takes reduced
energies, the eigenvalues of -d^2/dx^2 + U.
"""
import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from ._parallel import pmap
from . import classical, eigenfunction, oracle, spectrum
from .errors import DomainError, ShearSpecError
from .family import MonomialFamily, ShearParam
from .svgplot import polyline_svg

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
VALIDATE_TOL = 5e-4


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    family: MonomialFamily
    nus: tuple
    levels: int
    output: str
    fmt: str
    grid_L: float
    grid_N: int


def parse_range(text, name="value"):
    """``start:stop:count`` (inclusive) or a single number -> tuple of floats."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad {name} {text!r}; use a number or start:stop:count") from None
    if count < 1:
        raise ConfigError(f"{name} count must be >= 1")
    if count == 1:
        return (start,)
    return tuple(float(v) for v in np.linspace(start, stop, count))


def fmt_value(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".15g")


def render_csv(header, rows):
    lines = [",".join(header)]
    lines += [",".join(fmt_value(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _shear(nu):
    return ShearParam(nu)


def _emit(cfg, header, rows, plot):
    if cfg.fmt == "svg":
        series, xlabel, ylabel = plot(rows)
        text = polyline_svg(series, xlabel, ylabel)
    else:
        text = render_csv(header, rows)
    if cfg.output and cfg.output != "-":
        with open(cfg.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _group_plot(xcol, ycol, keycol, xlabel, ylabel, prefix="n="):
    def plot(rows):
        series = {}
        for r in rows:
            xs, ys = series.setdefault(f"{prefix}{r[keycol]}", ([], []))
            xs.append(float(r[xcol]))
            ys.append(float(r[ycol]))
        return series, xlabel, ylabel
    return plot


def cmd_spectrum(cfg, args):
    rows = spectrum.sweep(cfg.family, cfg.nus, cfg.levels - 1)
    bad = [r for r in rows if not r.ok]
    if bad:
        raise ShearSpecError(f"spectrum failed at (nu={bad[0].nu}, n={bad[0].n}): {bad[0].error}")
    out = [(r.nu, r.n, r.E, r.E_normalized) for r in rows]
    _emit(cfg, ("nu", "n", "E", "E_normalized"), out,
          _group_plot(0, 3, 1, "nu", "E_n(nu)/E_n(1)"))
    return 0


def cmd_eigenfunction(cfg, args):
    if len(cfg.nus) != 1:
        raise ConfigError("eigenfunction takes a single --nu value")
    s = _shear(cfg.nus[0])
    levels = spectrum.find_levels(cfg.family, s, args.n)
    psi = eigenfunction.build(cfg.family, s, levels[args.n])
    if args.x:
        xs = np.array(parse_range(args.x, "--x"))
    else:
        x_min, x_max = psi.tail_cutoffs
        xs = np.linspace(x_min, x_max, 801)
        if x_min < 0.0 < x_max:
            xs = np.union1d(xs, [0.0])
    table = eigenfunction.dump_profile(psi, xs)
    out = [(float(x), float(p)) for x, p in table]
    _emit(cfg, ("x", "psi"), out, lambda rows: ({f"n={args.n}": ([r[0] for r in rows], [r[1] for r in rows])},
                                                "x", "psi"))
    return 0


def cmd_period(cfg, args):
    if len(cfg.nus) != 1 or cfg.nus[0] == 0.5:
        raise ConfigError("period takes a single --nu value in (1/2, 1]")
    nu = cfg.nus[0]
    energies = parse_range(args.E, "--E")
    if any(not e > 0.0 for e in energies):
        raise ConfigError("--E values must be positive")
    ref = ShearParam(1.0)

    def row(e):
        t_nu = classical.classical_period(cfg.family, _shear(nu), e).value
        t_1 = classical.classical_period(cfg.family, ref, e).value
        return (e, t_nu, t_1, abs(t_nu / t_1 - 1.0))

    out = pmap(row, sorted(energies))
    _emit(cfg, ("E", "tau_nu", "tau_1", "rel_diff"), out,
          lambda rows: ({"rel_diff": ([r[0] for r in rows], [r[3] for r in rows])}, "E", "rel_diff"))
    return 0


def cmd_wkb(cfg, args):
    fam = cfg.family

    def row(item):
        nu, n = item
        return (nu, n, fam.to_spectral(classical.wkb_level(fam, _shear(nu), n)))

    items = sorted((nu, n) for nu in cfg.nus for n in range(cfg.levels))
    if any(nu == 0.5 for nu in cfg.nus):
        raise ConfigError("WKB levels are defined for nu in (1/2, 1]")
    out = pmap(row, items)
    _emit(cfg, ("nu", "n", "E_wkb"), out, _group_plot(0, 2, 1, "nu", "E_wkb"))
    return 0


def cmd_hf(cfg, args):
    fam = cfg.family
    if any(nu == 0.5 for nu in cfg.nus):
        raise ConfigError("Hellmann-Feynman slopes need nu in (1/2, 1]")

    def block(nu):
        s = _shear(nu)
        levels = spectrum.find_levels(fam, s, cfg.levels - 1)
        rows = []
        for lev in levels:
            hf = spectrum.hellmann_feynman_derivative(fam, s, lev)
            fd = spectrum.fd_derivative(fam, nu, lev.n, h=args.h)
            rows.append((nu, lev.n, hf, fd, abs(hf - fd) / max(abs(fd), 1e-300)))
        return rows

    out = [r for rows in pmap(block, sorted(cfg.nus)) for r in rows]
    _emit(cfg, ("nu", "n", "dE_dnu_hf", "dE_dnu_fd", "rel_diff"), out,
          _group_plot(0, 2, 1, "nu", "dE/dnu"))
    return 0


def cmd_validate(cfg, args):
    fam = cfg.family

    def block(nu):
        s = _shear(nu)
        closed = spectrum.find_levels(fam, s, cfg.levels - 1)
        ref = oracle.oracle_levels(fam, s, cfg.levels, N=cfg.grid_N, L=cfg.grid_L)
        return [(nu, lev.n, lev.E, float(r), abs(float(r) - lev.E) / lev.E) for lev, r in zip(closed, ref)]

    out = [r for rows in pmap(block, sorted(cfg.nus)) for r in rows]
    _emit(cfg, ("nu", "n", "E_closed", "E_oracle", "rel_err"), out,
          _group_plot(0, 4, 1, "nu", "rel_err"))
    worst = max(r[4] for r in out)
    return 0 if worst < VALIDATE_TOL else EXIT_NUMERIC


COMMANDS = {
    "spectrum": cmd_spectrum,
    "eigenfunction": cmd_eigenfunction,
    "period": cmd_period,
    "wkb": cmd_wkb,
    "hf": cmd_hf,
    "validate": cmd_validate,
}


def build_parser():
    p = argparse.ArgumentParser(prog="shearspec", description="Spectra of sheared linear and harmonic wells.")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=("linear", "harmonic"), required=True)
    common.add_argument("--nu", default="1", help="value or start:stop:count in [0.5, 1]; 0.5 is the hard-wall limit")
    common.add_argument("--k", type=float, default=1.0, help="well strength (default 1)")
    common.add_argument("--levels", type=int, default=5)
    common.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("csv", "svg"), default="csv")
    common.add_argument("--grid-L", type=float, default=None, help="oracle half-width override")
    common.add_argument("--grid-N", type=int, default=4000, help="oracle interior points")

    sub.add_parser("spectrum", parents=[common], help="levels and E_n(nu)/E_n(1)")
    ef = sub.add_parser("eigenfunction", parents=[common], help="normalised profile psi(x)")
    ef.add_argument("--n", type=int, default=0, help="level index")
    ef.add_argument("--x", default=None, help="grid start:stop:count (default: support, 801 points)")
    per = sub.add_parser("period", parents=[common], help="classical period vs the symmetric well")
    per.add_argument("--E", default="0.5:10:20", help="reduced energies start:stop:count")
    sub.add_parser("wkb", parents=[common], help="semiclassical levels")
    hf = sub.add_parser("hf", parents=[common], help="Hellmann-Feynman vs finite-difference dE/dnu")
    hf.add_argument("--h", type=float, default=1e-4, help="finite-difference step in nu")
    sub.add_parser("validate", parents=[common], help="closed-form roots vs finite-difference oracle")
    return p


def make_config(args):
    try:
        fam = MonomialFamily.from_name(args.family, args.k)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    nus = parse_range(args.nu, "--nu")
    for nu in nus:
        if not (0.5 <= nu <= 1.0) or not math.isfinite(nu):
            raise ConfigError(f"nu = {nu} outside [0.5, 1]")
        try:
            ShearParam(nu)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
    if args.levels < 1:
        raise ConfigError("--levels must be >= 1")
    if args.grid_N < 200:
        raise ConfigError("--grid-N must be >= 200")
    return RunConfig(fam, tuple(sorted(set(nus))), args.levels, args.output, args.format,
                     args.grid_L, args.grid_N)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        if args.command == "eigenfunction" and not 0 <= args.n:
            raise ConfigError("--n must be >= 0")
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, DomainError) as exc:
        print(f"shearspec: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ShearSpecError as exc:
        print(f"shearspec: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
