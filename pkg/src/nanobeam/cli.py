"""
Command-line interface for nanobeam.

Usage:
    nanobeam modes --bc clamped-clamped --count 15
    nanobeam spectrum --bc hinged-hinged --kmax 2 --nmax 4 --degeneracies
    nanobeam casimir --scheme both --eps-schedule 1e-2,1e-4,1e-6
    nanobeam decohere --bc clamped-hinged --j 1 --k 2 --pairs 1:1,2:1
    nanobeam decohere --bc clamped-hinged --rank --m-max 3 --n-max 1

Settings resolve as: command-line flag > config file > built-in default.
The config file (``--config`` or ``$NANOBEAM_CONFIG``) holds flat
``key = value`` lines; ``#`` starts a comment and ``[section]`` headers
are ignored.

CSV output may contain several tables separated by one blank line.
Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .beam_modes import DEFAULT_TOL, BeamSpec, BoundaryCondition, FrequencyConvention, mode_frequencies
from .casimir import Scheme, casimir_report
from .decoherence import (
    DEFAULT_DEPHASING,
    decoherence_time,
    linear_entropy_series,
    rank_subspaces,
    scenario_from_table,
)
from .errors import DomainError, NumericalFailure
from .spectrum import energy_levels, scan_quasi_degeneracies

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

CONFIG_ENV = "NANOBEAM_CONFIG"

DEFAULTS = {
    "E": 1.0,
    "I": 1.0,
    "rho": 1.0,
    "A": 1.0,
    "L": 1.0,
    "hbar": 1.0,
    "bc": BoundaryCondition.HINGED_HINGED.value,
    "tol": DEFAULT_TOL,
    "format": "csv",
    "out": "-",
    "frequency_convention": FrequencyConvention.PAPER.value,
}

_CONFIG_KEYS = {
    "e": "E",
    "youngs_modulus": "E",
    "i": "I",
    "area_moment": "I",
    "rho": "rho",
    "density": "rho",
    "a": "A",
    "cross_section": "A",
    "l": "L",
    "length": "L",
    "hbar": "hbar",
    "bc": "bc",
    "tol": "tol",
    "format": "format",
    "out": "out",
    "frequency_convention": "frequency_convention",
}
_FLOAT_KEYS = {"E", "I", "rho", "A", "L", "hbar", "tol"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    spec: BeamSpec
    tol: float
    fmt: str
    out: str
    convention: FrequencyConvention

    def meta(self) -> dict:
        return {
            "spec": self.spec.as_dict(),
            "tol": self.tol,
            "frequency_convention": self.convention.value,
        }


def read_config_file(path: str) -> dict:
    """Parse flat ``key = value`` text into canonical setting names."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from None

    parser = configparser.ConfigParser(
        comment_prefixes=("#",), inline_comment_prefixes=("#",), interpolation=None, strict=False
    )
    try:
        # keys before any [section] header land in this synthetic one
        parser.read_string("[settings]\n" + text, source=path)
    except configparser.Error as exc:
        raise UsageError(f"malformed config file {path!r}: {exc}".replace("\n", " ")) from None

    values = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            canonical = _CONFIG_KEYS.get(key.replace("-", "_"))
            if canonical is None:
                raise UsageError(f"{path}: unknown key {key!r}")
            value = value.strip("\"'")
            if canonical in _FLOAT_KEYS:
                try:
                    values[canonical] = float(value)
                except ValueError:
                    raise UsageError(f"{path}: {key} must be a number, got {value!r}") from None
            else:
                values[canonical] = value
    return values


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    settings = dict(DEFAULTS)
    config_path = getattr(args, "config", None) or environ.get(CONFIG_ENV)
    if config_path:
        settings.update(read_config_file(config_path))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value

    if settings["format"] not in ("csv", "json"):
        raise UsageError(f"format must be 'csv' or 'json', got {settings['format']!r}")
    try:
        spec = BeamSpec(
            youngs_modulus=settings["E"],
            area_moment=settings["I"],
            density=settings["rho"],
            cross_section=settings["A"],
            length=settings["L"],
            bc=settings["bc"],
            hbar=settings["hbar"],
        )
        convention = FrequencyConvention.parse(settings["frequency_convention"])
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if not settings["tol"] > 0:
        raise UsageError(f"tol must be positive, got {settings['tol']!r}")
    return RunConfig(spec, float(settings["tol"]), settings["format"], settings["out"], convention)


# -- output -------------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render_csv(tables: list[tuple[list[str], list[dict]]]) -> str:
    buf = io.StringIO()
    for i, (columns, rows) in enumerate(tables):
        if i:
            buf.write("\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def read_csv_tables(text: str) -> list[list[dict]]:
    """Inverse of :func:`render_csv`; values are left as strings."""
    tables = []
    for block in text.split("\n\n"):
        if block.strip():
            tables.append(list(csv.DictReader(io.StringIO(block))))
    return tables


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def _emit(config: RunConfig, text: str, stdout) -> None:
    if config.out in ("-", ""):
        stdout.write(text)
        return
    with open(config.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _output(config: RunConfig, command: str, flags: dict, tables, extra: dict | None = None) -> str:
    """Render ``tables`` (list of (name, columns, rows)); the first is ``data`` in JSON."""
    if config.fmt == "csv":
        return render_csv([(columns, rows) for _, columns, rows in tables])
    document = {"meta": {"command": command, **config.meta(), "flags": flags}}
    for i, (name, _, rows) in enumerate(tables):
        document["data" if i == 0 else name] = rows
    if extra:
        document.update(extra)
    return render_json(document)


# -- subcommands --------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _pair_list(text: str) -> list[tuple[int, int]]:
    pairs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            m, n = (int(v) for v in part.split(":"))
        except ValueError:
            raise UsageError(f"pairs must look like m:n, got {part!r}") from None
        if m < 0 or n < 0:
            raise UsageError(f"occupation numbers must be nonnegative, got {part!r}")
        pairs.append((m, n))
    if not pairs:
        raise UsageError("at least one m:n pair is required")
    return pairs


def cmd_modes(args, config: RunConfig) -> str:
    table = mode_frequencies(config.spec, args.count, config.tol, config.convention)
    columns = ["k", "x_root", "lambda", "omega", "residual"]
    rows = [
        {"k": m.k, "x_root": m.x_root, "lambda": m.lam, "omega": m.omega, "residual": m.residual}
        for m in table
    ]
    return _output(config, "modes", {"count": args.count}, [("modes", columns, rows)])


def cmd_spectrum(args, config: RunConfig) -> str:
    if args.kmax < 1 or args.nmax < 1:
        raise UsageError("--kmax and --nmax must be at least 1")
    if not args.rel_tol >= 0:
        raise UsageError("--rel-tol must be nonnegative")
    table = mode_frequencies(config.spec, args.kmax, config.tol, config.convention)
    levels = energy_levels(table, args.kmax, args.nmax)
    tables = [(
        "levels",
        ["k", "n", "energy0", "energy_raw"],
        [{"k": lv.k, "n": lv.n, "energy0": lv.energy0, "energy_raw": lv.energy_raw} for lv in levels],
    )]
    if args.degeneracies:
        report = scan_quasi_degeneracies(table, args.kmax, args.nmax, args.rel_tol)
        rows = [
            {
                "k": p.a[0],
                "n": p.a[1],
                "k_prime": p.b[0],
                "n_prime": p.b[1],
                "gap": p.gap,
                "rel_gap": p.rel_gap,
                "exact": p.exact,
            }
            for p in report.pairs
        ]
        tables.append(("degeneracies", ["k", "n", "k_prime", "n_prime", "gap", "rel_gap", "exact"], rows))
    flags = {"kmax": args.kmax, "nmax": args.nmax, "degeneracies": args.degeneracies, "rel_tol": args.rel_tol}
    return _output(config, "spectrum", flags, tables)


def cmd_casimir(args, config: RunConfig) -> str:
    schedule = _float_list(args.eps_schedule)
    if not schedule or any(not (e > 0 and math.isfinite(e)) for e in schedule):
        raise UsageError(f"epsilon schedule must hold positive finite values, got {args.eps_schedule!r}")
    schemes = [Scheme.PAPER, Scheme.THETA] if args.scheme == "both" else [Scheme.parse(args.scheme)]
    reports = {s: casimir_report(config.spec, s, schedule, args.tail_tol) for s in schemes}
    first = reports[schemes[0]]

    column = {Scheme.PAPER: "difference_paper", Scheme.THETA: "difference_theta"}
    curve_columns = ["epsilon"] + [column[s] for s in schemes]
    curve = []
    for i, eps in enumerate(first.epsilon_schedule):
        row = {"epsilon": eps}
        for s in schemes:
            row[column[s]] = reports[s].difference_values[i]
        curve.append(row)

    summary = {f"limit_{column[s].split('_')[1]}": reports[s].extrapolated_limit for s in schemes}
    summary.update(
        delta_E=first.delta_E,
        energy_per_area=first.energy_per_area,
        force_per_area=first.force_per_area,
        sound_speed=first.sound_speed,
    )
    flags = {"scheme": args.scheme, "eps_schedule": list(first.epsilon_schedule), "tail_tol": args.tail_tol}
    if config.fmt == "json":
        return _output(config, "casimir", flags, [("curve", curve_columns, curve)], {"summary": summary})
    summary_rows = [{"quantity": key, "value": value} for key, value in summary.items()]
    return _output(
        config, "casimir", flags, [("curve", curve_columns, curve), ("summary", ["quantity", "value"], summary_rows)]
    )


def _amplitudes(args) -> tuple[complex, complex]:
    try:
        a, b = complex(args.a), complex(args.b)
    except ValueError:
        raise UsageError(f"amplitudes must be numbers, got a={args.a!r}, b={args.b!r}") from None
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise UsageError(f"|a|^2 + |b|^2 = {norm!r} must equal 1 within 1e-9")
    scale = math.sqrt(norm)
    return a / scale, b / scale


def _plain(z: complex):
    return z.real if z.imag == 0 else [z.real, z.imag]


def cmd_decohere(args, config: RunConfig) -> str:
    if not args.dephasing >= 0:
        raise UsageError("--lambda must be nonnegative")
    if args.j < 1 or args.k < 1:
        raise UsageError("--j and --k must be positive mode indices")
    a, b = _amplitudes(args)
    table = mode_frequencies(config.spec, max(args.j, args.k), config.tol, config.convention)
    flags = {"j": args.j, "k": args.k, "lambda": args.dephasing, "a": _plain(a), "b": _plain(b)}

    if args.rank:
        if args.m_max < 1 or args.n_max < 1:
            raise UsageError("--m-max and --n-max must be at least 1")
        flags.update(rank=True, m_max=args.m_max, n_max=args.n_max)
        rows = []
        for m, n, t_star in rank_subspaces(table, args.j, args.k, args.m_max, args.n_max, args.dephasing):
            gap = scenario_from_table(table, args.j, args.k, m, n, dephasing=args.dephasing).energy_gap
            rows.append({"m": m, "n": n, "delta_E": gap, "t_star": t_star})
        return _output(config, "decohere", flags, [("ranking", ["m", "n", "delta_E", "t_star"], rows)])

    if not (args.t_max > 0 and args.steps >= 1):
        raise UsageError("--t-max must be positive and --steps at least 1")
    pairs = _pair_list(args.pairs)
    grid = np.linspace(0.0, args.t_max, args.steps + 1)
    flags.update(pairs=[f"{m}:{n}" for m, n in pairs], t_max=args.t_max, steps=args.steps)

    names = [f"delta_{m}:{n}" for m, n in pairs]
    series, summary = [], []
    for (m, n), name in zip(pairs, names):
        scenario = scenario_from_table(table, args.j, args.k, m, n, a, b, args.dephasing)
        s = linear_entropy_series(scenario, grid)
        series.append(s.delta)
        summary.append(
            {
                "m": m,
                "n": n,
                "delta_E": scenario.energy_gap,
                "t_star": decoherence_time(scenario),
                "delta_asymptote": s.delta_asymptote,
            }
        )
    rows = []
    for i, t in enumerate(grid):
        row = {"t": float(t)}
        for name, delta in zip(names, series):
            row[name] = float(delta[i])
        rows.append(row)
    summary_columns = ["m", "n", "delta_E", "t_star", "delta_asymptote"]
    return _output(
        config, "decohere", flags, [("series", ["t"] + names, rows), ("pairs", summary_columns, summary)]
    )


# -- parser -------------------------------------------------------------------


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS, allow_abbrev=False)
    common.add_argument("--config", help=f"flat key = value config file (default: ${CONFIG_ENV})")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", help="output path, '-' for stdout")
    common.add_argument("--frequency-convention", dest="frequency_convention", choices=["paper", "standard"])
    common.add_argument("--bc", choices=[bc.value for bc in BoundaryCondition])
    common.add_argument("--E", dest="E", type=float, help="Young's modulus [Pa]")
    common.add_argument("--I", dest="I", type=float, help="area moment of inertia [m^4]")
    common.add_argument("--rho", type=float, help="density [kg/m^3]")
    common.add_argument("--A", dest="A", type=float, help="cross-section area [m^2]")
    common.add_argument("--L", dest="L", type=float, help="length [m]")
    common.add_argument("--hbar", type=float, help="reduced Planck constant [J s]")
    common.add_argument("--tol", type=float, help="root residual tolerance")
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS, help="print a run banner on stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="nanobeam", description=__doc__.split("\n\n")[0].strip(), parents=[common], allow_abbrev=False
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modes", parents=[common], allow_abbrev=False, help="mode eigenvalues and frequencies")
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(handler=cmd_modes)

    p = sub.add_parser("spectrum", parents=[common], allow_abbrev=False, help="renormalized levels and degeneracies")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--degeneracies", action="store_true")
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=0.0)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("casimir", parents=[common], allow_abbrev=False, help="phonon Casimir energy and force")
    p.add_argument("--scheme", choices=["paper", "theta", "both"], default="paper")
    p.add_argument("--eps-schedule", dest="eps_schedule", default="1e-2,1e-4,1e-6")
    p.add_argument("--tail-tol", dest="tail_tol", type=float, default=1e-14)
    p.set_defaults(handler=cmd_casimir)

    p = sub.add_parser("decohere", parents=[common], allow_abbrev=False, help="linear entropy under phase damping")
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--pairs", default="1:1,2:1", help="m:n occupation pairs, comma separated")
    p.add_argument("--a", default=repr(1 / math.sqrt(2)))
    p.add_argument("--b", default=repr(1 / math.sqrt(2)))
    p.add_argument("--lambda", dest="dephasing", type=float, default=DEFAULT_DEPHASING)
    p.add_argument("--t-max", dest="t_max", type=float, default=20.0)
    p.add_argument("--steps", type=int, default=400)
    p.add_argument("--rank", action="store_true", help="rank (m, n) by decoherence time instead")
    p.add_argument("--m-max", dest="m_max", type=int, default=3)
    p.add_argument("--n-max", dest="n_max", type=int, default=1)
    p.set_defaults(handler=cmd_decohere)
    return parser


def main(argv=None, stdout=None, stderr=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = resolve_config(args, environ)
        if getattr(args, "verbose", False):
            stderr.write(
                f"# nanobeam {__version__} {args.command} "
                f"started {time.strftime('%Y-%m-%dT%H:%M:%S')} spec={config.spec.as_dict()}\n"
            )
        text = args.handler(args, config)
        _emit(config, text, stdout)
    except UsageError as exc:
        stderr.write(f"nanobeam {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except NumericalFailure as exc:
        where = f" (mode k={exc.k})" if exc.k is not None else ""
        stderr.write(f"nanobeam {args.command}: numerical failure{where}: {exc}\n")
        return EXIT_NUMERICAL
    except (DomainError, IndexError) as exc:
        stderr.write(f"nanobeam {args.command}: error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
