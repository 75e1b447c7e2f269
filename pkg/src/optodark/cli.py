"""Command-line front end: ``optodark {solve,darkmode,sweep,figure}``.

Exit codes
----------
0  success (``darkmode``: no dark mode, i.e. it is broken or absent)
2  bad invocation, config or sweep spec
3  drift matrix unstable or marginal (``solve``)
4  numerical failure
5  ``darkmode`` only: a dark mode exists
6  degenerate configuration (G1 = G2 = 0) or unsupported coupling configuration
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .darkmode import DEFAULT_DARK_TOL, classify_configuration, cm_rel_analysis, dark_mode_conditions
from .entanglement import DEFAULT_DISCRIMINANT_CLAMP, all_pair_report
from .errors import (
    ConfigError,
    DegenerateConfigurationError,
    NumericalError,
    OptodarkError,
    ParameterError,
    StabilityError,
    UnphysicalCovarianceError,
    UnsupportedConfigurationError,
)
from .lyapunov import DEFAULT_RESIDUAL_RTOL, solve_lyapunov
from .model import (
    DEFAULT_STABILITY_MARGIN,
    NetworkParams,
    build_drift_diffusion,
    check_stability,
    params_from_mapping,
    parse_value,
    read_config,
)
from .sweep import PRESET_NAMES, Axis, Grid, SweepSpec, figure_preset, run_sweep, write_result

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_NUMERICAL = 4
EXIT_DARK_MODE = 5
EXIT_DEGENERATE = 6

REPORT_VERSION = 1


class _Once(argparse.Action):
    """Store a value; repeating the flag with a different value is an error."""

    def __call__(self, parser, namespace, values, option_string=None):
        sentinel = f"_seen_{self.dest}"
        if getattr(namespace, sentinel, False) and getattr(namespace, self.dest) != values:
            parser.error(f"conflicting values for {option_string}: {getattr(namespace, self.dest)!r} vs {values!r}")
        setattr(namespace, sentinel, True)
        setattr(namespace, self.dest, values)


def _add_common(p: argparse.ArgumentParser, params: bool = True):
    if params:
        p.add_argument("--config", action=_Once, help="key = value parameter file (or a JSON solve report)")
        p.add_argument(
            "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
            help="parameter override; wins over --config (repeatable)",
        )
    p.add_argument("--out", action=_Once, help="output path (default: stdout)")
    p.add_argument("--tol-stability", type=float, action=_Once, default=DEFAULT_STABILITY_MARGIN)
    p.add_argument("--tol-residual", type=float, action=_Once, default=DEFAULT_RESIDUAL_RTOL)
    p.add_argument("--tol-darkmode", type=float, action=_Once, default=DEFAULT_DARK_TOL)
    p.add_argument("--tol-discriminant", type=float, action=_Once, default=DEFAULT_DISCRIMINANT_CLAMP)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optodark", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"optodark {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="steady state and entanglement at one parameter point")
    _add_common(p)
    p.add_argument("--format", choices=("json", "csv"), default="json", action=_Once)

    p = sub.add_parser("darkmode", help="dark-mode conditions and collective-coordinate analysis")
    _add_common(p)
    p.add_argument("--switch-off", default=None, action=_Once, metavar="CH[,CH...]",
                   help="also classify this coupling configuration (channels J, eta, gs1, gs2)")

    p = sub.add_parser("sweep", help="1-D or 2-D parameter sweep")
    _add_common(p)
    p.add_argument("--axis", action="append", default=[], metavar="NAME=GRID",
                   help="e.g. delta_s=linear:0.5:1.5:201, nbar=log10:-3:3:201, gs1=list:0,0.1")
    p.add_argument("--output", dest="outputs", action="append", default=[],
                   help="requested output (EN_a_b1, sigma_a_b2, stable, max_re, m1, m2); repeatable")
    p.add_argument("--format", choices=("json", "csv"), default="csv", action=_Once)
    p.add_argument("--workers", type=int, default=1, action=_Once)

    p = sub.add_parser("figure", help="regenerate the data behind one figure panel")
    p.add_argument("name", nargs="?", help=f"one of: {', '.join(PRESET_NAMES)}")
    p.add_argument("--list", action="store_true", help="list presets and exit")
    p.add_argument("--workers", type=int, default=1, action=_Once)
    _add_common(p, params=False)
    return parser


def resolve_params(args) -> NetworkParams:
    values: dict[str, Any] = {}
    if args.config:
        values.update(read_config(args.config))
    seen: dict[str, Any] = {}
    for item in args.overrides:
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        value = parse_value(key, raw, ("--set", 0))
        if key in seen and seen[key] != value:
            raise ConfigError(f"conflicting --set values for {key}: {seen[key]!r} vs {value!r}")
        seen[key] = value
    values.update(seen)
    return params_from_mapping(values)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _spectrum(spec) -> list[list[float]]:
    order = np.lexsort((spec.imag, spec.real))
    return [[float(z.real), float(z.imag)] for z in spec[order]]


def solve_report(params: NetworkParams, args) -> tuple[dict, int]:
    dd = build_drift_diffusion(params)
    verdict = check_stability(dd, args.tol_stability)
    report: dict[str, Any] = {
        "format": "optodark-solve",
        "format_version": REPORT_VERSION,
        "artifact_version": __version__,
        "params": params.as_dict(),
        "modes": list(dd.modes),
        "ordering": list(dd.ordering),
        "stability": {
            "status": verdict.status,
            "max_real": verdict.max_real,
            "spectrum": _spectrum(verdict.spectrum),
        },
    }
    if not verdict.stable:
        return report, EXIT_UNSTABLE
    cov = solve_lyapunov(dd, args.tol_stability, args.tol_residual)
    report["covariance"] = cov.v.tolist()
    report["entanglement"] = [
        {"pair": r.pair.label, "sigma_minus": r.sigma_minus, "log_neg": r.log_neg}
        for r in all_pair_report(cov, args.tol_discriminant)
    ]
    return report, EXIT_OK


def _solve_csv(report: dict) -> str:
    rows = [("key", "value")]
    for k, v in report["params"].items():
        rows.append((f"param.{k}", str(v).lower() if isinstance(v, bool) else f"{v:.17g}"))
    rows.append(("stability.status", report["stability"]["status"]))
    rows.append(("stability.max_real", f"{report['stability']['max_real']:.17g}"))
    for i, (re_, im) in enumerate(report["stability"]["spectrum"]):
        rows.append((f"eig.{i}.real", f"{re_:.17g}"))
        rows.append((f"eig.{i}.imag", f"{im:.17g}"))
    for e in report.get("entanglement", []):
        rows.append((f"EN_{e['pair']}", f"{e['log_neg']:.17g}"))
        rows.append((f"sigma_{e['pair']}", f"{e['sigma_minus']:.17g}"))
    for i, row in enumerate(report.get("covariance", [])):
        for j, x in enumerate(row):
            rows.append((f"V.{i}.{j}", f"{x:.17g}"))
    return "".join(f"{a},{b}\n" for a, b in rows)


def cmd_solve(args) -> int:
    params = resolve_params(args)
    report, code = solve_report(params, args)
    if args.format == "json":
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        _emit(_solve_csv(report), args.out)
    if code == EXIT_UNSTABLE:
        print(
            f"optodark: drift matrix is {report['stability']['status']} "
            f"(max Re eig = {report['stability']['max_real']:.6g}); no steady state",
            file=sys.stderr,
        )
    return code


def cmd_darkmode(args) -> int:
    params = resolve_params(args)
    dm = dark_mode_conditions(params, args.tol_darkmode)
    cm = cm_rel_analysis(params.g1, params.g2, params.gs1, params.omega1, params.omega2)
    doc: dict[str, Any] = {
        "format": "optodark-darkmode",
        "format_version": REPORT_VERSION,
        "params": params.as_dict(),
        "dark_mode": dm.as_dict(),
        "cm_rel": cm.as_dict(),
    }
    exists = dm.dark_mode_exists
    if args.switch_off is not None:
        channels = [c for c in args.switch_off.split(",") if c.strip()]
        verdict = classify_configuration(channels, params, args.tol_darkmode)
        doc["configuration"] = verdict.as_dict()
        exists = verdict.dark_mode_exists
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_DARK_MODE if exists else EXIT_OK


def _parse_axis(text: str) -> Axis:
    name, sep, grid = text.partition("=")
    if not sep:
        raise ConfigError(f"--axis expects NAME=GRID, got {text!r}")
    return Axis(name.strip(), Grid.parse(grid))


def cmd_sweep(args) -> int:
    params = resolve_params(args)
    if not args.axis:
        raise ConfigError("sweep needs at least one --axis")
    spec = SweepSpec(
        base=params,
        axes=tuple(_parse_axis(a) for a in args.axis),
        outputs=tuple(args.outputs) or ("EN_a_b1", "EN_a_b2", "stable"),
    )
    result = run_sweep(
        spec, workers=args.workers, margin=args.tol_stability, rtol=args.tol_residual, clamp=args.tol_discriminant
    )
    if args.format == "csv":
        _emit(result.to_csv(), args.out)
    else:
        doc = result.manifest()
        doc["records"] = result.records()
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    if args.list or not args.name:
        print("\n".join(PRESET_NAMES))
        return EXIT_OK if args.list else EXIT_CONFIG
    spec = figure_preset(args.name)
    result = run_sweep(
        spec, workers=args.workers, margin=args.tol_stability, rtol=args.tol_residual, clamp=args.tol_discriminant
    )
    out_dir = Path(args.out or ".")
    for path in write_result(result, out_dir, args.name):
        print(path)
    return EXIT_OK


_COMMANDS = {"solve": cmd_solve, "darkmode": cmd_darkmode, "sweep": cmd_sweep, "figure": cmd_figure}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (DegenerateConfigurationError, UnsupportedConfigurationError) as exc:
        print(f"optodark: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ParameterError, ConfigError) as exc:
        print(f"optodark: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StabilityError as exc:
        print(f"optodark: {exc}", file=sys.stderr)
        return EXIT_UNSTABLE
    except (NumericalError, UnphysicalCovarianceError) as exc:
        print(f"optodark: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OptodarkError as exc:  # pragma: no cover - remaining library errors
        print(f"optodark: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
