"""Command-line front end: ``relosc {thermo,compare,vacuum,zeta}``.

All tabular output is CSV with a header row and ``\\n`` line endings.
Exit codes: 0 success, 2 invalid arguments or domain error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .core import (
    ConvergenceError,
    DomainError,
    ReloscError,
    SeriesControl,
    UnsupportedOrderError,
)
from .partition import (
    GroundStateShift,
    ZetaFormMode,
    em_closed_form,
    partition_direct,
    zeta_closed_form,
)
from .specfun import hurwitz_zeta
from .spectrum import OscillatorParams
from .thermo import Method, sweep
from .vacuum import DEFAULT_KMAX, vacuum_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

THERMO_HEADER = ["r", "tau", "method", "Z", "F", "U", "S", "C"]
COMPARE_HEADER = [
    "r",
    "tau",
    "Z_direct",
    "Z_zeta_corrected",
    "Z_zeta_printed",
    "Z_em_printed",
    "Z_em_own",
    "dev_zeta_corrected",
    "dev_zeta_printed",
    "dev_em_printed",
    "dev_em_own",
    "flags",
]
VACUUM_HEADER = ["r", "exact", "asymptotic_kmax", "leading_eq27"]

# |Z_em| beyond this multiple of the true shifted Z is flagged as divergent
DIVERGENCE_RATIO = 1e3

METHOD_CHOICES = {m.value: m for m in Method}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    r_values: list[float] = field(default_factory=lambda: [1.0])
    tau_grid: list[float] = field(default_factory=list)
    methods: list[Method] = field(default_factory=lambda: [Method.DIRECT_SUM])
    mode: ZetaFormMode = ZetaFormMode.RESIDUE_CORRECTED
    shift: GroundStateShift = GroundStateShift.UNSHIFTED
    ctl: SeriesControl = field(default_factory=SeriesControl)
    k_max: int = DEFAULT_KMAX
    out: str | None = None
    jobs: int = 1


def fmt(x: float) -> str:
    return format(x, ".15g")


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text}")
    return value


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text}")
    return value


def make_grid(lo: float, hi: float, steps: int, log: bool = False) -> list[float]:
    if steps == 1:
        if hi != lo:
            raise UsageError("a single step needs min == max")
        return [lo]
    if not hi > lo:
        raise UsageError(f"grid maximum {hi} must exceed minimum {lo}")
    grid = np.geomspace(lo, hi, steps) if log else np.linspace(lo, hi, steps)
    return [float(x) for x in grid]


def _add_series_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tolerance", type=_positive, default=SeriesControl.tolerance)
    p.add_argument("--max-terms", type=_count, default=SeriesControl.max_terms)


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=_positive, nargs="+", default=[1.0], help="one or more r values")
    p.add_argument("--tau-min", type=_positive, default=0.01)
    p.add_argument("--tau-max", type=_positive, default=10.0)
    p.add_argument("--steps", type=_count, default=500)
    p.add_argument("--log-tau", action="store_true", help="geometric tau spacing")
    p.add_argument(
        "--mode",
        choices=[m.value for m in ZetaFormMode],
        default=ZetaFormMode.RESIDUE_CORRECTED.value,
    )
    p.add_argument("--jobs", type=_count, default=1, help="worker threads per sweep")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    _add_series_flags(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relosc",
        description="Thermodynamics and vacuum energy of the 1D Dirac / Klein-Gordon oscillator.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("thermo", help="Z, F, U, S, C over a tau grid")
    _add_grid_flags(p)
    p.add_argument("--method", choices=[*METHOD_CHOICES, "all"], default="direct")

    p = sub.add_parser("compare", help="partition function by every method vs direct sum")
    _add_grid_flags(p)
    p.add_argument(
        "--shift",
        choices=[s.value for s in GroundStateShift],
        default=GroundStateShift.UNSHIFTED.value,
    )

    p = sub.add_parser("vacuum", help="vacuum energy over an r grid")
    p.add_argument("--r", type=_positive, default=None)
    p.add_argument("--r-min", type=_positive, default=0.1)
    p.add_argument("--r-max", type=_positive, default=2.0)
    p.add_argument("--steps", type=_count, default=20)
    p.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    p.add_argument("--out", default=None)
    _add_series_flags(p)

    p = sub.add_parser("zeta", help="print the Hurwitz zeta function zeta(s, alpha)")
    p.add_argument("--s", type=_finite, required=True)
    p.add_argument("--alpha", type=_finite, required=True)
    _add_series_flags(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    cfg.ctl = SeriesControl(tolerance=args.tolerance, max_terms=args.max_terms)
    cfg.out = getattr(args, "out", None)
    if args.subcommand in ("thermo", "compare"):
        cfg.r_values = list(args.r)
        cfg.tau_grid = make_grid(args.tau_min, args.tau_max, args.steps, args.log_tau)
        cfg.mode = ZetaFormMode(args.mode)
        cfg.jobs = args.jobs
    if args.subcommand == "thermo":
        cfg.methods = list(Method) if args.method == "all" else [METHOD_CHOICES[args.method]]
    if args.subcommand == "compare":
        cfg.shift = GroundStateShift(args.shift)
    if args.subcommand == "vacuum":
        if args.kmax < 2:
            raise UsageError(f"--kmax must be >= 2, got {args.kmax}")
        cfg.k_max = args.kmax
        if args.r is not None:
            cfg.r_values = [args.r]
        else:
            cfg.r_values = make_grid(args.r_min, args.r_max, args.steps)
    return cfg


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def run_thermo(cfg: RunConfig) -> str:
    """CSV rows ordered by r (as given), tau ascending, then method."""
    rows = []
    for r in cfg.r_values:
        params = OscillatorParams(r)
        per_method = {
            m: sweep(params, cfg.tau_grid, m, cfg.ctl, cfg.mode, workers=cfg.jobs)
            for m in cfg.methods
        }
        for i, tau in enumerate(cfg.tau_grid):
            for m in cfg.methods:
                pt = per_method[m][i]
                if not pt.ok:
                    raise ConvergenceError(
                        f"r={fmt(r)} tau={fmt(tau)} method={m.value}: {pt.error}"
                    )
                rows.append(
                    [fmt(r), fmt(tau), m.value, *(fmt(v) for v in (pt.Z, pt.F, pt.U, pt.S, pt.C))]
                )
    return _csv_text(THERMO_HEADER, rows)


def compare_row(params: OscillatorParams, tau: float, cfg: RunConfig) -> tuple[list[str], dict]:
    """One MethodReport row and its signed deviations (keyed by method label)."""
    shift = cfg.shift
    forms = {
        "zeta_corrected": zeta_closed_form(params, ZetaFormMode.RESIDUE_CORRECTED, cfg.ctl),
        "zeta_printed": zeta_closed_form(params, ZetaFormMode.AS_PRINTED, cfg.ctl),
        "em_printed": em_closed_form(params, ZetaFormMode.AS_PRINTED, cfg.ctl),
        "em_own": em_closed_form(params, ZetaFormMode.RESIDUE_CORRECTED, cfg.ctl),
    }
    values = {k: f.value(tau, shift) for k, f in forms.items()}
    # the printed Euler-Maclaurin polynomial is reported as published (shifted)
    em_printed_literal = forms["em_printed"].value(tau, GroundStateShift.SHIFTED)

    flags = []
    try:
        z_direct_shifted = partition_direct(params, tau, cfg.ctl, GroundStateShift.SHIFTED)
    except ConvergenceError:
        z_direct = None
        flags.append("direct_unconverged")
    else:
        z_direct = (
            z_direct_shifted
            if shift is GroundStateShift.SHIFTED
            else partition_direct(params, tau, cfg.ctl, GroundStateShift.UNSHIFTED)
        )
        for key in ("em_printed", "em_own"):
            v = forms[key].value(tau, GroundStateShift.SHIFTED)
            if abs(v) > DIVERGENCE_RATIO * z_direct_shifted:
                flags.append(f"{key}_divergent")

    devs = {}
    if z_direct is not None and z_direct > 0:
        devs = {k: (v - z_direct) / z_direct for k, v in values.items()}

    row = [
        fmt(params.r),
        fmt(tau),
        "" if z_direct is None else fmt(z_direct),
        fmt(values["zeta_corrected"]),
        fmt(values["zeta_printed"]),
        fmt(em_printed_literal),
        fmt(values["em_own"]),
        *(fmt(devs[k]) if k in devs else "" for k in values),
        ";".join(flags),
    ]
    return row, devs


def run_compare(cfg: RunConfig) -> str:
    """MethodReport rows plus a trailing ``max`` row of largest |deviation|."""
    rows = []
    worst: dict[str, float] = {}
    for r in cfg.r_values:
        params = OscillatorParams(r)
        for tau in cfg.tau_grid:
            row, devs = compare_row(params, tau, cfg)
            rows.append(row)
            for k, d in devs.items():
                if math.isfinite(d):
                    worst[k] = max(worst.get(k, 0.0), abs(d))
    keys = ["zeta_corrected", "zeta_printed", "em_printed", "em_own"]
    rows.append(["max", "", "", "", "", "", "", *(fmt(worst[k]) if k in worst else "" for k in keys), ""])
    return _csv_text(COMPARE_HEADER, rows)


def run_vacuum(cfg: RunConfig) -> str:
    rows = []
    for r in cfg.r_values:
        res = vacuum_report(OscillatorParams(r), cfg.k_max, cfg.ctl)
        rows.append([fmt(res.r), fmt(res.exact), fmt(res.asymptotic), fmt(res.leading)])
    return _csv_text(VACUUM_HEADER, rows)


def run_zeta(args: argparse.Namespace) -> str:
    ctl = SeriesControl(tolerance=args.tolerance, max_terms=args.max_terms)
    return fmt(hurwitz_zeta(args.s, args.alpha, ctl)) + "\n"


RUNNERS = {"thermo": run_thermo, "compare": run_compare, "vacuum": run_vacuum}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    try:
        if args.subcommand == "zeta":
            text = run_zeta(args)
            out = None
        else:
            cfg = config_from_args(args)
            text = RUNNERS[cfg.subcommand](cfg)
            out = cfg.out
    except (UsageError, DomainError, UnsupportedOrderError) as exc:
        print(f"relosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReloscError as exc:
        print(f"relosc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"relosc: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
