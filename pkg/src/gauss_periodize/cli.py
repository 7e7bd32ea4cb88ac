"""Command-line front end.

Every command writes one table as CSV or JSON to stdout (or ``--output``).
Failures write a single JSON line to stderr and exit with 2 (invalid
input), 3 (unreachable ``select-order`` target) or 4 (quadrature did not
converge).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import analysis, core, evaluation
from .errors import InvalidParameterError, QuadratureNotConverged, UnsatisfiableTarget

COMMANDS = ("coeffs", "eval", "scan", "budget", "equivalence", "select-order", "chain-check")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSATISFIABLE = 3
EXIT_NOT_CONVERGED = 4

DEFAULT_GRID_POINTS = 10001
DEFAULT_CHAIN_POINTS = 1001


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    tau_m: float
    n_max: int | None = None
    epsilon: float | None = None
    grid_points: int | None = None
    t: float | None = None
    output_format: str = "csv"
    output_path: str | None = None
    k_max: int = 4
    rel_tol: float = 1e-14
    image_count: int = 3
    initial_panels: int = 64
    max_doublings: int = 20

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidParameterError(f"unknown command {self.command!r}")
        if self.output_format not in ("csv", "json"):
            raise InvalidParameterError(f"unknown format {self.output_format!r}")
        if self.command == "eval" and self.t is None:
            raise InvalidParameterError("eval requires --t")
        if self.command == "select-order" and self.epsilon is None:
            raise InvalidParameterError("select-order requires --epsilon")
        needs_order = self.command in ("coeffs", "eval", "scan", "budget", "equivalence")
        if needs_order and self.n_max is None and self.epsilon is None:
            raise InvalidParameterError(f"{self.command} requires --n-max or --epsilon")
        if self.grid_points is not None and self.grid_points < 2:
            raise InvalidParameterError("--grid-points must be >= 2")


@dataclass
class Table:
    columns: list[str]
    rows: list[list]
    summary: dict | None = None


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def render_json(command: str, config: CliConfig, table: Table) -> str:
    doc = {
        "command": command,
        "columns": table.columns,
        "rows": [dict(zip(table.columns, row)) for row in table.rows],
    }
    if table.summary is not None:
        doc["summary"] = table.summary
    return json.dumps(doc, indent=2) + "\n"


def _params(config: CliConfig) -> core.SeriesParams:
    if config.n_max is not None:
        return core.SeriesParams(config.tau_m, config.n_max)
    return analysis.select_order(config.tau_m, config.epsilon)


def _budget_row(params):
    b = analysis.error_budget(params)
    return [params.tau_m, params.n_max, b.aliasing_bound, b.truncation_bound, b.total]


def _coeffs(config):
    series = core.poisson_coefficients(_params(config))
    return Table(["n", "a_n"], [[n, float(a)] for n, a in enumerate(series.coeffs)])


def _eval(config):
    series = core.poisson_coefficients(_params(config))
    t = float(config.t)
    value = evaluation.evaluate(series, t)
    exact = math.exp(-(t * t) / 4.0)
    return Table(["t", "series", "exact", "abs_error", "in_domain"],
                 [[t, value, exact, abs(value - exact), abs(t) <= series.tau_m]])


def _scan(config):
    series = core.poisson_coefficients(_params(config))
    report = evaluation.error_scan(series, config.grid_points or DEFAULT_GRID_POINTS)
    rows = [[float(t), float(s), float(e), float(d)] for t, s, e, d in
            zip(report.grid, report.series_values, report.exact, report.abs_errors)]
    summary = {
        "tau_m": series.tau_m,
        "n_max": series.n_max,
        "max_error": report.max_error,
        "argmax_t": report.argmax_t,
        "aliasing": report.budget.aliasing_bound,
        "truncation": report.budget.truncation_bound,
        "total": report.budget.total,
        "within_budget": report.within_budget,
    }
    return Table(["t", "series", "exact", "abs_error"], rows, summary)


def _budget(config):
    return Table(["tau_m", "n_max", "aliasing", "truncation", "total"],
                 [_budget_row(_params(config))])


def _equivalence(config):
    q = core.QuadratureConfig(config.initial_panels, config.rel_tol,
                              config.max_doublings, config.image_count)
    rep = analysis.equivalence_report(_params(config), q)
    rows = [[n, float(p), float(f), float(d)] for n, (p, f, d) in
            enumerate(zip(rep.poisson, rep.fourier, rep.deviations))]
    summary = {"max_deviation": rep.max_deviation, "argmax_n": rep.argmax_n,
               "panels": rep.panels, "last_change": rep.last_change}
    return Table(["n", "poisson", "fourier", "abs_diff"], rows, summary)


def _select_order(config):
    params = analysis.select_order(config.tau_m, config.epsilon)
    return Table(["tau_m", "epsilon", "n_max", "aliasing", "truncation", "total"],
                 [[params.tau_m, float(config.epsilon)] + _budget_row(params)[1:]])


def _chain_check(config):
    points = config.grid_points or DEFAULT_CHAIN_POINTS
    grid = evaluation.symmetric_grid(config.tau_m, points)
    res = analysis.check_ordering_chain(config.tau_m, grid, config.k_max)
    vt, vk = res.violation if res.violation else (None, None)
    summary = {"log_ratios": list(res.log_ratios)}
    return Table(["tau_m", "k_max", "grid_points", "holds", "violation_t", "violation_k",
                  "min_log_ratio"],
                 [[float(config.tau_m), config.k_max, points, res.holds, vt, vk,
                   min(res.log_ratios)]], summary)


_HANDLERS = {
    "coeffs": _coeffs,
    "eval": _eval,
    "scan": _scan,
    "budget": _budget,
    "equivalence": _equivalence,
    "select-order": _select_order,
    "chain-check": _chain_check,
}


def _error_line(kind, message, **extra):
    return json.dumps({"error": kind, "message": message, **extra}) + "\n"


def run(config: CliConfig, stdout=None, stderr=None) -> int:
    """Execute one command; return the process exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        table = _HANDLERS[config.command](config)
    except UnsatisfiableTarget as exc:
        stderr.write(_error_line("unsatisfiable", str(exc), aliasing_floor=exc.aliasing_floor,
                                 achievable=exc.achievable))
        return EXIT_UNSATISFIABLE
    except QuadratureNotConverged as exc:
        stderr.write(_error_line("not_converged", str(exc), panels=exc.result.panels,
                                 last_change=exc.result.last_change))
        return EXIT_NOT_CONVERGED
    except InvalidParameterError as exc:
        stderr.write(_error_line("invalid", str(exc)))
        return EXIT_INVALID
    if config.output_format == "csv":
        text = render_csv(table)
    else:
        text = render_json(config.command, config, table)
    if config.output_path:
        with open(config.output_path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gauss-periodize", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--tau-m", type=float, required=True, help="half-period")
        p.add_argument("--format", dest="output_format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", dest="output_path", default=None)
        if name != "chain-check":
            p.add_argument("--n-max", type=int, default=None)
            p.add_argument("--epsilon", type=float, default=None)
        if name in ("scan", "chain-check"):
            p.add_argument("--grid-points", type=int, default=None)
        if name == "eval":
            p.add_argument("--t", type=float, default=None)
        if name == "chain-check":
            p.add_argument("--k-max", type=int, default=4)
        if name == "equivalence":
            p.add_argument("--rel-tol", type=float, default=1e-14)
            p.add_argument("--images", dest="image_count", type=int, default=3)
            p.add_argument("--initial-panels", type=int, default=64)
            p.add_argument("--max-doublings", type=int, default=20)
    return parser


def parse_config(argv) -> CliConfig:
    ns = vars(build_parser().parse_args(argv))
    return CliConfig(**ns)


def main(argv=None) -> int:
    try:
        config = parse_config(argv)
    except (UsageError, InvalidParameterError) as exc:
        sys.stderr.write(_error_line("invalid", str(exc)))
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
