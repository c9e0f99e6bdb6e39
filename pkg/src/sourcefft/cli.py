"""Command line interface: batch commands over CSV files.

Subcommands
-----------
forward      sample a built-in source (or read one) and write (x, f, g)
simulate     forward data plus one seeded noise draw, write (x, g, g_delta)
invert       read measurements, write (x, f_estimate)
sweep        run a mu sweep from a config file, write the summary CSV
figures      write the five demonstration CSVs and their gnuplot scripts
dump-config  print the effective default configuration

There is also an undocumented `oracle` subcommand that cross-checks the
pipeline against the quadrature oracle; it exists for debugging and does not
appear in the help listing.

Exit codes: 0 success, 1 validation error, 2 I/O error.  Errors are single
lines on stderr of the form `sourcefft: error: <message>`.

Config files are flat `key = value` text; `#` starts a comment.  Lists are
comma separated; `mus` additionally accepts `start:stop:count` (uniform
spacing, endpoints included) or the word `rule`.  Unknown keys are errors.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import math
import sys
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .experiments import (
    RULE_MUS,
    SweepConfig,
    default_mu_grid,
    reproduce_figures,
    run_mu_sweep,
    run_rule_comparison,
    summarize_rel_error,
)
from .inversion import (
    error_bound,
    estimate_source_regularized,
    select_mu,
    solve_forward,
)
from .noise_lab import NoiseSpec, add_noise, discrete_l2
from .quadrature_oracle import (
    QuadratureSpec,
    aligned_spec,
    default_spec,
    invert_via_quadrature,
)
from .source_models import cosine_source, exact_data, hat_source, sample_source
from .spectral_core import Grid, RealSignal, make_grid

__all__ = ["RunConfig", "parse_config", "serialize_config", "main", "entry"]


class CliError(Exception):
    """Validation problem in flags, config, or input data (exit code 1)."""


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything a sweep or figures run needs, with serializable defaults."""

    n: int = 256
    x_min: float = 0.0
    x_max: float = 2.0 * math.pi
    source: str = "cosine"
    hat_center: float = math.pi
    hat_half_width: float = 1.0
    hat_height: float = 1.0
    deltas: tuple = (0.015, 0.05, 0.1)
    mus: Union[tuple, str] = dataclasses.field(default_factory=default_mu_grid)
    p_values: tuple = (1.0, 2.0)
    replicates: int = 20
    base_seed: int = 42
    noise_mode: str = "iid"
    out: str = "figures"

    def source_spec(self):
        if self.source == "cosine":
            return cosine_source()
        if self.source == "hat":
            return hat_source(self.hat_center, self.hat_half_width, self.hat_height)
        raise CliError(f"unknown source {self.source!r} (expected cosine or hat)")

    def to_sweep_config(self) -> SweepConfig:
        return SweepConfig(
            source=self.source_spec(),
            grid=make_grid(self.n, self.x_min, self.x_max),
            deltas=self.deltas,
            mus=self.mus,
            p_values=self.p_values,
            replicates=self.replicates,
            base_seed=self.base_seed,
            noise_mode=self.noise_mode,
        )


def _parse_float_list(text: str) -> tuple:
    items = [part.strip() for part in text.split(",")]
    if items == [""]:
        return ()
    try:
        return tuple(float(part) for part in items)
    except ValueError:
        raise CliError(f"expected a comma-separated list of numbers, got {text!r}")


def _parse_mus(text: str) -> Union[tuple, str]:
    text = text.strip()
    if text == RULE_MUS:
        return RULE_MUS
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CliError(f"range form must be start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise CliError(f"range form must be start:stop:count, got {text!r}")
        if count < 1:
            raise CliError(f"range count must be >= 1, got {count}")
        return tuple(float(v) for v in np.linspace(start, stop, count))
    return _parse_float_list(text)


_NOISE_ALIASES = {"iid": "iid", "norm_calibrated": "norm_calibrated",
                  "norm-calibrated": "norm_calibrated"}


def _parse_noise_mode(text: str) -> str:
    mode = _NOISE_ALIASES.get(text.strip())
    if mode is None:
        raise CliError(
            f"noise mode must be iid or norm-calibrated, got {text.strip()!r}"
        )
    return mode


_CONFIG_PARSERS = {
    "n": int,
    "x_min": float,
    "x_max": float,
    "source": lambda s: s.strip(),
    "hat_center": float,
    "hat_half_width": float,
    "hat_height": float,
    "deltas": _parse_float_list,
    "mus": _parse_mus,
    "p_values": _parse_float_list,
    "replicates": int,
    "base_seed": int,
    "noise_mode": _parse_noise_mode,
    "out": lambda s: s.strip(),
}


def parse_config(text: str) -> RunConfig:
    """Parse flat key=value config text; unknown or repeated keys are errors."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"config line {lineno}: expected key = value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _CONFIG_PARSERS:
            raise CliError(f"config line {lineno}: unknown key {key!r}")
        if key in values:
            raise CliError(f"config line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](val)
        except CliError:
            raise
        except (TypeError, ValueError) as exc:
            raise CliError(f"config line {lineno}: bad value for {key}: {exc}")
    try:
        return RunConfig(**values)
    except (TypeError, ValueError) as exc:
        raise CliError(f"bad config: {exc}")


def _serialize_value(key: str, value) -> str:
    if key == "mus" and isinstance(value, str):
        return value
    if isinstance(value, tuple):
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(cfg: RunConfig) -> str:
    lines = [
        f"{field.name} = {_serialize_value(field.name, getattr(cfg, field.name))}"
        for field in dataclasses.fields(cfg)
    ]
    return "\n".join(lines) + "\n"


def _load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    cfg_text = Path(path).read_text(encoding="utf-8")
    return parse_config(cfg_text)


# ---------------------------------------------------------------------------
# CSV I/O

def _csv_lines(header, rows):
    yield ",".join(header)
    for row in rows:
        yield ",".join(
            cell if isinstance(cell, str) else repr(float(cell)) for cell in row
        )


def _emit_csv(out_path: Optional[str], header, rows) -> None:
    lines = _csv_lines(header, rows)
    if out_path is None:
        for line in lines:
            print(line)
    else:
        Path(out_path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_csv_columns(path: str):
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CliError(f"{path}: empty CSV")
        header = [name.strip() for name in header]
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise CliError(
                    f"{path}: row {lineno} has {len(row)} fields, "
                    f"header has {len(header)}"
                )
            try:
                rows.append([float(cell) for cell in row])
            except ValueError:
                raise CliError(f"{path}: row {lineno} has a non-numeric field")
    if not rows:
        raise CliError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=float)
    return {name: data[:, idx] for idx, name in enumerate(header)}


def _grid_from_x(x: np.ndarray, context: str) -> Grid:
    n = x.size
    if n < 2:
        raise CliError(f"{context}: need at least two samples")
    dx = (x[-1] - x[0]) / (n - 1)
    if dx <= 0:
        raise CliError(f"{context}: x must be strictly increasing")
    deviation = float(np.max(np.abs(x - (x[0] + dx * np.arange(n)))))
    tol = 1e-8 * max(1.0, abs(float(x[0])), abs(float(x[-1])))
    if deviation > tol:
        raise CliError(
            f"{context}: x is not a uniform grid (max deviation {deviation:.3e})"
        )
    try:
        return make_grid(n, float(x[0]), float(x[0]) + n * dx)
    except ValueError as exc:
        raise CliError(f"{context}: {exc}")


def _signal_from_csv(path: str, column_names) -> tuple:
    cols = _read_csv_columns(path)
    if "x" not in cols:
        raise CliError(f"{path}: missing required column 'x'")
    grid = _grid_from_x(cols["x"], path)
    for name in column_names:
        if name in cols:
            return grid, RealSignal(grid, cols[name]), name
    raise CliError(
        f"{path}: none of the columns {list(column_names)} present "
        f"(found {sorted(cols)})"
    )


# ---------------------------------------------------------------------------
# Subcommands

def _grid_from_args(args) -> Grid:
    try:
        return make_grid(args.n, args.x_min, args.x_max)
    except ValueError as exc:
        raise CliError(str(exc))


def _source_from_args(args):
    if args.source == "cosine":
        return cosine_source()
    return hat_source(args.hat_center, args.hat_half_width, args.hat_height)


def _forward_data(args):
    """Shared data path of `forward` and `simulate`: produce (grid, f, g)."""
    if args.input is not None:
        grid, f, _ = _signal_from_csv(args.input, ("f",))
        mean = float(np.mean(f.values))
        if args.demean and abs(mean) >= 1e-10:
            f = RealSignal(grid, f.values - mean)
        g = solve_forward(f, demean=args.demean)
        return grid, f, g
    grid = _grid_from_args(args)
    spec = _source_from_args(args)
    f = sample_source(spec, grid)
    g = exact_data(spec, grid)
    return grid, f, g


def cmd_forward(args) -> int:
    grid, f, g = _forward_data(args)
    _emit_csv(args.out, ["x", "f", "g"], zip(grid.points, f.values, g.values))
    return 0


def cmd_simulate(args) -> int:
    grid, _, g = _forward_data(args)
    spec = NoiseSpec(args.delta, args.seed, _parse_noise_mode(args.noise_mode))
    noisy = add_noise(g, spec)
    _emit_csv(
        args.out, ["x", "g", "g_delta"], zip(grid.points, g.values, noisy.values)
    )
    return 0


def cmd_invert(args) -> int:
    grid, g, _ = _signal_from_csv(args.input, ("g_delta", "g"))
    if args.rule is not None:
        if args.delta is None:
            raise CliError("--rule needs --delta (the rule maps delta to mu)")
        mu = select_mu(args.delta, args.E, args.rule)
        bound = error_bound(args.delta, args.rule, mu)
        print(
            f"rule: p={args.rule:g} delta={args.delta:g} E={args.E:g} "
            f"mu={mu!r} bound={bound!r}",
            file=sys.stderr,
        )
    else:
        mu = args.mu
        if mu < 0:
            raise CliError(f"--mu must be nonnegative, got {mu}")
    estimate = estimate_source_regularized(g, mu)
    _emit_csv(args.out, ["x", "f_estimate"], zip(grid.points, estimate.values))
    return 0


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    if args.replicates is not None:
        cfg = dataclasses.replace(cfg, replicates=args.replicates)
    if args.base_seed is not None:
        cfg = dataclasses.replace(cfg, base_seed=args.base_seed)
    try:
        sweep_cfg = cfg.to_sweep_config()
        if sweep_cfg.mus == RULE_MUS:
            records = run_rule_comparison(sweep_cfg, workers=args.workers)
        else:
            records = run_mu_sweep(sweep_cfg, workers=args.workers)
    except ValueError as exc:
        raise CliError(str(exc))
    summary = summarize_rel_error(records)
    rows = [
        key + summary[key] for key in sorted(summary, key=lambda k: (k[0], k[1]))
    ]
    _emit_csv(
        args.out, ["mu", "delta", "mean_rel_error", "stderr_rel_error"], rows
    )
    return 0


def cmd_figures(args) -> int:
    cfg = _load_config(args.config)
    out_dir = args.out if args.out is not None else cfg.out
    try:
        paths = reproduce_figures(
            out_dir, config=cfg.to_sweep_config(), workers=args.workers
        )
    except ValueError as exc:
        raise CliError(str(exc))
    for path in paths:
        print(path)
    return 0


def cmd_dump_config(args) -> int:
    text = serialize_config(RunConfig())
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def cmd_oracle(args) -> int:
    grid, g, _ = _signal_from_csv(args.input, ("g_delta", "g"))
    if args.mu < 0:
        raise CliError(f"--mu must be nonnegative, got {args.mu}")
    try:
        if args.xi_max is not None or args.nodes is not None:
            if args.xi_max is None or args.nodes is None:
                raise CliError("--xi-max and --nodes must be given together")
            spec = QuadratureSpec(args.xi_max, args.nodes)
        elif args.aligned:
            spec = aligned_spec(grid)
        else:
            spec = default_spec(grid)
        oracle = invert_via_quadrature(g, args.mu, spec)
    except ValueError as exc:
        raise CliError(str(exc))
    pipeline = estimate_source_regularized(g, args.mu)
    diff = discrete_l2(RealSignal(grid, oracle.values - pipeline.values))
    denom = discrete_l2(pipeline)
    rel = diff / denom if denom > 0 else float("inf")
    print(
        f"oracle: xi_max={spec.xi_max!r} nodes={spec.node_count} "
        f"rel_l2_vs_pipeline={rel!r}",
        file=sys.stderr,
    )
    _emit_csv(
        args.out,
        ["x", "f_oracle", "f_pipeline"],
        zip(grid.points, oracle.values, pipeline.values),
    )
    return 0


# ---------------------------------------------------------------------------
# Parser wiring

class _Parser(argparse.ArgumentParser):
    # argparse wants to sys.exit(2) on bad flags; route through CliError so
    # the documented exit-code contract (validation -> 1) holds.
    def error(self, message):
        raise CliError(message)


def _add_grid_and_source_flags(sub):
    sub.add_argument("--n", type=int, default=256, help="sample count (even, >= 8)")
    sub.add_argument("--x-min", type=float, default=0.0)
    sub.add_argument("--x-max", type=float, default=2.0 * math.pi)
    sub.add_argument("--source", choices=("cosine", "hat"), default="cosine")
    sub.add_argument("--hat-center", type=float, default=math.pi)
    sub.add_argument("--hat-half-width", type=float, default=1.0)
    sub.add_argument("--hat-height", type=float, default=1.0)
    sub.add_argument("--input", help="CSV with columns x,f instead of --source")
    sub.add_argument(
        "--demean", action="store_true",
        help="subtract the source mean instead of rejecting nonzero means",
    )


def build_parser() -> _Parser:
    parser = _Parser(
        prog="sourcefft",
        description="Recover a 1-D source term from noisy line measurements.",
    )
    visible = "{forward,simulate,invert,sweep,figures,dump-config}"
    subs = parser.add_subparsers(dest="command", metavar=visible)

    sub = subs.add_parser("forward", help="write exact data for a source")
    _add_grid_and_source_flags(sub)
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.set_defaults(func=cmd_forward)

    sub = subs.add_parser("simulate", help="write data with seeded noise")
    _add_grid_and_source_flags(sub)
    sub.add_argument("--delta", type=float, default=0.05, help="noise level")
    sub.add_argument("--seed", type=int, default=42)
    sub.add_argument(
        "--noise-mode", default="iid", choices=("iid", "norm-calibrated"),
    )
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.set_defaults(func=cmd_simulate)

    sub = subs.add_parser("invert", help="estimate the source from data")
    sub.add_argument("--input", required=True, help="CSV with x and g or g_delta")
    sub.add_argument("--mu", type=float, default=0.0,
                     help="regularization parameter (0 = unregularized)")
    sub.add_argument("--rule", type=float, metavar="P",
                     help="choose mu by the a-priori rule at smoothness p")
    sub.add_argument("--delta", type=float, help="noise level (needed by --rule)")
    sub.add_argument("--E", type=float, default=1.0,
                     help="smoothness bound for the rule (default 1)")
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.set_defaults(func=cmd_invert)

    sub = subs.add_parser("sweep", help="mu sweep from a config file")
    sub.add_argument("--config", help="config file (default: built-in defaults)")
    sub.add_argument("--replicates", type=int)
    sub.add_argument("--base-seed", type=int)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("figures", help="write demonstration CSVs and scripts")
    sub.add_argument("--config", help="config file (default: built-in defaults)")
    sub.add_argument("--out", help="output directory (default: from config)")
    sub.add_argument("--workers", type=int, default=1)
    sub.set_defaults(func=cmd_figures)

    sub = subs.add_parser("dump-config", help="print the default config file")
    sub.add_argument("--out", help="write to a file instead of stdout")
    sub.set_defaults(func=cmd_dump_config)

    # Debugging aid, deliberately absent from the visible command list.
    sub = subs.add_parser("oracle")
    sub.add_argument("--input", required=True, help="CSV with x and g or g_delta")
    sub.add_argument("--mu", type=float, default=0.0)
    sub.add_argument("--xi-max", type=float, help="frequency truncation")
    sub.add_argument("--nodes", type=int, help="quadrature node count")
    sub.add_argument(
        "--aligned", action=argparse.BooleanOptionalAction, default=True,
        help="place nodes exactly on the grid frequencies",
    )
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            raise CliError("missing command (run with --help for usage)")
        return args.func(args)
    except CliError as exc:
        print(f"sourcefft: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"sourcefft: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"sourcefft: error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
