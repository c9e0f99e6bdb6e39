"""Seeded parameter sweeps, the bound-check suite, and figure-style outputs.

Every experiment cell (one noise realization at one parameter combination)
draws its seed from cell_seed(base_seed, delta_index, mu_index, replicate),
a pure function, so sweeps are reproducible cell by cell, safe to run in
parallel, and independent of execution schedule.  Result lists are sorted
by parameter values, never by completion order.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .inversion import (
    error_bound,
    estimate_source_regularized,
    estimate_source_unregularized,
    select_mu,
    sobolev_norm,
)
from .noise_lab import NoiseSpec, add_noise, discrete_l2
from .source_models import SourceSpec, cosine_source, exact_data, sample_source
from .spectral_core import Grid, RealSignal, make_grid

__all__ = [
    "RULE_MUS",
    "SweepConfig",
    "SweepRecord",
    "BoundFinding",
    "cell_seed",
    "default_mu_grid",
    "default_config",
    "run_mu_sweep",
    "run_rule_comparison",
    "run_bound_check",
    "reproduce_figures",
]

# Marker accepted in SweepConfig.mus meaning "choose mu by the a-priori rule
# for each p in p_values".
RULE_MUS = "rule"

_NOISE_MODES = ("iid", "norm_calibrated")


def default_mu_grid() -> tuple:
    """81 uniformly spaced mu values on [0, 40], the summary-sweep grid."""
    return tuple(float(v) for v in np.linspace(0.0, 40.0, 81))


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    """Full description of a sweep: what to invert, over which parameters.

    mus is either an explicit tuple of nonnegative values or the string
    RULE_MUS, in which case p_values drives the parameter choice.
    """

    source: SourceSpec
    grid: Grid
    deltas: Sequence[float]
    mus: Union[Sequence[float], str]
    p_values: Sequence[float] = (1.0, 2.0)
    replicates: int = 20
    base_seed: int = 42
    noise_mode: str = "iid"

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if not self.deltas:
            raise ValueError("deltas must be nonempty")
        if any(d < 0 for d in self.deltas):
            raise ValueError("deltas must be nonnegative")
        if isinstance(self.mus, str):
            if self.mus != RULE_MUS:
                raise ValueError(
                    f"mus must be a list of values or {RULE_MUS!r}, got {self.mus!r}"
                )
        else:
            object.__setattr__(self, "mus", tuple(float(m) for m in self.mus))
            if not self.mus:
                raise ValueError("mus must be nonempty")
            if any(m < 0 for m in self.mus):
                raise ValueError("mus must be nonnegative")
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        if not self.p_values:
            raise ValueError("p_values must be nonempty")
        if any(p < 0 for p in self.p_values):
            raise ValueError("p_values must be nonnegative")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        object.__setattr__(self, "replicates", int(self.replicates))
        if not (0 <= int(self.base_seed) < 2**64):
            raise ValueError("base_seed must fit in 64 unsigned bits")
        object.__setattr__(self, "base_seed", int(self.base_seed))
        if self.noise_mode not in _NOISE_MODES:
            raise ValueError(
                f"noise_mode must be one of {_NOISE_MODES}, got {self.noise_mode!r}"
            )


def default_config() -> SweepConfig:
    """Cosine source on [0, 2*pi) with n=256, the default experiment setup."""
    return SweepConfig(
        source=cosine_source(),
        grid=make_grid(256, 0.0, 2.0 * math.pi),
        deltas=(0.015, 0.05, 0.1),
        mus=default_mu_grid(),
    )


@dataclasses.dataclass(frozen=True)
class SweepRecord:
    """One experiment cell: one noise draw, one inversion, its errors.

    p and bound are set only for rule-driven cells (bound travels with the
    rule that justifies it); abs_error and empirical_noise_norm are discrete
    L2 norms, rel_error is abs_error over the true source's norm.
    """

    delta: float
    mu: float
    p: Optional[float]
    replicate: int
    rel_error: float
    abs_error: float
    bound: Optional[float]
    empirical_noise_norm: float

    def __post_init__(self):
        if self.rel_error < 0 or self.abs_error < 0:
            raise ValueError("errors must be nonnegative")
        if (self.p is None) != (self.bound is None):
            raise ValueError("bound must be present exactly when p is (rule cells)")


def cell_seed(base_seed: int, delta_index: int, mu_index: int, replicate: int) -> int:
    """Seed for one experiment cell.

    Derived by spawning a SeedSequence from the entropy tuple
    (base_seed, delta_index, mu_index, replicate); SeedSequence's expansion
    is specified and stable across platforms and numpy versions, so this is
    a documented pure function of its four arguments.
    """
    ss = np.random.SeedSequence(
        (int(base_seed), int(delta_index), int(mu_index), int(replicate))
    )
    return int(ss.generate_state(1, np.uint64)[0])


def _run_cells(tasks, evaluate, workers: int):
    if workers <= 1:
        return [evaluate(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, tasks))


def run_mu_sweep(config: SweepConfig, workers: int = 1) -> list:
    """Evaluate every (delta, mu, replicate) cell with explicit mus.

    Returns SweepRecords sorted by (delta, mu, replicate) values.  workers
    only changes wall time: each cell's arithmetic is identical either way,
    and assembly sorts, so results are byte-equal across schedules.
    """
    if isinstance(config.mus, str):
        raise ValueError(
            "run_mu_sweep needs explicit mus; use run_rule_comparison for "
            f"mus={RULE_MUS!r}"
        )
    f_true = sample_source(config.source, config.grid)
    g_exact = exact_data(config.source, config.grid)
    f_norm = discrete_l2(f_true)

    def evaluate(task):
        i, j, r = task
        delta, mu = config.deltas[i], config.mus[j]
        seed = cell_seed(config.base_seed, i, j, r)
        noisy = add_noise(g_exact, NoiseSpec(delta, seed, config.noise_mode))
        est = estimate_source_regularized(noisy, mu)
        abs_err = discrete_l2(RealSignal(config.grid, est.values - f_true.values))
        noise_norm = discrete_l2(
            RealSignal(config.grid, noisy.values - g_exact.values)
        )
        return SweepRecord(
            delta=delta,
            mu=mu,
            p=None,
            replicate=r,
            rel_error=abs_err / f_norm,
            abs_error=abs_err,
            bound=None,
            empirical_noise_norm=noise_norm,
        )

    tasks = [
        (i, j, r)
        for i in range(len(config.deltas))
        for j in range(len(config.mus))
        for r in range(config.replicates)
    ]
    records = _run_cells(tasks, evaluate, workers)
    records.sort(key=lambda rec: (rec.delta, rec.mu, rec.replicate))
    return records


def run_rule_comparison(config: SweepConfig, workers: int = 1) -> list:
    """Evaluate every (delta, p, replicate) cell with mu from the rule (E=1).

    Each record carries the rule's mu, the p that produced it, and the
    theoretical bound error_bound(delta, p, mu).  Requires mus=RULE_MUS and
    strictly positive deltas (the rule is undefined at delta=0).
    """
    if config.mus != RULE_MUS:
        raise ValueError(f"run_rule_comparison requires mus={RULE_MUS!r}")
    if any(d <= 0 for d in config.deltas):
        raise ValueError("the rule needs delta > 0 for every delta")
    f_true = sample_source(config.source, config.grid)
    g_exact = exact_data(config.source, config.grid)
    f_norm = discrete_l2(f_true)
    mus = [select_mu(d, 1.0, p) for d in config.deltas for p in config.p_values]
    bounds = [
        error_bound(d, p, select_mu(d, 1.0, p))
        for d in config.deltas
        for p in config.p_values
    ]

    def evaluate(task):
        i, j, r = task
        delta, p = config.deltas[i], config.p_values[j]
        mu = mus[i * len(config.p_values) + j]
        bound = bounds[i * len(config.p_values) + j]
        seed = cell_seed(config.base_seed, i, j, r)
        noisy = add_noise(g_exact, NoiseSpec(delta, seed, config.noise_mode))
        est = estimate_source_regularized(noisy, mu)
        abs_err = discrete_l2(RealSignal(config.grid, est.values - f_true.values))
        noise_norm = discrete_l2(
            RealSignal(config.grid, noisy.values - g_exact.values)
        )
        return SweepRecord(
            delta=delta,
            mu=mu,
            p=p,
            replicate=r,
            rel_error=abs_err / f_norm,
            abs_error=abs_err,
            bound=bound,
            empirical_noise_norm=noise_norm,
        )

    tasks = [
        (i, j, r)
        for i in range(len(config.deltas))
        for j in range(len(config.p_values))
        for r in range(config.replicates)
    ]
    records = _run_cells(tasks, evaluate, workers)
    records.sort(key=lambda rec: (rec.delta, rec.p, rec.replicate))
    return records


@dataclasses.dataclass(frozen=True)
class BoundFinding:
    """One bound-check cell: measured error vs both forms of the guarantee.

    bound_raw is error_bound(delta, p, mu) as written (unit smoothness
    bound); bound_scaled is E * error_bound(delta/E, p, mu), the same
    guarantee rescaled to the measured smoothness bound E of the source.
    """

    delta: float
    p: float
    replicate: int
    seed: int
    mu: float
    E: float
    error: float
    bound_raw: float
    bound_scaled: float
    violates_raw: bool
    violates_scaled: bool


def run_bound_check(
    config: Optional[SweepConfig] = None, workers: int = 1
) -> list:
    """Check the error guarantee under its exact hypotheses, cell by cell.

    Uses norm-calibrated noise (so the data error is delta exactly),
    E = sobolev_norm(f, p), mu = select_mu(delta, E, p), and compares the
    measured absolute error against both bound forms.  Returns one
    BoundFinding per cell regardless of outcome, so callers can report
    violations as structured records or confirm there are none.
    """
    if config is None:
        config = dataclasses.replace(
            default_config(), mus=RULE_MUS, noise_mode="norm_calibrated"
        )
    if config.noise_mode != "norm_calibrated":
        raise ValueError("the bound check requires norm_calibrated noise")
    if any(d <= 0 for d in config.deltas):
        raise ValueError("the bound check needs delta > 0")
    f_true = sample_source(config.source, config.grid)
    g_exact = exact_data(config.source, config.grid)

    def evaluate(task):
        i, j, r = task
        delta, p = config.deltas[i], config.p_values[j]
        E = sobolev_norm(f_true, p)
        mu = select_mu(delta, E, p)
        seed = cell_seed(config.base_seed, i, j, r)
        noisy = add_noise(g_exact, NoiseSpec(delta, seed, "norm_calibrated"))
        est = estimate_source_regularized(noisy, mu)
        err = discrete_l2(RealSignal(config.grid, est.values - f_true.values))
        raw = error_bound(delta, p, mu)
        scaled = E * error_bound(delta / E, p, mu)
        return BoundFinding(
            delta=delta,
            p=p,
            replicate=r,
            seed=seed,
            mu=mu,
            E=E,
            error=err,
            bound_raw=raw,
            bound_scaled=scaled,
            violates_raw=err > raw,
            violates_scaled=err > scaled,
        )

    tasks = [
        (i, j, r)
        for i in range(len(config.deltas))
        for j in range(len(config.p_values))
        for r in range(config.replicates)
    ]
    findings = _run_cells(tasks, evaluate, workers)
    findings.sort(key=lambda rec: (rec.delta, rec.p, rec.replicate))
    return findings


def _format_float(v) -> str:
    return repr(float(v))


def write_csv(path: Path, header: Sequence[str], rows) -> None:
    """Write rows of floats/strings with LF endings and repr-exact floats.

    repr gives the shortest string that parses back to the identical double,
    which is what makes reruns byte-comparable.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(
                ",".join(
                    cell if isinstance(cell, str) else _format_float(cell)
                    for cell in row
                )
                + "\n"
            )


def _mean_stderr(values) -> tuple:
    arr = np.asarray(values, dtype=float)
    mean = float(np.mean(arr))
    if arr.size < 2:
        return mean, 0.0
    return mean, float(np.std(arr, ddof=1) / math.sqrt(arr.size))


def summarize_rel_error(records) -> dict:
    """Group records into {(mu, delta): (mean_rel_error, stderr_rel_error)}."""
    groups: dict = {}
    for rec in records:
        groups.setdefault((rec.mu, rec.delta), []).append(rec.rel_error)
    return {key: _mean_stderr(vals) for key, vals in groups.items()}


_GNUPLOT_SERIES = """set datafile separator ','
set key autotitle columnhead
set key outside
set xlabel 'x'
set ylabel '{ylabel}'
set terminal pngcairo size 960,600
set output '{png}'
plot {plots}
"""

_GNUPLOT_FIG5 = """set datafile separator ','
set xlabel 'mu'
set ylabel 'mean relative error'
set logscale y
set terminal pngcairo size 960,600
set output 'fig5.png'
plot {plots}
"""


def _series_plot(csv_name: str, n_cols: int) -> str:
    parts = [
        f"'{csv_name}' using 1:{c} with lines" for c in range(2, n_cols + 1)
    ]
    return ", \\\n     ".join(parts)


def reproduce_figures(out_dir, config: Optional[SweepConfig] = None,
                      workers: int = 1) -> list:
    """Write the five demonstration CSVs plus one gnuplot script per CSV.

    fig1: true source vs unregularized estimates, one column per delta.
    fig2-fig4: true source vs regularized estimates at delta = 0.015, 0.05,
    0.1 respectively, with mu in {rule p=1, rule p=2, 1, 3}.
    fig5: mean relative error (with standard error) over the whole mu grid,
    one row per (mu, delta).

    Figures 1-4 use one noise draw per delta, seed cell_seed(base_seed,
    delta_index, 0, 0), so their columns describe the same data a reader
    would compare by eye.  All outputs are byte-deterministic for a given
    config.  Returns the list of created paths.
    """
    if config is None:
        config = default_config()
    if isinstance(config.mus, str):
        raise ValueError("reproduce_figures needs explicit mus for the summary sweep")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    grid = config.grid
    f_true = sample_source(config.source, grid)
    g_exact = exact_data(config.source, grid)
    created = []

    # One seeded draw per delta, shared by fig1 and the matching fig2-4 panel.
    draws = [
        add_noise(
            g_exact,
            NoiseSpec(d, cell_seed(config.base_seed, i, 0, 0), config.noise_mode),
        )
        for i, d in enumerate(config.deltas)
    ]

    header = ["x", "f_true"] + [
        f"f_unregularized_delta_{d:g}" for d in config.deltas
    ]
    columns = [grid.points, f_true.values] + [
        estimate_source_unregularized(noisy).values for noisy in draws
    ]
    path = out / "fig1.csv"
    write_csv(path, header, zip(*columns))
    created.append(path)

    for fig_no, (i, delta) in zip((2, 3, 4), enumerate(config.deltas)):
        mu_set = (select_mu(delta, 1.0, 1.0), select_mu(delta, 1.0, 2.0), 1.0, 3.0)
        header = ["x", "f_true"] + [f"f_regularized_mu_{mu:.4g}" for mu in mu_set]
        columns = [grid.points, f_true.values] + [
            estimate_source_regularized(draws[i], mu).values for mu in mu_set
        ]
        path = out / f"fig{fig_no}.csv"
        write_csv(path, header, zip(*columns))
        created.append(path)

    records = run_mu_sweep(config, workers=workers)
    summary = summarize_rel_error(records)
    rows = [
        (mu, delta) + summary[(mu, delta)]
        for mu in sorted(set(config.mus))
        for delta in sorted(set(config.deltas))
    ]
    path = out / "fig5.csv"
    write_csv(path, ["mu", "delta", "mean_rel_error", "stderr_rel_error"], rows)
    created.append(path)

    for fig_no in (1, 2, 3, 4):
        name = f"fig{fig_no}"
        script = _GNUPLOT_SERIES.format(
            ylabel="f",
            png=f"{name}.png",
            plots=_series_plot(f"{name}.csv", 5),
        )
        path = out / f"{name}.gp"
        path.write_text(script, encoding="utf-8")
        created.append(path)
    fig5_plots = ", \\\n     ".join(
        f"'fig5.csv' using 1:($2=={_format_float(d)} ? $3 : 1/0) "
        f"with linespoints title 'delta={d:g}'"
        for d in sorted(set(config.deltas))
    )
    path = out / "fig5.gp"
    path.write_text(_GNUPLOT_FIG5.format(plots=fig5_plots), encoding="utf-8")
    created.append(path)

    return sorted(created)
