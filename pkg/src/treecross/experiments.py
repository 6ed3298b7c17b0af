"""Ensemble experiments and file-level analysis reports.

The central quantity is the relative prediction error of a crossing
predictor on one configuration: (predicted - actual) / potential pairs.
``run_ensemble`` measures its distribution over uniformly random labeled
trees conditioned on a small crossing count, per tree size and per exact
crossing count, reproducing the regime where the pairwise-length
predictor stays within a few percent while the length-blind one drifts
to 1/3.

Sampling is deterministic: every (size, count) cell draws from its own
generator derived from the master seed, so results are byte-identical
for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .crossings import count_crossings
from .graph_core import (
    LabeledTree,
    LinearArrangement,
    c_max,
    degree_second_moment,
    identity_positions,
    read_arrangement,
    read_tree,
    total_length,
)
from .predictors import PCrossTable, build_p_table, e2, prediction_report
from .random_trees import stream

_STREAM_CELL = 1
_STREAM_ROW = 2


@dataclass(frozen=True)
class EnsembleConfig:
    """Run settings for the conditioned random-tree experiment.

    ``quota_mode`` selects how the replica budget applies: "per-cell"
    keeps sampling until every requested crossing-count bucket holds
    ``replicas`` trees; "post-hoc" accepts ``replicas`` trees total (any
    count up to the conditioning maximum) and buckets them afterwards.
    """

    n_min: int
    n_max: int
    replicas: int = 1000
    c_true_values: tuple[int, ...] = (0, 1, 2, 3)
    seed: int = 0
    quota_mode: str = "per-cell"
    max_attempts: int = 1_000_000_000

    def __post_init__(self):
        if self.n_min < 4:
            raise ValueError(f"crossings need n >= 4; got n_min={self.n_min}")
        if self.n_max < self.n_min:
            raise ValueError(f"empty size range {self.n_min}..{self.n_max}")
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        values = tuple(sorted(set(self.c_true_values)))
        if not values or values[0] < 0:
            raise ValueError(f"invalid crossing-count values {self.c_true_values}")
        object.__setattr__(self, "c_true_values", values)
        if self.quota_mode not in ("per-cell", "post-hoc"):
            raise ValueError(f"unknown quota mode {self.quota_mode!r}")
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")


@dataclass(frozen=True)
class DeltaStats:
    """Prediction-error statistics for one (size, crossing count) cell.

    ``replicas`` is the number of trees collected in the bucket and
    ``samples_used`` how many of them admit crossings at all (only those
    enter the means). ``partial`` marks cells whose quota was not reached
    within the attempt budget; ``attempts`` is the number of candidate
    trees drawn by the work unit that filled the cell (shared by all
    cells of a size row in post-hoc mode).
    """

    n: int
    c_true: int
    replicas: int
    samples_used: int
    mean_delta0: float
    mean_delta2: float
    sd_delta0: float
    sd_delta2: float
    attempts: int
    partial: bool


def delta(
    tree: LabeledTree, arr: LinearArrangement, table: PCrossTable
) -> tuple[float, float]:
    """Relative prediction errors (blind, pairwise-informed) for one input.

    Defined only when some edge pair can cross; callers must filter out
    star trees.
    """
    potential = c_max(tree)
    if potential == 0:
        raise ValueError("relative errors are undefined when no edge pair can cross")
    actual = count_crossings(tree, arr).total
    blind_error = 1.0 / 3.0 - actual / potential
    informed_error = (e2(tree, arr, table) - actual) / potential
    return blind_error, informed_error


def max_possible_crossings(n: int) -> int:
    """Largest crossing count any tree on n vertices can reach.

    Bounded by the potential pairs of the path, the tree with the most
    vertex-disjoint edge pairs.
    """
    if n < 4:
        return 0
    return (n - 2) * (n - 3) // 2


def _cell_stats(
    n: int,
    c: int,
    counts: np.ndarray,
    cmaxes: np.ndarray,
    d0: np.ndarray,
    d2: np.ndarray,
    attempts: int,
    quota: int,
) -> DeltaStats:
    bucket = counts == c
    collected = int(bucket.sum())
    usable = bucket & (cmaxes > 0)
    used = int(usable.sum())
    if used > 0:
        m0 = float(np.mean(d0[usable]))
        m2 = float(np.mean(d2[usable]))
    else:
        m0 = m2 = math.nan
    if used > 1:
        s0 = float(np.std(d0[usable], ddof=1))
        s2 = float(np.std(d2[usable], ddof=1))
    else:
        s0 = s2 = math.nan
    return DeltaStats(
        n=n,
        c_true=c,
        replicas=collected,
        samples_used=used,
        mean_delta0=m0,
        mean_delta2=m2,
        sd_delta0=s0,
        sd_delta2=s2,
        attempts=attempts,
        partial=collected < quota,
    )


def _empty_cell(n: int, c: int) -> DeltaStats:
    return DeltaStats(
        n=n,
        c_true=c,
        replicas=0,
        samples_used=0,
        mean_delta0=math.nan,
        mean_delta2=math.nan,
        sd_delta0=math.nan,
        sd_delta2=math.nan,
        attempts=0,
        partial=True,
    )


def _run_cell(config: EnsembleConfig, n: int, c: int, floats: np.ndarray) -> DeltaStats:
    from ._kernels import fill_quotas

    rng = stream(config.seed, _STREAM_CELL, n, c)
    quotas = np.zeros(c + 1, dtype=np.int64)
    quotas[c] = config.replicas
    attempts, kept, counts, cmaxes, d0, d2 = fill_quotas(
        rng, n, quotas, config.replicas, config.max_attempts, floats
    )
    return _cell_stats(
        n, c, counts[:kept], cmaxes[:kept], d0[:kept], d2[:kept],
        int(attempts), config.replicas,
    )


def _run_row(config: EnsembleConfig, n: int, floats: np.ndarray) -> list[DeltaStats]:
    from ._kernels import fill_quotas

    rng = stream(config.seed, _STREAM_ROW, n)
    cap = max(config.c_true_values)
    quotas = np.full(cap + 1, config.replicas, dtype=np.int64)
    attempts, kept, counts, cmaxes, d0, d2 = fill_quotas(
        rng, n, quotas, config.replicas, config.max_attempts, floats
    )
    partial_row = kept < config.replicas
    out = []
    for c in config.c_true_values:
        cell = _cell_stats(
            n, c, counts[:kept], cmaxes[:kept], d0[:kept], d2[:kept],
            int(attempts), quota=0,
        )
        # post-hoc buckets have no per-cell quota; partial means the row
        # itself fell short of the total budget
        out.append(replace(cell, partial=partial_row))
    return out


def run_ensemble(config: EnsembleConfig, workers: Optional[int] = None) -> list[DeltaStats]:
    """Measure prediction errors over conditioned random-tree ensembles.

    Returns one DeltaStats per (n, crossing count) cell, sorted. Cells
    whose crossing count exceeds what any tree of that size can realize
    are reported empty instead of burning the attempt budget. Exhausted
    budgets surface as ``partial=True`` rows, never as an exception, so a
    long run always yields its partial results.
    """
    sizes = range(config.n_min, config.n_max + 1)
    tables = {n: build_p_table(n).floats for n in sizes}
    if workers is None:
        import os

        workers = os.cpu_count() or 1

    results: list[DeltaStats] = []
    if config.quota_mode == "per-cell":
        units = []
        for n in sizes:
            for c in config.c_true_values:
                if c > max_possible_crossings(n):
                    results.append(_empty_cell(n, c))
                else:
                    units.append((n, c))
        if workers == 1:
            done = [_run_cell(config, n, c, tables[n]) for n, c in units]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                done = list(
                    pool.map(lambda unit: _run_cell(config, unit[0], unit[1], tables[unit[0]]), units)
                )
        results.extend(done)
    else:
        if workers == 1:
            rows = [_run_row(config, n, tables[n]) for n in sizes]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(lambda n: _run_row(config, n, tables[n]), sizes))
        for n, row in zip(sizes, rows):
            for cell in row:
                if cell.c_true > max_possible_crossings(n):
                    results.append(_empty_cell(n, cell.c_true))
                else:
                    results.append(cell)
    return sorted(results, key=lambda s: (s.n, s.c_true))


# ---------------------------------------------------------------------------
# Display rounding and serialization


def format_two_sig(x: Optional[float]) -> Optional[str]:
    """Round to two significant decimals for display, full precision kept elsewhere."""
    if x is None:
        return None
    if x == 0:
        return "0"
    digits = 1 - math.floor(math.log10(abs(x)))
    value = round(x, digits)
    if digits <= 0:
        return str(int(value))
    text = f"{value:.{digits}f}".rstrip("0").rstrip(".")
    return text if text not in ("", "-") else "0"


def _csv_float(x: float) -> str:
    return repr(float(x))


def format_experiment_csv(stats: Sequence[DeltaStats], invocation: str) -> str:
    """Serialize ensemble results; leading comment line carries provenance."""
    lines = [f"# {invocation}"]
    lines.append("n,c_true,replicas,samples_used,mean_delta0,mean_delta2,sd_delta2")
    for s in stats:
        lines.append(
            f"{s.n},{s.c_true},{s.replicas},{s.samples_used},"
            f"{_csv_float(s.mean_delta0)},{_csv_float(s.mean_delta2)},{_csv_float(s.sd_delta2)}"
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AnalysisReport:
    """Everything measured and predicted for one (tree, arrangement) input."""

    n: int
    degree_second_moment: float
    c_max: int
    total_length: int
    crossings: int
    crossings_relative: Optional[float]
    e0: float
    e2: float
    e0_relative: Optional[float]
    e2_relative: Optional[float]

    def as_dict(self) -> dict:
        """JSON-ready mapping with raw values plus two-significant-decimal display."""
        raw = {
            "n": self.n,
            "degree_second_moment": self.degree_second_moment,
            "c_max": self.c_max,
            "total_length": self.total_length,
            "crossings": self.crossings,
            "crossings_relative": self.crossings_relative,
            "e0": self.e0,
            "e2": self.e2,
            "e0_relative": self.e0_relative,
            "e2_relative": self.e2_relative,
        }
        raw["display"] = {
            "degree_second_moment": format_two_sig(self.degree_second_moment),
            "crossings_relative": format_two_sig(self.crossings_relative),
            "e0": format_two_sig(self.e0),
            "e2": format_two_sig(self.e2),
            "e0_relative": format_two_sig(self.e0_relative),
            "e2_relative": format_two_sig(self.e2_relative),
        }
        return raw


def analyze(tree: LabeledTree, arr: Optional[LinearArrangement] = None) -> AnalysisReport:
    """Analysis report for in-memory objects; None means identity order."""
    if arr is None:
        arr = LinearArrangement(identity_positions(tree.n))
    counted = count_crossings(tree, arr)
    predicted = prediction_report(tree, arr)
    return AnalysisReport(
        n=tree.n,
        degree_second_moment=degree_second_moment(tree),
        c_max=predicted.c_max,
        total_length=total_length(tree, arr),
        crossings=counted.total,
        crossings_relative=counted.relative,
        e0=predicted.e0,
        e2=predicted.e2,
        e0_relative=predicted.e0_rel,
        e2_relative=predicted.e2_rel,
    )


def analyze_fixture(
    tree_file: str | Path, arrangement_file: Optional[str | Path] = None
) -> AnalysisReport:
    """Analyze an edge-list file with an optional arrangement file."""
    tree = read_tree(tree_file)
    arr = None
    if arrangement_file is not None:
        arr = read_arrangement(arrangement_file, tree.n)
    return analyze(tree, arr)
