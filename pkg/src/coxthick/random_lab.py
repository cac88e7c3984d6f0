"""Monte Carlo experiments on Erdos-Renyi presentation graphs."""

from __future__ import annotations

import csv
import io
import math
import multiprocessing
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .density import DensitySchedule
from .graph import (
    Graph,
    component_census,
    find_k23_subgraph,
    missing_edge_count,
    missing_edges,
)
from .racg import RacgReport, Status, classify_racg, is_thick_order0

TRIAL_COLUMNS = ["n", "p", "trial", "status", "thick", "order0", "has_k22", "has_k23",
                 "peripheral_all_squares", "giant_fraction", "nontree_components", "missing_edges"]
AGGREGATE_COLUMNS = ["n", "p", "trials", "prop_thick", "prop_relhyp", "prop_hyperbolic",
                     "prop_finite", "prop_virtz"]


def trial_rng(master_seed: int, n: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, n, trial), so scheduling cannot matter."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, n, trial]))


def _pair_from_index(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Pairs (j, k), k < j, listed row by row: index = j(j-1)/2 + k.
    j = ((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) / 2).astype(np.int64)
    j -= (j * (j - 1) // 2 > idx)
    j += ((j + 1) * j // 2 <= idx)
    return j, idx - j * (j - 1) // 2


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p): each of the n(n-1)/2 pairs is an edge independently.

    The number of edges (or of missing edges, when ``p > 1/2``) is drawn
    binomially and the pairs uniformly without replacement, which gives
    the same distribution as independent coin flips.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    pairs = n * (n - 1) // 2
    flip = p > 0.5
    k = int(rng.binomial(pairs, 1.0 - p if flip else p)) if pairs else 0
    idx = rng.choice(pairs, size=k, replace=False) if k else np.empty(0, dtype=np.int64)
    j, i = _pair_from_index(np.asarray(idx, dtype=np.int64))
    a = np.full((n, n), flip, dtype=bool)
    a[j, i] = not flip
    a[i, j] = not flip
    np.fill_diagonal(a, False)
    return Graph.from_matrix(a)


# --------------------------------------------------------------------------


@dataclass
class TrialRecord:
    n: int
    p: float
    trial: int
    status: str
    thick: bool
    order0: bool
    has_k22: bool
    has_k23: bool
    peripheral_all_squares: bool
    giant_fraction: float
    nontree_components: int
    missing_edges: int

    def row(self) -> list[str]:
        d = asdict(self)
        out = []
        for col in TRIAL_COLUMNS:
            v = d[col]
            if isinstance(v, bool):
                out.append("1" if v else "0")
            elif col == "p":
                out.append(f"{v:.10g}")
            elif col == "giant_fraction":
                out.append(f"{v:.6f}")
            else:
                out.append(str(v))
        return out


def relhyp_profile(g: Graph, report: RacgReport | None = None) -> dict:
    """Peripheral shape and component structure of ``g``.

    ``peripheral_profile`` holds when ``g`` is relatively hyperbolic and
    every peripheral is a single induced square.  ``nontree_components``
    counts non-tree components other than the largest one.
    """
    if report is None:
        report = classify_racg(g)
    shapes = sorted(component_census(g), key=lambda c: (-c.size, c.vertices & -c.vertices))
    giant = shapes[0].size / g.n if g.n else 0.0
    nontree = sum(1 for c in shapes[1:] if not c.is_tree)
    all_squares = (report.status == Status.RELATIVELY_HYPERBOLIC
                   and all(len(P) == 4 for P in report.peripherals))
    return {
        "peripheral_profile": all_squares,
        "giant_fraction": giant,
        "nontree_components": nontree,
        "component_shape_census": {
            "components": len(shapes),
            "trees": sum(1 for c in shapes if c.is_tree),
            "unicyclic": sum(1 for c in shapes if c.is_unicyclic),
        },
    }


def measure(g: Graph, n: int, p: float, trial: int) -> TrialRecord:
    report = classify_racg(g)
    prof = relhyp_profile(g, report)
    return TrialRecord(
        n=n,
        p=p,
        trial=trial,
        status=report.status.value,
        thick=report.status == Status.THICK,
        order0=report.order0,
        has_k22=report.status in (Status.THICK, Status.RELATIVELY_HYPERBOLIC),
        has_k23=find_k23_subgraph(g) is not None,
        peripheral_all_squares=prof["peripheral_profile"],
        giant_fraction=prof["giant_fraction"],
        nontree_components=prof["nontree_components"],
        missing_edges=missing_edge_count(g),
    )


# --------------------------------------------------------------------------


@dataclass
class SweepConfig:
    n_values: list[int]
    schedule: DensitySchedule
    trials: int
    master_seed: int
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        for n in self.n_values:
            self.schedule(n)  # raises DensityError naming n


@dataclass
class SweepReport:
    records: list[TrialRecord]
    aggregates: list[dict] = field(default_factory=list)

    def trials_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TRIAL_COLUMNS)
        for r in self.records:
            w.writerow(r.row())
        return buf.getvalue()

    def aggregate_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(AGGREGATE_COLUMNS)
        for a in self.aggregates:
            w.writerow([a["n"], f"{a['p']:.10g}", a["trials"]]
                       + [f"{a[c]:.6g}" for c in AGGREGATE_COLUMNS[3:]])
        return buf.getvalue()

    def write(self, out_dir) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        trials, agg = out / "trials.csv", out / "aggregate.csv"
        trials.write_text(self.trials_csv())
        agg.write_text(self.aggregate_csv())
        return trials, agg


def _run_trial(task) -> TrialRecord:
    n, p, trial, seed = task
    g = sample_gnp(n, p, trial_rng(seed, n, trial))
    return measure(g, n, p, trial)


def aggregate(records: list[TrialRecord]) -> list[dict]:
    out = []
    for n in sorted({r.n for r in records}):
        rows = [r for r in records if r.n == n]
        k = len(rows)

        def prop(status):
            return sum(r.status == status.value for r in rows) / k

        out.append({
            "n": n, "p": rows[0].p, "trials": k,
            "prop_thick": prop(Status.THICK),
            "prop_relhyp": prop(Status.RELATIVELY_HYPERBOLIC),
            "prop_hyperbolic": prop(Status.HYPERBOLIC),
            "prop_finite": prop(Status.FINITE),
            "prop_virtz": prop(Status.VIRTUALLY_CYCLIC),
        })
    return out


def run_sweep(config: SweepConfig) -> SweepReport:
    tasks = [(n, config.schedule(n), t, config.master_seed)
             for n in config.n_values for t in range(config.trials)]
    if config.workers > 1:
        with multiprocessing.get_context("spawn").Pool(config.workers) as pool:
            records = list(pool.imap(_run_trial, tasks, chunksize=1))
    else:
        records = [_run_trial(t) for t in tasks]
    records.sort(key=lambda r: (config.n_values.index(r.n), r.trial))
    return SweepReport(records, aggregate(records))


# --------------------------------------------------------------------------


def high_density_experiment(alpha: float, n: int, trials: int, seed: int) -> dict:
    """Sample G(n, 1 - alpha/n^2) and sort by the number of missing edges.

    No missing edge gives a finite group, one gives a virtually cyclic
    group; two or more pairwise disjoint missing edges give a product of
    infinite dihedral groups (thick of order 0).
    """
    p = 1.0 - alpha / n**2
    if not 0.0 <= p <= 1.0:
        raise ValueError("alpha / n^2 must lie in [0, 1]")
    counts = {"finite": 0, "virtz": 0, "other": 0, "disjoint": 0, "order0": 0}
    total_missing = 0
    for t in range(trials):
        g = sample_gnp(n, p, trial_rng(seed, n, t))
        miss = missing_edges(g)
        total_missing += len(miss)
        if not miss:
            counts["finite"] += 1
        elif len(miss) == 1:
            counts["virtz"] += 1
        else:
            counts["other"] += 1
            ends = [v for e in miss for v in e]
            if len(set(ends)) == len(ends):
                counts["disjoint"] += 1
                counts["order0"] += is_thick_order0(g)
    return {
        "alpha": alpha, "n": n, "trials": trials, "p": p,
        "P_finite": counts["finite"] / trials,
        "P_virtZ": counts["virtz"] / trials,
        "P_other": counts["other"] / trials,
        "mean_missing_edges": total_missing / trials,
        "disjoint_among_other": counts["disjoint"],
        "order0_among_disjoint": counts["order0"],
        "limit_finite": math.exp(-alpha / 2),
        "limit_virtz": alpha / 2 * math.exp(-alpha / 2),
    }
