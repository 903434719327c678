"""
Benchmark harness for the exact solver, the kernel and the approximation.

Suites are read from the JSON file named by BENCH_CONFIG_PATH (by default
data/bench_suites.json), which also holds the committed kernel-size
baseline. Each row compares measured counters against their ceilings:
    branch nodes of solve_bgvd     <= 4^(k+1) * (n+1)
    leaves of one disjoint solve   <= 1.618^(2k+2)
    kernel vertices / k^4          <= baseline * (1 + tolerance)
    approximate size / OPT         <= 4 (when the oracle can compute OPT)
"""

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

from django.conf import settings

from .approx import approx_bgvd_4
from .bgvd import BranchStats, solve_bgvd
from .conf import get_setting
from .generators import generate
from .kernel import kernelize
from .oracle import brute_min_bvd

logger = logging.getLogger(__name__)

GOLDEN_RATIO = 1.618


def load_bench_config(path: str | Path | None = None) -> dict:
    """
    Load benchmark suites and the kernel baseline from JSON.

    Returns:
        Dictionary with "suites" and "kernel_ratio_baseline"

    Raises:
        FileNotFoundError: If config file is missing
        json.JSONDecodeError: If config file is malformed
    """
    configured = path or get_setting("BENCH_CONFIG_PATH")
    if configured:
        config_path = Path(configured)
    else:
        config_path = Path(settings.BASE_DIR) / "data" / "bench_suites.json"
    try:
        with open(config_path) as f:
            return json.load(f)
    except FileNotFoundError:
        logger.error(f"Bench config file not found at {config_path}")
        raise
    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in bench config file: {e}")
        raise


def branch_ceiling(n: int, k: int) -> int:
    return 4 ** (k + 1) * (n + 1)


def leaf_ceiling(k: int) -> float:
    return GOLDEN_RATIO ** (2 * k + 2)


@dataclass
class BenchReport:
    rows: list[dict] = field(default_factory=list)
    baseline: float | None = None
    tolerance: float = 0.1

    @property
    def exceedances(self) -> int:
        return sum(len(row["exceeded"]) for row in self.rows)

    def aggregates(self) -> dict:
        def largest(key):
            values = [row[key] for row in self.rows if row.get(key) is not None]
            return max(values, default=None)

        return {
            "instances": len(self.rows),
            "max_branch_nodes": largest("branch_nodes"),
            "max_disjoint_leaves": largest("disjoint_leaves"),
            "max_kernel_ratio": largest("kernel_ratio"),
            "max_approx_ratio": largest("approx_ratio"),
            "exceedances": self.exceedances,
        }

    def as_dict(self) -> dict:
        return {"rows": self.rows, "aggregates": self.aggregates(), "baseline": self.baseline}

    def table(self) -> str:
        header = (
            f"{'instance':<24} {'n':>3} {'k':>2} {'nodes':>7} {'leaves':>6} "
            f"{'kernel':>6} {'apx':>4} {'opt':>4}"
        )
        lines = [header, "-" * len(header)]
        for row in self.rows:
            opt = "-" if row["optimum"] is None else str(row["optimum"])
            lines.append(
                f"{row['instance']:<24} {row['n']:>3} {row['k']:>2} {row['branch_nodes']:>7} "
                f"{row['disjoint_leaves']:>6} {row['kernel_vertices']:>6} "
                f"{row['approx_size']:>4} {opt:>4}"
            )
        return "\n".join(lines)


def bench_instance(name: str, graph, k: int, baseline: float | None, tolerance: float) -> dict:
    """Run every solver on one instance and compare against the ceilings."""
    n = len(graph)
    started = time.perf_counter()
    stats = BranchStats()
    solution = solve_bgvd(graph, k, stats)
    kernel = kernelize(graph, k)
    approximate = approx_bgvd_4(graph)
    optimum = None
    if n <= get_setting("ORACLE_MAX_VERTICES_BVD"):
        optimum, _ = brute_min_bvd(graph)

    kernel_ratio = len(kernel.graph) / k**4 if k > 0 else None
    row = {
        "instance": name,
        "n": n,
        "k": k,
        "solved": solution is not None,
        "solution_size": None if solution is None else len(solution),
        "branch_nodes": stats.nodes,
        "disjoint_leaves": stats.wfvs.max_call_leaves,
        "kernel_vertices": len(kernel.graph),
        "kernel_verdict": kernel.verdict.value,
        "kernel_ratio": kernel_ratio,
        "approx_size": len(approximate),
        "optimum": optimum,
        "approx_ratio": len(approximate) / optimum if optimum else None,
        "elapsed_seconds": round(time.perf_counter() - started, 4),
    }
    exceeded = []
    if stats.nodes > branch_ceiling(n, k):
        exceeded.append("branch_nodes")
    if stats.wfvs.max_call_leaves > leaf_ceiling(k):
        exceeded.append("disjoint_leaves")
    ceiling = None if baseline is None else baseline * (1 + tolerance)
    if kernel_ratio is not None and ceiling is not None and kernel_ratio > ceiling:
        exceeded.append("kernel_ratio")
    if row["approx_ratio"] is not None and row["approx_ratio"] > 4:
        exceeded.append("approx_ratio")
    row["exceeded"] = exceeded
    if exceeded:
        logger.warning(f"{name}: ceilings exceeded: {', '.join(exceeded)}")
    return row


def run_suite(suite: dict, baseline: float | None = None, tolerance: float = 0.1) -> BenchReport:
    """
    Run one suite: {"profile", "n" or "petals"/"count", "k": [...], "seeds": [...]}.

    Instances run in deterministic order (k, then seed).
    """
    report = BenchReport(baseline=baseline, tolerance=tolerance)
    profile = suite.get("profile", "planted-bgvd")
    fixed = {key: value for key, value in suite.items() if key not in ("profile", "k", "seeds")}
    for k in suite.get("k", []):
        for seed in suite.get("seeds", [0]):
            params = dict(fixed)
            params["k"] = k
            graph = generate(profile, seed, **params).graph
            name = f"{profile}-k{k}-s{seed}"
            report.rows.append(bench_instance(name, graph, k, baseline, tolerance))
    logger.info(
        f"Bench suite {profile}: {len(report.rows)} instances, {report.exceedances} exceedances"
    )
    return report
