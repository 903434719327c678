"""Counter and size bounds for the solvers on generated instances."""

import time

import pytest

from blockgraph.approx import approx_bgvd_4
from blockgraph.bench import branch_ceiling, leaf_ceiling, load_bench_config, run_suite
from blockgraph.bgvd import BranchStats, solve_bgvd
from blockgraph.generators import disjoint_c4, flower, planted_bgvd
from blockgraph.kernel import kernelize
from blockgraph.models import Verdict
from blockgraph.oracle import brute_min_bvd


@pytest.mark.parametrize("seed", range(5))
def test_branch_nodes_within_ceiling(seed):
    """Test that solve_bgvd stays under 4^(k+1) * (n+1) branch nodes."""
    graph = planted_bgvd(12, 3, seed)
    stats = BranchStats()
    solve_bgvd(graph, 3, stats)
    assert stats.nodes <= branch_ceiling(12, 3)


def test_flower_kernel_is_decided_quickly():
    """Test that a 20-petal flower with k = 3 is decided within 5 seconds."""
    start_time = time.perf_counter()
    result = kernelize(flower(20), 3)
    execution_time = time.perf_counter() - start_time
    print(f"\nFlower kernel computed in {execution_time:.4f} seconds")

    assert result.verdict is Verdict.TRIVIAL_YES
    assert execution_time < 5.0, f"Kernelization took {execution_time:.4f}s (target: <5.0s)"


def test_disjoint_c4_refused_by_approximation():
    """Test that k + 1 disjoint C4s are refused before any rule fires."""
    result = kernelize(disjoint_c4(6), 5)
    assert result.verdict is Verdict.TRIVIAL_NO
    assert result.trace.steps == ()


@pytest.mark.parametrize("seed", range(5))
def test_approximation_ratio(seed):
    """Test that the approximation is within four times the optimum."""
    graph = planted_bgvd(12, 3, seed)
    optimum, _ = brute_min_bvd(graph)
    assert len(approx_bgvd_4(graph)) <= 4 * optimum


@pytest.mark.slow
def test_committed_suites():
    """Test every committed suite against all four ceilings."""
    config = load_bench_config()
    assert config["suites"]["planted"]["k"] == list(range(2, 9))
    for name, suite in sorted(config["suites"].items()):
        report = run_suite(suite, config["kernel_ratio_baseline"])
        for row in report.rows:
            assert row["branch_nodes"] <= branch_ceiling(row["n"], row["k"]), (name, row)
            assert row["disjoint_leaves"] <= leaf_ceiling(row["k"]), (name, row)
            if row["kernel_ratio"] is not None:
                ceiling = config["kernel_ratio_baseline"] * 1.1
                assert row["kernel_ratio"] <= ceiling, (name, row)
            if row["approx_ratio"] is not None:
                assert row["approx_ratio"] <= 4, (name, row)
            assert row["exceeded"] == [], (name, row["instance"])
