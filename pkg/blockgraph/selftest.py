"""
Randomised invariant checks runnable from the command line.

Each check draws a small instance from a seeded random.Random, runs the
production code and compares against the brute-force oracle. The report
counts passes and failures per check; a failure never raises.
"""

import logging
import random
from collections.abc import Callable
from fractions import Fraction
from itertools import combinations

from .approx import approx_bgvd_4, approx_wfvs_2
from .bgvd import build_clique_incidence, solve_bgvd
from .conf import get_setting
from .generators import random_block_graph, random_gnp, random_weighted_multigraph, rule_instance
from .graphs import MultiGraph, WeightedGraph, is_forest
from .kernel import kernelize, rule_applications
from .models import DisjointInstance, SolverStats, Verdict
from .obstructions import find_small_obstruction, is_block_graph
from .oracle import (
    brute_bvd_decision,
    brute_min_bvd,
    brute_min_disjoint_wfvs,
    brute_min_wfvs,
    recognize_block_graph,
)
from .parity import build_parity_instance, is_independent, lift_solution
from .wfvs import solve_disjoint, solve_wfvs

logger = logging.getLogger(__name__)


def check_bgvd(rng: random.Random) -> bool:
    graph = random_gnp(rng.randint(1, 8), rng.uniform(0.1, 0.9), rng.randrange(2**32))
    k = rng.randint(0, 3)
    optimum, _ = brute_min_bvd(graph)
    found = solve_bgvd(graph, k)
    if found is None:
        return optimum > k
    if optimum > k or len(found) != optimum:
        return False
    return recognize_block_graph(graph.remove_vertices(found))


def check_wfvs(rng: random.Random) -> bool:
    n = rng.randint(1, 7)
    weighted = random_weighted_multigraph(n, rng.randint(0, 2 * n), rng.randrange(2**32))
    k = rng.randint(0, 3)
    expected = brute_min_wfvs(weighted, k)
    found = solve_wfvs(weighted, k)
    if expected is None or found is None:
        return expected is None and found is None
    return found[1] == expected[0] and is_forest(weighted.graph.remove_vertices(found[0]))


def small_obstruction_free(rng: random.Random, n: int) -> MultiGraph:
    """A random {C4, diamond}-free graph: a block graph plus edges that keep it so."""
    graph = random_block_graph(n, rng.randrange(2**32))
    for u, v in combinations(sorted(graph.vertices), 2):
        if graph.has_edge(u, v) or rng.random() > 0.3:
            continue
        candidate = graph.add_edges([(u, v)])
        if find_small_obstruction(candidate) is None:
            graph = candidate
    return graph


def check_incidence(rng: random.Random) -> bool:
    graph = small_obstruction_free(rng, rng.randint(1, 10))
    incidence = build_clique_incidence(graph)
    chosen = [v for v in sorted(graph.vertices) if rng.random() < 0.3]
    return is_block_graph(graph.remove_vertices(chosen)) == is_forest(
        incidence.weighted.graph.remove_vertices(chosen)
    )


def base_case_instance(rng: random.Random, free: int) -> DisjointInstance:
    """
    A reduced base-case instance: G[R] is a random forest and every other
    vertex is nice or a tent with its neighbours in distinct trees of G[R].
    """
    retained = list(range(rng.randint(3, 6)))
    edges = [(v, rng.randrange(v)) for v in retained[1:] if rng.random() < 0.4]
    trees = MultiGraph.from_edges(edges, vertices=retained).components()
    if len(trees) < 2:
        free = 0
    for i in range(free):
        v = len(retained) + i
        picked = rng.sample(trees, min(len(trees), rng.choice((2, 3))))
        edges += [(v, rng.choice(sorted(tree))) for tree in picked]
    graph = MultiGraph.from_edges(edges, vertices=range(len(retained) + free))
    weight = {v: Fraction(rng.randint(0, 9)) for v in graph.vertices}
    return DisjointInstance(
        graph=WeightedGraph(graph=graph, weight=weight),
        retained=frozenset(retained),
        budget=free,
    )


def check_parity(rng: random.Random) -> bool:
    inst = base_case_instance(rng, rng.randint(0, 6))
    pi = build_parity_instance(inst)
    graph = inst.graph.graph
    free = sorted(p.vertex for p in pi.pairs)
    for size in range(len(pi.pairs) + 1):
        for chosen in combinations(range(len(pi.pairs)), size):
            kept = {pi.pairs[i].vertex for i in chosen}
            dropped = set(free) - kept
            if is_independent(pi, chosen) != is_forest(graph.remove_vertices(dropped)):
                return False
            if is_independent(pi, chosen):
                lifted, weight = lift_solution(pi, chosen)
                if weight + pi.pair_weight(chosen) != pi.free_weight:
                    return False
    return True


def check_approx(rng: random.Random) -> bool:
    graph = random_gnp(rng.randint(1, 9), rng.uniform(0.2, 0.8), rng.randrange(2**32))
    optimum, _ = brute_min_bvd(graph)
    found = approx_bgvd_4(graph)
    n = rng.randint(1, 7)
    weighted = random_weighted_multigraph(n, rng.randint(0, 12), rng.randrange(2**32))
    best = brute_min_wfvs(weighted, len(weighted.graph))
    cover = approx_wfvs_2(weighted)
    return (
        len(found) <= 4 * optimum
        and recognize_block_graph(graph.remove_vertices(found))
        and weighted.total(cover) <= 2 * best[0]
    )


def check_kernel(rng: random.Random) -> bool:
    graph = random_gnp(rng.randint(1, 9), rng.uniform(0.2, 0.8), rng.randrange(2**32))
    k = rng.randint(0, 3)
    optimum, _ = brute_min_bvd(graph)
    result = kernelize(graph, k)
    if result.verdict is Verdict.TRIVIAL_NO:
        return optimum > k
    if result.verdict is Verdict.TRIVIAL_YES:
        return optimum <= k
    if len(result.graph) > get_setting("ORACLE_MAX_VERTICES_BVD"):
        return True
    reduced, _ = brute_min_bvd(result.graph)
    return (optimum <= k) == (reduced <= result.budget)


def check_kernel_rules(rng: random.Random) -> bool:
    """One instance from a rule family; every application must keep the decision."""
    graph, budget = rule_instance(rng.randint(1, 6), rng.randrange(2**32))
    limit = get_setting("ORACLE_MAX_VERTICES_BVD")
    for _, before, after in rule_applications(graph, budget):
        if max(len(before.graph), len(after.graph)) > limit:
            continue
        expected = brute_bvd_decision(before.graph, before.budget) is not None
        if after.trace.verdict is Verdict.TRIVIAL_NO:
            return not expected
        if (brute_bvd_decision(after.graph, after.budget) is not None) != expected:
            return False
    return True


def random_feedback_set(rng: random.Random, graph: MultiGraph) -> frozenset[int]:
    """A random R with G - R a forest: free vertices are taken while they keep one."""
    free: list[int] = []
    for v in rng.sample(sorted(graph.vertices), len(graph)):
        if rng.random() < 0.8 and is_forest(graph.subgraph([*free, v])):
            free.append(v)
    return graph.vertices - set(free)


def check_measure_prunes(rng: random.Random) -> bool:
    n = rng.randint(3, 8)
    weighted = random_weighted_multigraph(n, rng.randint(n, 2 * n), rng.randrange(2**32))
    retained = random_feedback_set(rng, weighted.graph)
    stats = SolverStats(pruned=[])
    solve_disjoint(DisjointInstance(weighted, retained, rng.randint(0, 3)), stats)
    limit = get_setting("ORACLE_MAX_VERTICES_WFVS")
    return all(
        brute_min_disjoint_wfvs(p.graph, p.retained, p.budget) is None
        for p in stats.pruned
        if len(p.graph.graph) <= limit
    )


CHECKS: dict[str, Callable[[random.Random], bool]] = {
    "bgvd-vs-oracle": check_bgvd,
    "wfvs-vs-oracle": check_wfvs,
    "incidence-biconditional": check_incidence,
    "parity-round-trip": check_parity,
    "approximation-ratio": check_approx,
    "kernel-decision": check_kernel,
    "kernel-rules": check_kernel_rules,
    "measure-prunes": check_measure_prunes,
}


def run_selftest(trials: int, seed: int, only: list[str] | None = None) -> dict:
    """Run every check `trials` times; returns {check: {"passed": p, "failed": f}}."""
    report = {}
    for name, check in CHECKS.items():
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        passed = failed = 0
        for _ in range(trials):
            if check(rng):
                passed += 1
            else:
                failed += 1
        if failed:
            logger.warning(f"Selftest {name}: {failed} of {trials} trials failed")
        report[name] = {"passed": passed, "failed": failed}
    return report
