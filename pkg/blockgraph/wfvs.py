"""
Exact weighted feedback vertex set by iterative compression.

Key Functions:
    solve_wfvs(): minimum-weight FVS of size <= k, or None
    solve_disjoint(): the compression step, an FVS avoiding a retained set R
    reduce_disjoint(): reduction rules R1-R4 applied to a fixpoint
    measure(): mu = k + rho(R) - (nice + tents)

The disjoint solver reduces, prunes when mu < 0, finishes with the matroid
parity base case when every solver-side vertex is nice or a tent, and
otherwise branches on a leaf of G - R with at least three retained neighbours.
Along every branch mu drops by at least one (delete) or two (retain), which
is asserted at each node.

Weights must be non-negative; R1 deletes pendant vertices outright, which is
only safe when no vertex is worth taking for a negative price.
"""

import logging
from dataclasses import replace
from fractions import Fraction
from itertools import combinations

from .conf import get_setting
from .exceptions import InvariantViolation, PreconditionError
from .graphs import WeightedGraph, is_forest
from .models import DisjointInstance, Measure, SolverStats
from .parity import (
    build_parity_instance,
    is_nice,
    is_tent,
    lift_solution,
    parity_node_bound,
    solve_parity,
)

logger = logging.getLogger(__name__)

Solution = tuple[frozenset[int], Fraction]


def _check_weights(weighted: WeightedGraph) -> None:
    negative = sorted(v for v, w in weighted.weight.items() if w < 0)
    if negative:
        raise PreconditionError(f"Vertex weights must be non-negative; got negatives at {negative}")


def _key(solution: Solution) -> tuple:
    vertices, weight = solution
    return (weight, len(vertices), tuple(sorted(vertices)))


def _better(current: Solution | None, candidate: Solution | None) -> Solution | None:
    if candidate is None:
        return current
    if current is None or _key(candidate) < _key(current):
        return candidate
    return current


def measure(inst: DisjointInstance) -> Measure:
    graph = inst.graph.graph
    retained = inst.retained
    return Measure(
        budget=inst.budget,
        components=len(graph.subgraph(retained).components()),
        nice=sum(1 for v in inst.free if is_nice(graph, retained, v)),
        tents=sum(1 for v in inst.free if is_tent(graph, retained, v)),
    )


def _closes_cycle(inst: DisjointInstance, component: dict[int, int], v: int) -> bool:
    """Whether G[R + v] has a cycle, given the component index of each R-vertex."""
    graph = inst.graph.graph
    if graph.loops(v):
        return True
    hits = [component[u] for u, m in graph.adjacency[v].items() if u in component for _ in range(m)]
    return len(hits) != len(set(hits))


def _apply_rule(inst: DisjointInstance) -> tuple[int, DisjointInstance] | None:
    """The lowest-numbered applicable rule and its result, or None at the fixpoint."""
    weighted = inst.graph
    graph = weighted.graph
    retained = inst.retained

    pendant = [v for v in graph.vertices if graph.degree(v) <= 1]
    if pendant:
        return 1, replace(
            inst, graph=weighted.remove_vertices(pendant), retained=retained - set(pendant)
        )

    component = {
        v: i for i, part in enumerate(graph.subgraph(retained).components()) for v in part
    }
    for v in sorted(inst.free):
        if _closes_cycle(inst, component, v):
            return 2, replace(
                inst,
                graph=weighted.remove_vertices([v]),
                budget=inst.budget - 1,
                solution=inst.solution | {v},
                solution_weight=inst.solution_weight + weighted.weight[v],
            )

    if any(m > 2 for _, _, m in graph.edges()):
        return 3, replace(inst, graph=weighted.with_graph(graph.cap_multiplicity(2)))

    forest = graph.remove_vertices(retained)
    for x in sorted(inst.free):
        if forest.degree(x) != 1 or len(graph.neighbors(x) & retained) > 2:
            continue
        (y,) = forest.neighbors(x)
        subdivided, fresh = graph.add_vertex()
        subdivided = subdivided.remove_edges([(x, y)]).add_edges([(x, fresh), (fresh, y)])
        return 4, replace(
            inst,
            graph=weighted.with_graph(subdivided, {fresh: Fraction(1)}),
            retained=retained | {fresh},
        )
    return None


def reduce_disjoint(
    inst: DisjointInstance, stats: SolverStats | None = None
) -> DisjointInstance | None:
    """
    Apply rules R1-R4, always the lowest-numbered applicable one, until none applies.

    Returns None when R2 has spent more than the budget.

    Raises:
        InvariantViolation: if a rule application increases the measure
    """
    current = inst
    while (fired := _apply_rule(current)) is not None:
        rule, reduced = fired
        if stats is not None:
            stats.rule_firings[f"R{rule}"] += 1
        if reduced.budget < 0:
            return None
        if measure(reduced).value > measure(current).value:
            raise InvariantViolation(f"Rule R{rule} increased the measure")
        current = reduced
    return current


def _base_case(inst: DisjointInstance, mu: Measure, stats: SolverStats) -> Solution | None:
    pi = build_parity_instance(inst)
    stats.parity_calls += 1
    pairs = len(pi.pairs)
    if pairs > mu.budget + mu.components:
        raise InvariantViolation(f"{pairs} pairs exceed k + rho = {mu.budget + mu.components}")
    if pairs > 2 * inst.budget + get_setting("PARITY_MAX_PAIRS_SLACK"):
        logger.warning(f"Parity base case with {pairs} pairs at budget {inst.budget}")
    before = stats.parity_nodes
    chosen = solve_parity(pi, min_pairs=pairs - inst.budget, stats=stats)
    if stats.parity_nodes - before > parity_node_bound(pairs, inst.budget):
        raise InvariantViolation(f"Parity search over {pairs} pairs left its node bound")
    if chosen is None:
        return None
    dropped, weight = lift_solution(pi, chosen)
    return inst.solution | dropped, inst.solution_weight + weight


def _branch_vertex(inst: DisjointInstance) -> int | None:
    graph = inst.graph.graph
    forest = graph.remove_vertices(inst.retained)
    for v in sorted(inst.free):
        if is_nice(graph, inst.retained, v) or is_tent(graph, inst.retained, v):
            continue
        if forest.degree(v) <= 1:
            return v
    return None


def _solve(inst: DisjointInstance, stats: SolverStats) -> Solution | None:
    stats.nodes += 1
    reduced = reduce_disjoint(inst, stats)
    if reduced is None:
        stats.leaves += 1
        return None
    mu = measure(reduced)
    if mu.value < 0:
        stats.leaves += 1
        stats.measure_prunes += 1
        if stats.pruned is not None:
            stats.pruned.append(reduced)
        return None

    graph, retained = reduced.graph.graph, reduced.retained
    if all(is_nice(graph, retained, u) or is_tent(graph, retained, u) for u in reduced.free):
        stats.leaves += 1
        return _base_case(reduced, mu, stats)
    v = _branch_vertex(reduced)
    if v is None:
        raise InvariantViolation("Reduced instance has no branching leaf")

    best: Solution | None = None
    if reduced.budget >= 1:
        deleted = replace(
            reduced,
            graph=reduced.graph.remove_vertices([v]),
            budget=reduced.budget - 1,
            solution=reduced.solution | {v},
            solution_weight=reduced.solution_weight + reduced.graph.weight[v],
        )
        if measure(deleted).value > mu.value - 1:
            raise InvariantViolation(f"Deleting {v} did not lower the measure")
        best = _better(best, _solve(deleted, stats))

    kept = replace(reduced, retained=reduced.retained | {v})
    if measure(kept).value > mu.value - 2:
        raise InvariantViolation(f"Retaining {v} did not lower the measure by two")
    return _better(best, _solve(kept, stats))


def solve_disjoint(inst: DisjointInstance, stats: SolverStats | None = None) -> Solution | None:
    """
    Minimum-weight X within V(G) - R with |X| <= k and G - X a forest.

    The returned set includes the instance's accumulated solution. Ties are
    broken by size, then by sorted vertex ids.
    """
    _check_weights(inst.graph)
    stats = stats if stats is not None else SolverStats()
    if inst.budget < 0 or not is_forest(inst.graph.graph.subgraph(inst.retained)):
        stats.leaves += 1
        return None
    before = stats.leaves
    found = _solve(inst, stats)
    stats.max_call_leaves = max(stats.max_call_leaves, stats.leaves - before)
    return found


def solve_wfvs(
    weighted: WeightedGraph, budget: int, stats: SolverStats | None = None
) -> Solution | None:
    """
    Minimum-weight feedback vertex set of size at most `budget`, or None.

    Vertices are added in id order; after each addition every subset Y of the
    previous solution plus the new vertex is guessed, and the rest is solved
    as a disjoint instance. If some prefix has no small solution, neither has
    the whole graph.

    Raises:
        PreconditionError: if the budget or any weight is negative
    """
    if budget < 0:
        raise PreconditionError("Budget must be non-negative")
    _check_weights(weighted)
    stats = stats if stats is not None else SolverStats()
    order = sorted(weighted.vertices)
    current: Solution = (frozenset(), Fraction(0))

    for i, v in enumerate(order):
        stats.compression_steps += 1
        prefix = weighted.subgraph(order[: i + 1])
        retained = sorted(current[0] | {v})
        best: Solution | None = None
        for size in range(min(len(retained), budget) + 1):
            for guess in combinations(retained, size):
                guessed = frozenset(guess)
                price = prefix.total(guessed)
                if best is not None and price > best[1]:
                    continue
                rest = frozenset(retained) - guessed
                if not is_forest(prefix.graph.subgraph(rest)):
                    continue
                inst = DisjointInstance(
                    graph=prefix.remove_vertices(guessed), retained=rest, budget=budget - size
                )
                found = solve_disjoint(inst, stats)
                if found is not None:
                    best = _better(best, (guessed | found[0], price + found[1]))
        if best is None:
            logger.info(f"No feedback vertex set of size <= {budget} (prefix of {i + 1} vertices)")
            return None
        current = best

    logger.info(
        f"WFVS solved: {len(current[0])} vertices, weight {current[1]}, {stats.nodes} nodes"
    )
    return current
