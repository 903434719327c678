"""
Factor-4 approximation for block graph vertex deletion.

A maximal family of disjoint diamonds and induced C4s is deleted outright
(every solution meets each of them, paying at most 4x there); the remaining
{C4, diamond}-free graph is handled by a factor-2 weighted feedback vertex
set approximation on its clique-incidence graph.

The factor-2 step is the local-ratio scheme on multigraphs: strip vertices
of degree <= 1, then either subtract the minimum weight along a semidisjoint
cycle (all vertices but at most one of degree 2) or subtract gamma * (d - 1)
from every vertex, move zero-weight vertices to the solution and finally
undo, in reverse order, every addition the rest of the solution makes
redundant.
"""

import logging
from fractions import Fraction

from .bgvd import build_clique_incidence
from .exceptions import InvariantViolation, PreconditionError
from .graphs import MultiGraph, WeightedGraph, is_forest
from .obstructions import (
    PackingMode,
    find_small_obstruction,
    is_block_graph,
    pack_disjoint_obstructions,
)

logger = logging.getLogger(__name__)

Adjacency = dict[int, dict[int, int]]


def _degree(adjacency: Adjacency, v: int) -> int:
    row = adjacency[v]
    return sum(row.values()) + row.get(v, 0)


def _remove(adjacency: Adjacency, v: int) -> None:
    for u in adjacency.pop(v):
        if u != v:
            adjacency[u].pop(v, None)


def _cleanup(adjacency: Adjacency) -> None:
    queue = [v for v in adjacency if _degree(adjacency, v) <= 1]
    while queue:
        v = queue.pop()
        if v not in adjacency:
            continue
        neighbours = [u for u in adjacency[v] if u != v]
        _remove(adjacency, v)
        queue.extend(u for u in neighbours if _degree(adjacency, u) <= 1)


def _semidisjoint_cycle(adjacency: Adjacency) -> list[int] | None:
    """A cycle whose vertices all have degree 2 except at most one, if any."""
    two = {v for v in adjacency if _degree(adjacency, v) == 2}
    seen: set[int] = set()
    for start in sorted(two):
        if start in seen:
            continue
        component = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if y in two and y not in component:
                    component.add(y)
                    stack.append(y)
        seen |= component
        outside = [
            u
            for x in component
            for u, m in adjacency[x].items()
            if u not in component
            for _ in range(m)
        ]
        if not outside:
            return sorted(component)
        if len(outside) == 2 and outside[0] == outside[1]:
            return sorted(component | {outside[0]})
    return None


def approx_wfvs_2(weighted: WeightedGraph) -> frozenset[int]:
    """
    Feedback vertex set of weight at most twice the minimum.

    Vertices carrying a loop are in every feedback vertex set and are taken
    first. The result is minimal: dropping any vertex outside the forced
    ones leaves a cycle.

    Raises:
        PreconditionError: if a weight is negative
    """
    if any(w < 0 for w in weighted.weight.values()):
        raise PreconditionError("Vertex weights must be non-negative")
    graph = weighted.graph
    adjacency: Adjacency = {v: dict(row) for v, row in graph.adjacency.items()}
    residual = dict(weighted.weight)

    forced = sorted(v for v in adjacency if adjacency[v].get(v, 0))
    for v in forced:
        _remove(adjacency, v)
    _cleanup(adjacency)

    stack: list[int] = []
    while adjacency:
        cycle = _semidisjoint_cycle(adjacency)
        if cycle is not None:
            delta = min(residual[v] for v in cycle)
            for v in cycle:
                residual[v] -= delta
        else:
            gamma = min(residual[v] / (_degree(adjacency, v) - 1) for v in adjacency)
            for v in adjacency:
                residual[v] -= gamma * (_degree(adjacency, v) - 1)
        exhausted = sorted(v for v in adjacency if residual[v] == 0)
        for v in exhausted:
            _remove(adjacency, v)
        stack.extend(exhausted)
        _cleanup(adjacency)

    solution = set(forced) | set(stack)
    for v in reversed(stack):
        if is_forest(graph.remove_vertices(solution - {v})):
            solution.discard(v)
    if not is_forest(graph.remove_vertices(solution)):
        raise InvariantViolation("Local-ratio result is not a feedback vertex set")
    logger.debug(f"Local-ratio FVS: {len(solution)} vertices, weight {weighted.total(solution)}")
    return frozenset(solution)


def approx_bgvd_4(graph: MultiGraph) -> frozenset[int]:
    """
    Block vertex deletion set of size at most four times the optimum.

    Raises:
        PreconditionError: if the graph is not simple
        InvariantViolation: if the packing is not maximal, a clique vertex
            reaches the solution or the result is not a deletion set
    """
    packing = pack_disjoint_obstructions(graph, mode=PackingMode.SMALL_ONLY)
    packed = frozenset(v for obstruction in packing for v in obstruction.vertices)
    rest = graph.remove_vertices(packed)
    if find_small_obstruction(rest) is not None:
        raise InvariantViolation("Small-obstruction packing is not maximal")

    incidence = build_clique_incidence(rest)
    cover = approx_wfvs_2(incidence.weighted)
    if cover & incidence.clique_vertices:
        raise InvariantViolation("Approximate FVS picked a clique vertex")

    solution = packed | cover
    if not is_block_graph(graph.remove_vertices(solution)):
        raise InvariantViolation("Approximate solution leaves an obstruction")
    logger.info(
        f"Approximation: {len(packing)} small obstructions, {len(cover)} incidence deletions, "
        f"{len(solution)} total"
    )
    return solution


def approximation_ratio(size: int, optimum: int) -> Fraction | None:
    """Exact ratio size / optimum; None when the optimum is 0."""
    return Fraction(size, optimum) if optimum else None
