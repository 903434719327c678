"""
Exact block graph vertex deletion.

While the graph has a diamond or an induced C4, one of its four vertices is
in every solution, so the solver branches four ways. Once neither is left,
the remaining instance is solved through the clique-incidence graph: S is a
block vertex deletion set of G iff the weighted incidence graph minus S is
acyclic, and the heavy clique vertices are never worth deleting.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import InvariantViolation, PreconditionError
from .graphs import MultiGraph, WeightedGraph
from .models import CliqueIncidenceGraph, SolverStats
from .obstructions import find_small_obstruction, maximal_cliques_c4d4_free
from .wfvs import solve_wfvs

logger = logging.getLogger(__name__)


@dataclass
class BranchStats:
    """Counters for one solve_bgvd call; `wfvs` aggregates the restricted sub-solves."""

    nodes: int = 0
    restricted_calls: int = 0
    budgets_tried: int = 0
    wfvs: SolverStats | None = None

    def as_dict(self) -> dict:
        return {
            "branch_nodes": self.nodes,
            "restricted_calls": self.restricted_calls,
            "budgets_tried": self.budgets_tried,
            "wfvs": self.wfvs.as_dict() if self.wfvs else {},
        }


def build_clique_incidence(graph: MultiGraph) -> CliqueIncidenceGraph:
    """
    Bipartite graph on V(G) plus one vertex per maximal clique.

    A graph vertex is joined to the clique vertices of every maximal clique
    it lies in, but only when it lies in two or more of them. Graph vertices
    weigh 1 and clique vertices n^4.
    """
    cliques = maximal_cliques_c4d4_free(graph)
    membership: dict[int, list[int]] = {v: [] for v in graph.vertices}
    base = graph.next_id
    origin: dict[int, frozenset[int]] = {}
    for offset, clique in enumerate(cliques):
        origin[base + offset] = clique
        for v in clique:
            membership[v].append(base + offset)

    edges = [(v, c) for v, owners in membership.items() if len(owners) >= 2 for c in owners]
    incidence = MultiGraph.from_edges(edges, vertices=[*graph.vertices, *origin])
    heavy = Fraction(len(graph) ** 4)
    weight = {v: Fraction(1) for v in graph.vertices}
    weight.update({c: heavy for c in origin})
    return CliqueIncidenceGraph(
        weighted=WeightedGraph(graph=incidence, weight=weight),
        graph_vertices=graph.vertices,
        origin=origin,
    )


def solve_restricted(
    graph: MultiGraph, budget: int, stats: SolverStats | None = None
) -> frozenset[int] | None:
    """
    Minimum block vertex deletion set of size <= budget for a {C4, diamond}-free graph.

    Raises:
        PreconditionError: if the graph has a diamond or an induced C4
        InvariantViolation: if the WFVS solution contains a clique vertex
    """
    if find_small_obstruction(graph) is not None:
        raise PreconditionError("Restricted instance must be free of diamonds and induced C4s")
    incidence = build_clique_incidence(graph)
    found = solve_wfvs(incidence.weighted, budget, stats)
    if found is None:
        return None
    chosen, weight = found
    if weight > budget:
        return None
    if chosen & incidence.clique_vertices:
        leaked = sorted(chosen & incidence.clique_vertices)
        raise InvariantViolation(f"Clique vertices {leaked} in solution")
    return chosen


def _key(solution: frozenset[int]) -> tuple:
    return (len(solution), tuple(sorted(solution)))


def _branch(graph: MultiGraph, budget: int, stats: BranchStats) -> frozenset[int] | None:
    stats.nodes += 1
    obstruction = find_small_obstruction(graph)
    if obstruction is None:
        stats.restricted_calls += 1
        return solve_restricted(graph, budget, stats.wfvs)
    if budget == 0:
        return None
    best: frozenset[int] | None = None
    for v in obstruction.vertices:
        found = _branch(graph.remove_vertices([v]), budget - 1, stats)
        if found is None:
            continue
        candidate = found | {v}
        if best is None or _key(candidate) < _key(best):
            best = candidate
    return best


def solve_bgvd(
    graph: MultiGraph, budget: int, stats: BranchStats | None = None
) -> frozenset[int] | None:
    """
    Smallest block vertex deletion set of size at most `budget`, or None.

    Budgets 0, 1, ... are tried in turn, so the first witness found is a
    minimum one; ties are broken by sorted vertex ids.

    Raises:
        PreconditionError: if the budget is negative or the graph is not simple
    """
    if budget < 0:
        raise PreconditionError("Budget must be non-negative")
    if not graph.is_simple():
        raise PreconditionError("Block graph vertex deletion needs a simple graph")
    stats = stats if stats is not None else BranchStats()
    if stats.wfvs is None:
        stats.wfvs = SolverStats()
    for trial in range(budget + 1):
        stats.budgets_tried += 1
        found = _branch(graph, trial, stats)
        if found is not None:
            logger.info(f"BGVD solved with {len(found)} deletions ({stats.nodes} branch nodes)")
            return found
    logger.info(f"BGVD: no solution within budget {budget} ({stats.nodes} branch nodes)")
    return None
