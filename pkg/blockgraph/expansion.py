"""
Constructive q-expansion of a bipartite graph.

Given a bipartite graph between X and Y with |Y| >= q|X| and no isolated
vertex in Y, find nonempty X' within X and Y' within Y such that every
x in X' owns q private partners in Y' and no vertex of Y' has a neighbour
outside X'.

Each round matches q copies of every x into Y (Hopcroft-Karp). If all copies
are matched the whole pair works. Otherwise a minimum vertex cover contains
all copies of some set X_C and a part Y_C of Y; the vertices of Y outside
the cover only see X_C, and there are more than q|X_C| of them, so the
search continues on that strictly smaller instance.
"""

import logging
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass

import networkx as nx

from .exceptions import InvariantViolation, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Expansion:
    """X', Y' and the q private partners of each vertex of X'."""

    heads: frozenset
    tails: frozenset
    partners: Mapping[Hashable, tuple]


def _match_copies(q: int, heads: set, tails: set, neighbours: Mapping[Hashable, set]):
    graph = nx.Graph()
    copies = [("head", x, i) for x in sorted(heads, key=repr) for i in range(q)]
    graph.add_nodes_from(copies, bipartite=0)
    graph.add_nodes_from((("tail", y) for y in tails), bipartite=1)
    graph.add_edges_from(
        (("head", x, i), ("tail", y)) for y in tails for x in neighbours[y] for i in range(q)
    )
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=copies)
    return graph, copies, matching


def expansion(
    q: int, heads: Iterable, tails: Iterable, neighbours: Mapping[Hashable, Iterable]
) -> Expansion:
    """
    Find a q-expansion (X', Y') with N(Y') inside X'.

    Args:
        q: partners per head, at least 1
        heads: the set X
        tails: the set Y
        neighbours: for every y in Y, its neighbours (all in X)

    Raises:
        PreconditionError: if |Y| < q|X|, X is empty or some y has no neighbour in X
    """
    heads = set(heads)
    tails = set(tails)
    adjacency = {y: set(neighbours.get(y, ())) for y in tails}
    if q < 1:
        raise PreconditionError("q must be at least 1")
    if not heads:
        raise PreconditionError("X must be nonempty")
    if len(tails) < q * len(heads):
        raise PreconditionError(f"|Y| = {len(tails)} is below q|X| = {q * len(heads)}")
    if any(not nbrs for nbrs in adjacency.values()):
        raise PreconditionError("Y has an isolated vertex")
    if any(not nbrs <= heads for nbrs in adjacency.values()):
        raise PreconditionError("Some vertex of Y has a neighbour outside X")

    rounds = 0
    while True:
        rounds += 1
        graph, copies, matching = _match_copies(q, heads, tails, adjacency)
        if all(c in matching for c in copies):
            partners = {
                x: tuple(sorted((matching[("head", x, i)][1] for i in range(q)), key=repr))
                for x in heads
            }
            logger.debug(f"Expansion found after {rounds} rounds: |X'| = {len(heads)}")
            return Expansion(heads=frozenset(heads), tails=frozenset(tails), partners=partners)

        cover = nx.bipartite.to_vertex_cover(graph, matching, top_nodes=copies)
        covered_heads = {node[1] for node in cover if node[0] == "head"}
        partial = {x for x in covered_heads if any(("head", x, i) not in cover for i in range(q))}
        if partial:
            split = sorted(partial, key=repr)
            raise InvariantViolation(f"Vertex cover splits the copies of {split}")
        outside = {y for y in tails if ("tail", y) not in cover}
        if not covered_heads or covered_heads == heads or len(outside) < q * len(covered_heads):
            raise InvariantViolation("Expansion round did not shrink the instance")
        heads = covered_heads
        tails = outside
        adjacency = {y: adjacency[y] for y in tails}
