"""
Block graph recognition and obstruction search.

A block graph is a chordal graph without an induced diamond, so a graph is
a block graph iff it contains no obstruction: a diamond (K4 minus an edge)
or a hole (chordless cycle on four or more vertices).

Key Functions:
    is_block_graph(): every block of the block/cut forest is a clique
    find_obstruction(): smallest obstruction, optionally through an anchor
    find_small_obstruction(): a diamond or a 4-hole, the branching trigger
    maximal_cliques_c4d4_free(): maximal cliques of a {C4, D4}-free graph
    pack_disjoint_obstructions(): greedy free / flower / small-only packings
    verify_obstruction(): induced-subgraph check of a witness

Searches run on the simple graph; callers with parallel edges or loops get a
PreconditionError instead of a silently simplified answer.
"""

import logging
from enum import Enum
from itertools import combinations

import networkx as nx

from .exceptions import PreconditionError
from .graphs import MultiGraph, block_cut_forest
from .models import Obstruction, ObstructionKind

logger = logging.getLogger(__name__)

Adjacency = dict[int, set[int]]


class PackingMode(Enum):
    FREE = "free"
    FLOWER = "flower"
    SMALL_ONLY = "small-only"


def _simple_adjacency(graph: MultiGraph) -> Adjacency:
    if not graph.is_simple():
        raise PreconditionError("Obstruction search needs a simple graph")
    return {v: set(graph.neighbors(v)) for v in graph.vertices}


def _restrict(adjacency: Adjacency, drop: set[int]) -> Adjacency:
    return {v: nbrs - drop for v, nbrs in adjacency.items() if v not in drop}


def is_block_graph(graph: MultiGraph) -> bool:
    """True iff the graph is simple and every block induces a complete graph."""
    if not graph.is_simple():
        return False
    for block in block_cut_forest(graph).blocks:
        size = len(block)
        inside = sum(len(graph.neighbors(v) & block) for v in block) // 2
        if inside != size * (size - 1) // 2:
            return False
    return True


def verify_obstruction(graph: MultiGraph, obstruction: Obstruction) -> bool:
    """Check that the witness induces exactly a diamond or a chordless cycle in `graph`."""
    vertices = obstruction.vertices
    if len(set(vertices)) != len(vertices) or not all(v in graph for v in vertices):
        return False
    if not graph.subgraph(vertices).is_simple():
        return False
    induced = {frozenset((u, v)) for u, v in combinations(vertices, 2) if graph.has_edge(u, v)}
    if obstruction.kind is ObstructionKind.DIAMOND:
        return len(vertices) == 4 and len(induced) == 5
    size = len(vertices)
    ring = {frozenset((vertices[i], vertices[(i + 1) % size])) for i in range(size)}
    return len(vertices) >= 4 and induced == ring


def _diamond(adjacency: Adjacency, anchor: int | None = None) -> Obstruction | None:
    """First diamond in edge order; with an anchor, only diamonds containing it."""
    if anchor is None:
        edges = sorted((u, v) for u in adjacency for v in adjacency[u] if u < v)
        for u, v in edges:
            common = sorted(adjacency[u] & adjacency[v])
            for a, b in combinations(common, 2):
                if b not in adjacency[a]:
                    return Obstruction(ObstructionKind.DIAMOND, (u, v, a, b))
        return None

    around = adjacency[anchor]
    # anchor as a degree-3 vertex of the diamond
    for x in sorted(around):
        common = sorted(around & adjacency[x])
        for a, b in combinations(common, 2):
            if b not in adjacency[a]:
                return Obstruction(ObstructionKind.DIAMOND, (anchor, x, a, b))
    # anchor as a degree-2 vertex
    for u, v in combinations(sorted(around), 2):
        if v not in adjacency[u]:
            continue
        far = sorted((adjacency[u] & adjacency[v]) - around - {anchor})
        if far:
            return Obstruction(ObstructionKind.DIAMOND, (u, v, anchor, far[0]))
    return None


def _four_hole(adjacency: Adjacency) -> Obstruction | None:
    for x, y in combinations(sorted(adjacency), 2):
        if y in adjacency[x]:
            continue
        common = sorted(adjacency[x] & adjacency[y])
        for a, b in combinations(common, 2):
            if b not in adjacency[a]:
                return Obstruction(ObstructionKind.HOLE, (x, a, y, b))
    return None


def _shortest_hole_through(adjacency: Adjacency, anchor: int) -> Obstruction | None:
    """
    Shortest hole containing `anchor`.

    For non-adjacent neighbours x, y of the anchor, a shortest x-y path that
    avoids the rest of N[anchor] closes a chordless cycle with the anchor;
    every hole through the anchor arises this way.
    """
    around = adjacency[anchor]
    best: tuple[int, ...] | None = None
    for x, y in combinations(sorted(around), 2):
        if y in adjacency[x]:
            continue
        blocked = (around | {anchor}) - {x, y}
        kept = [v for v in adjacency if v not in blocked]
        graph = nx.Graph()
        graph.add_nodes_from(kept)
        graph.add_edges_from(
            (u, v) for u in kept for v in adjacency[u] if v not in blocked and u < v
        )
        try:
            path = nx.shortest_path(graph, x, y)
        except nx.NetworkXNoPath:
            continue
        cycle = (anchor, *path)
        if best is None or (len(cycle), cycle) < (len(best), best):
            best = cycle
    if best is None:
        return None
    return Obstruction(ObstructionKind.HOLE, best)


def _shortest_hole(adjacency: Adjacency) -> Obstruction | None:
    graph = nx.Graph()
    graph.add_nodes_from(adjacency)
    graph.add_edges_from((u, v) for u in adjacency for v in adjacency[u] if u < v)
    if nx.is_chordal(graph):
        return None
    best = None
    for v in sorted(adjacency):
        hole = _shortest_hole_through(adjacency, v)
        if hole and (best is None or len(hole) < len(best)):
            best = hole
            if len(best) == 4:
                break
    return best


def _smallest(adjacency: Adjacency, anchor: int | None = None) -> Obstruction | None:
    if anchor is not None:
        return _diamond(adjacency, anchor) or _shortest_hole_through(adjacency, anchor)
    return _diamond(adjacency) or _four_hole(adjacency) or _shortest_hole(adjacency)


def find_obstruction(graph: MultiGraph, anchor: int | None = None) -> Obstruction | None:
    """
    Return a smallest obstruction, or None when there is none.

    Without an anchor the result is None iff the graph is a block graph. With
    an anchor, only obstructions containing that vertex are considered.
    Diamonds are preferred over holes and shorter holes over longer ones.
    """
    adjacency = _simple_adjacency(graph)
    if anchor is not None and anchor not in adjacency:
        raise PreconditionError(f"Anchor {anchor} is not a vertex")
    return _smallest(adjacency, anchor)


def find_small_obstruction(graph: MultiGraph) -> Obstruction | None:
    """A diamond or an induced C4 if one exists; longer holes are ignored."""
    adjacency = _simple_adjacency(graph)
    return _diamond(adjacency) or _four_hole(adjacency)


def maximal_cliques_c4d4_free(graph: MultiGraph) -> list[frozenset[int]]:
    """
    Maximal cliques of a graph without induced C4 and diamond.

    Each edge lies in exactly one maximal clique: the edge plus its common
    neighbours. Isolated vertices are their own (singleton) cliques.

    Raises:
        PreconditionError: if a produced set is not a clique or two cliques share
            two vertices, which means the graph had a diamond after all
    """
    adjacency = _simple_adjacency(graph)
    cliques: set[frozenset[int]] = {frozenset((v,)) for v, nbrs in adjacency.items() if not nbrs}
    for u in adjacency:
        for v in adjacency[u]:
            if u < v:
                cliques.add(frozenset({u, v} | (adjacency[u] & adjacency[v])))
    ordered = sorted(cliques, key=sorted)
    for clique in ordered:
        for a, b in combinations(clique, 2):
            if b not in adjacency[a]:
                raise PreconditionError(
                    f"Edge set {sorted(clique)} is not a clique; graph has a diamond"
                )
    for first, second in combinations(ordered, 2):
        if len(first & second) >= 2:
            raise PreconditionError(
                f"Cliques {sorted(first)} and {sorted(second)} share two vertices"
            )
    return ordered


def pack_disjoint_obstructions(
    graph: MultiGraph,
    limit: int | None = None,
    mode: PackingMode = PackingMode.FREE,
    anchor: int | None = None,
) -> list[Obstruction]:
    """
    Greedily pack obstructions, always taking a smallest one available.

    In FREE and SMALL_ONLY modes the result is pairwise vertex-disjoint. In
    FLOWER mode every obstruction contains `anchor` and they pairwise meet
    exactly in it. The packing is maximal for this order, not maximum.
    """
    if mode is PackingMode.FLOWER and (anchor is None or anchor not in graph):
        raise PreconditionError("Flower packing needs an anchor vertex of the graph")
    adjacency = _simple_adjacency(graph)
    packing: list[Obstruction] = []
    while limit is None or len(packing) < limit:
        if mode is PackingMode.SMALL_ONLY:
            found = _diamond(adjacency) or _four_hole(adjacency)
        elif mode is PackingMode.FLOWER:
            found = _smallest(adjacency, anchor)
        else:
            found = _smallest(adjacency)
        if found is None:
            break
        packing.append(found)
        used = found.vertex_set - ({anchor} if mode is PackingMode.FLOWER else set())
        adjacency = _restrict(adjacency, used)
    logger.debug(f"Packed {len(packing)} obstructions in {mode.value} mode")
    return packing
