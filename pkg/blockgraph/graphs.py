"""
Graph substrate shared by every solver in the package.

This module defines the value types the algorithms work on:
- MultiGraph: finite undirected multigraph with loops and stable integer ids
- WeightedGraph: a MultiGraph paired with exact rational vertex weights
- BlockCutForest: blocks, cut vertices and the block/cut incidence of a graph

and the structural primitives built on them:
    contract_edge(): merge the endpoints of an edge into a fresh vertex
    is_forest(): cycle test where loops and parallel edges count as cycles
    block_cut_forest(): maximal 2-connected components and cut vertices
    true_twin_classes(): partition by closed neighbourhood

Graphs are never mutated after construction; every edit returns a new value.
Vertex ids are never reused: fresh vertices take `next_id`, which only grows.
Connectivity questions are delegated to networkx on the simple underlying graph.
"""

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import networkx as nx

from .exceptions import PreconditionError

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


@dataclass(frozen=True)
class MultiGraph:
    """
    Undirected multigraph with loops.

    `adjacency[u][v]` is the multiplicity of the edge (u, v) and is stored on
    both endpoints; `adjacency[v][v]` counts loops at v. Entries are always
    >= 1 and every key refers to a live vertex.
    """

    adjacency: Mapping[int, Mapping[int, int]]
    next_id: int = field(default=0, compare=False)

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> "MultiGraph":
        """Build a graph; repeated edges add multiplicity, (v, v) adds a loop."""
        adjacency: dict[int, dict[int, int]] = {v: {} for v in vertices}
        for u, v in edges:
            adjacency.setdefault(u, {})
            adjacency.setdefault(v, {})
            adjacency[u][v] = adjacency[u].get(v, 0) + 1
            if u != v:
                adjacency[v][u] = adjacency[v].get(u, 0) + 1
        return cls._from_adjacency(adjacency)

    @classmethod
    def _from_adjacency(
        cls, adjacency: dict[int, dict[int, int]], next_id: int = 0
    ) -> "MultiGraph":
        floor = max(adjacency, default=-1) + 1
        return cls(adjacency=adjacency, next_id=max(next_id, floor))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.adjacency)

    def __len__(self) -> int:
        return len(self.adjacency)

    def __contains__(self, v: int) -> bool:
        return v in self.adjacency

    def neighbors(self, v: int) -> frozenset[int]:
        """Distinct neighbours of v, excluding v itself."""
        return frozenset(u for u in self.adjacency[v] if u != v)

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def multiplicity(self, u: int, v: int) -> int:
        return self.adjacency.get(u, {}).get(v, 0)

    def loops(self, v: int) -> int:
        return self.adjacency[v].get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0

    def degree(self, v: int) -> int:
        """Sum of incident multiplicities; a loop counts twice."""
        row = self.adjacency[v]
        return sum(row.values()) + row.get(v, 0)

    def edges(self) -> list[tuple[int, int, int]]:
        """Every edge once as (u, v, multiplicity) with u <= v, sorted."""
        return sorted(
            (u, v, m) for u, row in self.adjacency.items() for v, m in row.items() if u <= v
        )

    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges())

    def is_simple(self) -> bool:
        return all(m == 1 and u != v for u, v, m in self.edges())

    def _copy(self) -> dict[int, dict[int, int]]:
        return {v: dict(row) for v, row in self.adjacency.items()}

    def subgraph(self, keep: Iterable[int]) -> "MultiGraph":
        """Induced subgraph on `keep` (unknown ids are ignored)."""
        keep = set(keep) & set(self.adjacency)
        adjacency = {
            v: {u: m for u, m in self.adjacency[v].items() if u in keep} for v in keep
        }
        return MultiGraph(adjacency=adjacency, next_id=self.next_id)

    def remove_vertices(self, drop: Iterable[int]) -> "MultiGraph":
        drop = set(drop)
        return self.subgraph(v for v in self.adjacency if v not in drop)

    def add_vertex(self) -> tuple["MultiGraph", int]:
        """Return the graph with one fresh isolated vertex, and its id."""
        fresh = self.next_id
        adjacency = self._copy()
        adjacency[fresh] = {}
        return MultiGraph(adjacency=adjacency, next_id=fresh + 1), fresh

    def add_vertices(self, ids: Iterable[int]) -> "MultiGraph":
        """Add isolated vertices with explicit ids (used when replaying edits)."""
        adjacency = self._copy()
        for v in ids:
            if v in adjacency:
                raise PreconditionError(f"Vertex {v} already present")
            adjacency[v] = {}
        return MultiGraph._from_adjacency(adjacency, self.next_id)

    def add_edges(self, edges: Iterable[Edge]) -> "MultiGraph":
        adjacency = self._copy()
        for u, v in edges:
            if u not in adjacency or v not in adjacency:
                raise PreconditionError(f"Edge ({u}, {v}) has an endpoint outside the graph")
            adjacency[u][v] = adjacency[u].get(v, 0) + 1
            if u != v:
                adjacency[v][u] = adjacency[v].get(u, 0) + 1
        return MultiGraph(adjacency=adjacency, next_id=self.next_id)

    def remove_edges(self, edges: Iterable[Edge]) -> "MultiGraph":
        """Drop every parallel copy of each listed edge."""
        adjacency = self._copy()
        for u, v in edges:
            adjacency.get(u, {}).pop(v, None)
            adjacency.get(v, {}).pop(u, None)
        return MultiGraph(adjacency=adjacency, next_id=self.next_id)

    def cap_multiplicity(self, cap: int) -> "MultiGraph":
        adjacency = {
            v: {u: min(m, cap) for u, m in row.items()} for v, row in self.adjacency.items()
        }
        return MultiGraph(adjacency=adjacency, next_id=self.next_id)

    def to_networkx(self) -> nx.Graph:
        """Simple underlying graph: loops dropped, parallel edges merged."""
        graph = nx.Graph()
        graph.add_nodes_from(self.adjacency)
        graph.add_edges_from((u, v) for u, v, _ in self.edges() if u != v)
        return graph

    def components(self) -> list[frozenset[int]]:
        """Connected components, ordered by smallest vertex id."""
        parts = (frozenset(c) for c in nx.connected_components(self.to_networkx()))
        return sorted(parts, key=min)


@dataclass(frozen=True)
class WeightedGraph:
    """A MultiGraph with one exact rational weight per vertex."""

    graph: MultiGraph
    weight: Mapping[int, Fraction]

    def __post_init__(self):
        if set(self.weight) != set(self.graph.adjacency):
            raise PreconditionError("Every vertex needs exactly one weight")
        exact = {}
        for v, w in self.weight.items():
            if isinstance(w, float) or not isinstance(w, (int, Fraction)):
                raise PreconditionError(f"Weight of vertex {v} must be an exact rational")
            exact[v] = Fraction(w)
        object.__setattr__(self, "weight", exact)

    @classmethod
    def uniform(cls, graph: MultiGraph, value: int | Fraction = 1) -> "WeightedGraph":
        return cls(graph=graph, weight={v: Fraction(value) for v in graph.vertices})

    @property
    def vertices(self) -> frozenset[int]:
        return self.graph.vertices

    def total(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.weight[v] for v in vertices), Fraction(0))

    def subgraph(self, keep: Iterable[int]) -> "WeightedGraph":
        graph = self.graph.subgraph(keep)
        return WeightedGraph(graph=graph, weight={v: self.weight[v] for v in graph.vertices})

    def remove_vertices(self, drop: Iterable[int]) -> "WeightedGraph":
        drop = set(drop)
        return self.subgraph(v for v in self.graph.vertices if v not in drop)

    def with_graph(self, graph: MultiGraph, extra: Mapping[int, Fraction] | None = None):
        """Same weights on a derived graph; `extra` covers its new vertices."""
        merged = {**self.weight, **(extra or {})}
        return WeightedGraph(graph=graph, weight={v: merged[v] for v in graph.vertices})


@dataclass(frozen=True)
class Contraction:
    """Result of contract_edge: the new graph and where the endpoints went."""

    graph: MultiGraph
    merged: int
    provenance: Mapping[int, tuple[int, int]]


def contract_edge(graph: MultiGraph, u: int, v: int) -> Contraction:
    """
    Contract the edge (u, v) into a fresh vertex.

    Edges from a common neighbour to both endpoints become a parallel pair at
    the merged vertex, so |E| drops by exactly one per contracted copy of
    (u, v); further parallel copies of (u, v) survive as loops.

    Raises:
        PreconditionError: if u == v, the edge is absent, or either end has a loop
    """
    if u == v:
        raise PreconditionError("Cannot contract a loop")
    if not graph.has_edge(u, v):
        raise PreconditionError(f"({u}, {v}) is not an edge")
    if graph.loops(u) or graph.loops(v):
        raise PreconditionError(f"Cannot contract ({u}, {v}): an endpoint carries a loop")

    merged = graph.next_id
    adjacency = {
        x: {y: m for y, m in row.items() if y not in (u, v)}
        for x, row in graph.adjacency.items()
        if x not in (u, v)
    }
    row: dict[int, int] = {}
    for end in (u, v):
        for x, m in graph.adjacency[end].items():
            if x in (u, v):
                continue
            row[x] = row.get(x, 0) + m
            adjacency[x][merged] = adjacency[x].get(merged, 0) + m
    extra_loops = graph.multiplicity(u, v) - 1
    if extra_loops:
        row[merged] = extra_loops
    adjacency[merged] = row
    return Contraction(
        graph=MultiGraph(adjacency=adjacency, next_id=merged + 1),
        merged=merged,
        provenance={merged: (u, v)},
    )


def is_forest(graph: MultiGraph) -> bool:
    """True iff the graph has no cycle; loops and parallel edges are cycles."""
    if any(u == v or m > 1 for u, v, m in graph.edges()):
        return False
    if not len(graph):
        return True
    simple = graph.to_networkx()
    return simple.number_of_edges() == len(graph) - nx.number_connected_components(simple)


class BlockKind(Enum):
    LEAF = "leaf"
    DEGREE_TWO = "degree-two"
    HIGHER = "higher"


@dataclass(frozen=True)
class BlockCutForest:
    """
    Block decomposition of the simple underlying graph.

    Attributes:
        blocks: maximal 2-connected vertex sets (bridges are 2-vertex blocks)
        cut_vertices: vertices lying in two or more blocks
        incidence: (cut vertex, block index) pairs
        kinds: per block, by its number of cut vertices (<= 1, 2, >= 3)
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    incidence: tuple[tuple[int, int], ...]
    kinds: tuple[BlockKind, ...]

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, block in enumerate(self.blocks) if v in block]

    def internal_vertices(self, index: int) -> frozenset[int]:
        return self.blocks[index] - self.cut_vertices


def block_cut_forest(graph: MultiGraph) -> BlockCutForest:
    """Blocks and cut vertices via networkx's linear-time decomposition."""
    simple = graph.to_networkx()
    blocks = tuple(
        sorted((frozenset(b) for b in nx.biconnected_components(simple)), key=sorted)
    )
    cut_vertices = frozenset(nx.articulation_points(simple))
    incidence = tuple(
        (v, i) for i, block in enumerate(blocks) for v in sorted(block & cut_vertices)
    )
    kinds = []
    for block in blocks:
        cuts = len(block & cut_vertices)
        if cuts <= 1:
            kinds.append(BlockKind.LEAF)
        elif cuts == 2:
            kinds.append(BlockKind.DEGREE_TWO)
        else:
            kinds.append(BlockKind.HIGHER)
    return BlockCutForest(
        blocks=blocks, cut_vertices=cut_vertices, incidence=incidence, kinds=tuple(kinds)
    )


def true_twin_classes(graph: MultiGraph) -> list[frozenset[int]]:
    """
    Partition the vertices by closed neighbourhood N[v].

    Two vertices share a class iff they are adjacent and agree on every other
    neighbour. Loops are ignored.

    Raises:
        PreconditionError: if some pair of distinct vertices has a parallel edge
    """
    if any(u != v and m > 1 for u, v, m in graph.edges()):
        raise PreconditionError("True twins are defined on simple graphs only")
    classes: dict[frozenset[int], set[int]] = {}
    for v in graph.vertices:
        classes.setdefault(graph.closed_neighborhood(v), set()).add(v)
    return sorted((frozenset(c) for c in classes.values()), key=min)
