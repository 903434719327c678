"""
Data models shared by the solvers, the kernel and the command line.

This module defines the dataclasses that travel between modules:
- Obstruction / ObstructionKind: witnesses that a graph is not a block graph
- APathPacking: vertex-disjoint A-paths plus an optional covering set
- DisjointInstance / Measure / SolverStats: state of the disjoint WFVS solver
- ParityPair / ParityInstance: the graphic matroid parity base case
- CliqueIncidenceGraph: the bipartite vertex/maximal-clique graph
- StructureResult: three-way outcome of the per-vertex structure finder
- TraceStep / ReductionTrace / KernelState / KernelResult: kernelization
- ResultRecord: JSON record emitted by every command

Value objects are frozen; SolverStats is the one deliberately mutable
accumulator and is owned by a single solver call.
"""

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exceptions import PreconditionError
from .graphs import Edge, MultiGraph, WeightedGraph, is_forest


class ObstructionKind(Enum):
    DIAMOND = "diamond"
    HOLE = "hole"


@dataclass(frozen=True)
class Obstruction:
    """
    A diamond (K4 minus an edge) or a hole (chordless cycle of length >= 4).

    For holes `vertices` is the cyclic order; for diamonds the two
    degree-3 vertices come first.
    """

    kind: ObstructionKind
    vertices: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class APathPacking:
    """Pairwise vertex-disjoint A-paths, optionally with a set meeting every A-path."""

    anchors: frozenset[int]
    paths: tuple[tuple[int, ...], ...]
    cover: frozenset[int] | None = None
    exact: bool = False

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class Measure:
    """mu = k + rho - (eta + tau) for a disjoint WFVS instance."""

    budget: int
    components: int
    nice: int
    tents: int

    @property
    def value(self) -> int:
        return self.budget + self.components - (self.nice + self.tents)


@dataclass(frozen=True)
class DisjointInstance:
    """
    (G, w, R, k) for disjoint WFVS plus the solution forced so far.

    `retained` must be a feedback vertex set of the graph; the solution
    vertices are already deleted from the graph and never overlap R.
    """

    graph: WeightedGraph
    retained: frozenset[int]
    budget: int
    solution: frozenset[int] = frozenset()
    solution_weight: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.retained <= self.graph.vertices:
            raise PreconditionError("Retained set must be a subset of the vertices")
        if not is_forest(self.graph.graph.remove_vertices(self.retained)):
            raise PreconditionError("Retained set is not a feedback vertex set")
        if self.solution & (self.retained | self.graph.vertices):
            raise PreconditionError("Accumulated solution overlaps the live graph")

    @property
    def free(self) -> frozenset[int]:
        return self.graph.vertices - self.retained


@dataclass
class SolverStats:
    """Counters for one solver run; `pruned` keeps mu < 0 instances when requested."""

    nodes: int = 0
    leaves: int = 0
    measure_prunes: int = 0
    parity_calls: int = 0
    parity_nodes: int = 0
    compression_steps: int = 0
    max_call_leaves: int = 0
    rule_firings: Counter = field(default_factory=Counter)
    pruned: list | None = None

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "measure_prunes": self.measure_prunes,
            "parity_calls": self.parity_calls,
            "parity_nodes": self.parity_nodes,
            "compression_steps": self.compression_steps,
            "max_call_leaves": self.max_call_leaves,
            "rule_firings": {str(k): v for k, v in sorted(self.rule_firings.items())},
        }


@dataclass(frozen=True)
class ParityPair:
    """The two non-contracted edges of one solver-side vertex, in the contracted graph."""

    vertex: int
    edges: tuple[Edge, Edge]
    weight: Fraction


@dataclass(frozen=True)
class ParityInstance:
    """
    Weighted graphic matroid parity instance built from a base-case instance.

    Attributes:
        host: the contracted graph H; its edges are exactly the pair edges
        pairs: one pair per solver-side vertex; `pairs[i].vertex` is the back map
        free_weight: w(V(G)) - w(R), the weight of all solver-side vertices
    """

    host: MultiGraph
    pairs: tuple[ParityPair, ...]
    free_weight: Fraction

    def pair_weight(self, chosen) -> Fraction:
        return sum((self.pairs[i].weight for i in chosen), Fraction(0))


@dataclass(frozen=True)
class CliqueIncidenceGraph:
    """
    Bipartite graph on V(G) and one vertex per maximal clique.

    `origin` maps each clique vertex to its clique; weights are 1 on V(G) and
    n^4 on clique vertices.
    """

    weighted: WeightedGraph
    graph_vertices: frozenset[int]
    origin: Mapping[int, frozenset[int]]

    @property
    def clique_vertices(self) -> frozenset[int]:
        return frozenset(self.origin)


class StructureKind(Enum):
    DISJOINT_PACK = "disjoint-pack"
    FLOWER = "flower"
    HITTING_SET = "hitting-set"


@dataclass(frozen=True)
class StructureResult:
    kind: StructureKind
    anchor: int
    obstructions: tuple[Obstruction, ...] = ()
    hitting_set: frozenset[int] | None = None


class Verdict(Enum):
    REDUCED = "reduced"
    TRIVIAL_NO = "trivial-no"
    TRIVIAL_YES = "trivial-yes"


@dataclass(frozen=True)
class TraceStep:
    """One rule application recorded as a plain graph edit."""

    rule: int
    budget_before: int
    budget_after: int
    removed_vertices: tuple[int, ...] = ()
    removed_edges: tuple[Edge, ...] = ()
    added_vertices: tuple[int, ...] = ()
    added_edges: tuple[Edge, ...] = ()
    witness: tuple[int, ...] = ()

    def as_line(self) -> str:
        removed = [*self.removed_vertices, *(list(e) for e in self.removed_edges)]
        added = [*self.added_vertices, *(list(e) for e in self.added_edges)]
        return (
            f"RULE {self.rule} k={self.budget_after} removed={removed} "
            f"added={added} witness={list(self.witness)}"
        )

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "k_before": self.budget_before,
            "k_after": self.budget_after,
            "removed_vertices": list(self.removed_vertices),
            "removed_edges": [list(e) for e in self.removed_edges],
            "added_vertices": list(self.added_vertices),
            "added_edges": [list(e) for e in self.added_edges],
            "witness": list(self.witness),
        }


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[TraceStep, ...] = ()
    verdict: Verdict = Verdict.REDUCED

    def append(self, step: TraceStep) -> "ReductionTrace":
        return ReductionTrace(steps=(*self.steps, step), verdict=self.verdict)

    def finish(self, verdict: Verdict) -> "ReductionTrace":
        return ReductionTrace(steps=self.steps, verdict=verdict)

    def lines(self) -> list[str]:
        return [step.as_line() for step in self.steps] + [f"VERDICT {self.verdict.value}"]

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "steps": [s.as_dict() for s in self.steps]}


@dataclass(frozen=True)
class KernelState:
    """
    Current (G, k) with the approximate solution A and lazily filled caches.

    The caches belong to this exact graph; any rule application builds a new
    state, so stale S_v / S'_v sets are never reused.
    """

    graph: MultiGraph
    budget: int
    approximate: frozenset[int] | None = None
    trace: ReductionTrace = ReductionTrace()
    structures: dict = field(default_factory=dict, compare=False, repr=False)
    hitting_sets: dict = field(default_factory=dict, compare=False, repr=False)

    def evolve(self, graph: MultiGraph, budget: int, step: TraceStep) -> "KernelState":
        return KernelState(graph=graph, budget=budget, trace=self.trace.append(step))


@dataclass(frozen=True)
class KernelResult:
    graph: MultiGraph
    budget: int
    trace: ReductionTrace
    statistics: dict

    @property
    def verdict(self) -> Verdict:
        return self.trace.verdict


@dataclass
class ResultRecord:
    """JSON record for one command invocation."""

    instance: str
    command: str
    parameters: dict
    verdict: str
    witness: list[int]
    certified: bool
    statistics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "instance": self.instance,
            "command": self.command,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "witness": self.witness,
            "certified": self.certified,
            "statistics": self.statistics,
        }
