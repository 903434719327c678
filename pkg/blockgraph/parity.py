"""
Weighted graphic matroid parity base case of the disjoint WFVS solver.

When every solver-side vertex is nice (degree 2, both neighbours retained)
or a tent (degree 3, all neighbours retained), contracting the forest made of
G[R] plus one chosen edge per tent leaves a graph H whose edges are exactly
the remaining two edges of each solver-side vertex. A set of those pairs is
acyclic in H iff keeping the corresponding vertices leaves G a forest, so a
maximum-weight independent pair set is the complement of a minimum-weight
feedback vertex set.

The pair search is a branch and bound that leaves out at most k pairs, so it
visits O(p^(k+1)) nodes for p pairs and is linear in p at k = 0. The
measure bound keeps p at most k + rho(R) whenever the base case is reached.
"""

import logging
from collections.abc import Iterable
from fractions import Fraction
from math import comb

from .exceptions import InvariantViolation, PreconditionError
from .graphs import MultiGraph, contract_edge, is_forest
from .models import DisjointInstance, ParityInstance, ParityPair, SolverStats

logger = logging.getLogger(__name__)


def is_nice(graph: MultiGraph, retained: frozenset[int], v: int) -> bool:
    return graph.degree(v) == 2 and not graph.loops(v) and graph.neighbors(v) <= retained


def is_tent(graph: MultiGraph, retained: frozenset[int], v: int) -> bool:
    return graph.degree(v) == 3 and not graph.loops(v) and graph.neighbors(v) <= retained


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Join the classes of a and b; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _incident(graph: MultiGraph, v: int) -> list[int]:
    """Neighbours of v repeated by multiplicity, sorted."""
    return sorted(u for u, m in graph.adjacency[v].items() for _ in range(m))


def build_parity_instance(inst: DisjointInstance) -> ParityInstance:
    """
    Label the pair edges, contract the forest F and collect the weighted pairs.

    Raises:
        PreconditionError: if a solver-side vertex is neither nice nor a tent,
            or G[R] is not a forest
        InvariantViolation: if F has a cycle or a contraction would merge a
            parallel edge or a loop
    """
    graph = inst.graph.graph
    retained = inst.retained
    if not is_forest(graph.subgraph(retained)):
        raise PreconditionError("G[R] must be a forest")

    forest_edges = [(u, v) for u, v, m in graph.subgraph(retained).edges() for _ in range(m)]
    pair_ends: dict[int, tuple[int, int]] = {}
    acyclic = _UnionFind()
    for u, v in forest_edges:
        acyclic.union(u, v)
    for v in sorted(inst.free):
        ends = _incident(graph, v)
        if is_nice(graph, retained, v):
            pair_ends[v] = (ends[0], ends[1])
        elif is_tent(graph, retained, v):
            for i, r in enumerate(ends):
                if acyclic.union(v, r):
                    forest_edges.append((v, r))
                    rest = ends[:i] + ends[i + 1 :]
                    pair_ends[v] = (rest[0], rest[1])
                    break
            else:
                raise InvariantViolation(f"No acyclic anchor edge for tent {v}")
        else:
            raise PreconditionError(f"Vertex {v} is neither nice nor a tent")

    alias: dict[int, int] = {}

    def resolve(x: int) -> int:
        while x in alias:
            x = alias[x]
        return x

    host = graph
    for u, v in forest_edges:
        cu, cv = resolve(u), resolve(v)
        if cu == cv:
            raise InvariantViolation(f"Forest edge ({u}, {v}) closes a cycle")
        if host.multiplicity(cu, cv) != 1 or host.loops(cu) or host.loops(cv):
            raise InvariantViolation(
                f"Contraction of ({u}, {v}) would merge a multiple edge or loop"
            )
        contraction = contract_edge(host, cu, cv)
        host = contraction.graph
        alias[cu] = alias[cv] = contraction.merged

    pairs = tuple(
        ParityPair(
            vertex=v,
            edges=((resolve(v), resolve(a)), (resolve(v), resolve(b))),
            weight=inst.graph.weight[v],
        )
        for v, (a, b) in sorted(pair_ends.items())
    )
    if host.edge_count() != 2 * len(pairs):
        raise InvariantViolation("Contracted graph has edges outside the pairs")
    return ParityInstance(host=host, pairs=pairs, free_weight=inst.graph.total(inst.free))


def is_independent(pi: ParityInstance, chosen: Iterable[int]) -> bool:
    """Whether the union of the chosen pairs is acyclic in the contracted graph."""
    forest = _UnionFind()
    for i in chosen:
        for a, b in pi.pairs[i].edges:
            if not forest.union(a, b):
                return False
    return True


def parity_node_bound(pairs: int, max_dropped: int) -> int:
    """Most search nodes solve_parity visits: (p + 1) * sum of C(p, j) for j <= max_dropped."""
    return (pairs + 1) * sum(comb(pairs, j) for j in range(max(0, min(max_dropped, pairs)) + 1))


def solve_parity(
    pi: ParityInstance, min_pairs: int = 0, stats: SolverStats | None = None
) -> tuple[int, ...] | None:
    """
    Maximum-weight independent pair set with at least `min_pairs` pairs.

    Ties prefer more pairs (a smaller deletion set), then the deletion set
    that is lexicographically smallest. Returns None if no independent set
    reaches `min_pairs`.

    Branch and bound: a pair is left out only while fewer than
    count - min_pairs pairs are out, and a branch stops once the pairs still
    open cannot lift it to the best weight found.
    """
    count = len(pi.pairs)
    max_dropped = count - min_pairs
    if max_dropped < 0:
        return None
    open_weight = [Fraction(0)] * (count + 1)
    for i in reversed(range(count)):
        open_weight[i] = open_weight[i + 1] + pi.pairs[i].weight
    best: tuple | None = None
    best_chosen: tuple[int, ...] | None = None

    def key(chosen: list[int]):
        dropped = tuple(sorted(pi.pairs[i].vertex for i in range(count) if i not in chosen))
        return (-pi.pair_weight(chosen), -len(chosen), dropped)

    def search(index: int, chosen: list[int], forest: dict[int, int], weight: Fraction) -> None:
        nonlocal best, best_chosen
        if stats is not None:
            stats.parity_nodes += 1
        if best is not None and weight + open_weight[index] < -best[0]:
            return
        if index == count:
            candidate = key(chosen)
            if best is None or candidate < best:
                best, best_chosen = candidate, tuple(chosen)
            return
        uf = _UnionFind()
        uf.parent = dict(forest)
        if all(uf.union(a, b) for a, b in pi.pairs[index].edges):
            search(index + 1, [*chosen, index], uf.parent, weight + pi.pairs[index].weight)
        if index - len(chosen) < max_dropped:
            search(index + 1, chosen, forest, weight)

    search(0, [], {}, Fraction(0))
    return best_chosen


def lift_solution(pi: ParityInstance, chosen: Iterable[int]) -> tuple[frozenset[int], Fraction]:
    """
    Turn an independent pair set into the deletion set of the kept vertices' complement.

    Raises:
        PreconditionError: if the chosen pairs are not independent
        InvariantViolation: if the weight identity fails
    """
    chosen = tuple(chosen)
    if not is_independent(pi, chosen):
        raise PreconditionError("Chosen pairs are not independent")
    kept = {pi.pairs[i].vertex for i in chosen}
    dropped = frozenset(p.vertex for p in pi.pairs) - kept
    weight = pi.free_weight - pi.pair_weight(chosen)
    if weight != sum((p.weight for p in pi.pairs if p.vertex in dropped), Fraction(0)):
        raise InvariantViolation("Lifted weight differs from the deleted vertices' weight")
    return dropped, weight
