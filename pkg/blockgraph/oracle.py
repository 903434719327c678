"""
Brute-force reference answers for small graphs.

Everything here is exhaustive and written separately from the solvers: the
block graph recognizer below does not use the obstruction search or the
block/cut decomposition. Each oracle refuses graphs above its size guard
(ORACLE_MAX_VERTICES_* settings) instead of running for hours.
"""

import logging
from collections import deque
from collections.abc import Iterable
from fractions import Fraction
from itertools import combinations

from .conf import get_setting
from .exceptions import OracleSizeError
from .graphs import MultiGraph, WeightedGraph, is_forest

logger = logging.getLogger(__name__)


def _guard(graph: MultiGraph, setting: str) -> None:
    limit = get_setting(setting)
    if len(graph) > limit:
        raise OracleSizeError(f"Oracle refuses {len(graph)} vertices (limit {limit})")


def _reachable(graph: MultiGraph, source: int, banned: int | None = None) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in graph.adjacency[x]:
            if y != banned and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def recognize_block_graph(graph: MultiGraph) -> bool:
    """
    Definition-level check: simple, and every two non-adjacent vertices of a
    component are separated by removing a single vertex.
    """
    if not graph.is_simple():
        return False
    vertices = sorted(graph.vertices)
    for u, w in combinations(vertices, 2):
        if graph.has_edge(u, w) or w not in _reachable(graph, u):
            continue
        if not any(w not in _reachable(graph, u, banned=x) for x in vertices if x not in (u, w)):
            return False
    return True


def brute_min_bvd(graph: MultiGraph) -> tuple[int, frozenset[int]]:
    """Smallest block vertex deletion set, trying subsets by size then lexicographically."""
    _guard(graph, "ORACLE_MAX_VERTICES_BVD")
    vertices = sorted(graph.vertices)
    for size in range(len(vertices) + 1):
        for chosen in combinations(vertices, size):
            if recognize_block_graph(graph.remove_vertices(chosen)):
                return size, frozenset(chosen)
    raise AssertionError("Deleting every vertex always leaves a block graph")


def brute_bvd_decision(graph: MultiGraph, budget: int) -> frozenset[int] | None:
    """A deletion set of at most `budget` vertices, or None; only sizes up to budget are tried."""
    _guard(graph, "ORACLE_MAX_VERTICES_BVD")
    vertices = sorted(graph.vertices)
    for size in range(min(budget, len(vertices)) + 1):
        for chosen in combinations(vertices, size):
            if recognize_block_graph(graph.remove_vertices(chosen)):
                return frozenset(chosen)
    return None


def _min_weight_fvs(
    weighted: WeightedGraph, candidates: Iterable[int], budget: int
) -> tuple[Fraction, frozenset[int]] | None:
    candidates = sorted(candidates)
    best = None
    for size in range(min(budget, len(candidates)) + 1):
        for chosen in combinations(candidates, size):
            if not is_forest(weighted.graph.remove_vertices(chosen)):
                continue
            key = (weighted.total(chosen), size, chosen)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return best[0], frozenset(best[2])


def brute_min_wfvs(weighted: WeightedGraph, budget: int) -> tuple[Fraction, frozenset[int]] | None:
    """Minimum-weight feedback vertex set with at most `budget` vertices."""
    _guard(weighted.graph, "ORACLE_MAX_VERTICES_WFVS")
    return _min_weight_fvs(weighted, weighted.vertices, budget)


def brute_min_disjoint_wfvs(
    weighted: WeightedGraph, retained: Iterable[int], budget: int
) -> tuple[Fraction, frozenset[int]] | None:
    """Like brute_min_wfvs, but only vertices outside `retained` may be deleted."""
    _guard(weighted.graph, "ORACLE_MAX_VERTICES_WFVS")
    if budget < 0:
        return None
    return _min_weight_fvs(weighted, weighted.vertices - set(retained), budget)


def _induced_paths(graph: MultiGraph, anchors: frozenset[int]) -> set[frozenset[int]]:
    found: set[frozenset[int]] = set()

    def walk(path: list[int]) -> None:
        tail = path[-1]
        for nxt in graph.neighbors(tail):
            if nxt in path or any(graph.has_edge(nxt, p) for p in path[:-1]):
                continue
            if nxt in anchors:
                found.add(frozenset((*path, nxt)))
            else:
                walk([*path, nxt])

    for a in anchors:
        walk([a])
    return found


def brute_max_apaths(graph: MultiGraph, anchors: Iterable[int]) -> int:
    """
    Largest number of pairwise vertex-disjoint A-paths (endpoints included).

    Only induced A-paths are enumerated: any A-path contains the vertex set of
    an induced one, so the maximum is unchanged.
    """
    _guard(graph, "ORACLE_MAX_VERTICES_APATHS")
    anchors = frozenset(anchors) & graph.vertices
    paths = sorted(_induced_paths(graph, anchors), key=lambda p: (len(p), sorted(p)))
    best = 0

    def pack(index: int, used: frozenset[int], count: int) -> None:
        nonlocal best
        best = max(best, count)
        if count + len(anchors - used) // 2 <= best:
            return
        for i in range(index, len(paths)):
            if not paths[i] & used:
                pack(i + 1, used | paths[i], count + 1)

    pack(0, frozenset(), 0)
    logger.debug(f"Oracle A-paths: {best} from {len(paths)} induced paths")
    return best
