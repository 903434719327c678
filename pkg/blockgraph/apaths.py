"""
Packing and covering A-paths.

An A-path has at least one edge, both ends in A and every internal vertex
outside A. Packings are pairwise vertex-disjoint, endpoints included.

Below APATH_EXACT_THRESHOLD vertices the packing is maximum (branch and
bound over induced A-paths, seeded with the greedy packing); above it the
greedy shortest-path packing is returned, which is maximal.
"""

import logging
from collections import deque
from collections.abc import Iterable, Iterator

from .conf import get_setting
from .graphs import MultiGraph
from .models import APathPacking

logger = logging.getLogger(__name__)

Adjacency = dict[int, set[int]]
Path = tuple[int, ...]


def _shortest_apath(adjacency: Adjacency, anchors: set[int], used: set[int]) -> Path | None:
    best: Path | None = None
    for a in sorted(anchors - used):
        direct = sorted(b for b in adjacency[a] & anchors if b != a and b not in used)
        if direct:
            return (a, direct[0])
        parent = {a: None}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in sorted(adjacency[x]):
                if y in used or y in parent:
                    continue
                if y in anchors:
                    if x != a:
                        path = [y, x]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        candidate = tuple(reversed(path))
                        if best is None or len(candidate) < len(best):
                            best = candidate
                    continue
                parent[y] = x
                queue.append(y)
    return best


def _greedy(adjacency: Adjacency, anchors: set[int]) -> list[Path]:
    used: set[int] = set()
    paths: list[Path] = []
    while (path := _shortest_apath(adjacency, anchors, used)) is not None:
        paths.append(path)
        used.update(path)
    return paths


def _induced_apaths(
    adjacency: Adjacency, anchors: set[int], start: int, targets: set[int], used: set[int]
) -> Iterator[Path]:
    """Induced A-paths from `start` to a vertex of `targets`, avoiding `used`."""
    for b in sorted(adjacency[start] & targets):
        yield (start, b)

    def extend(path: list[int]) -> Iterator[Path]:
        last = path[-1]
        for y in sorted(adjacency[last]):
            if y in used or y in path:
                continue
            earlier = adjacency[y] & set(path[:-1])
            if earlier:
                continue
            if y in anchors:
                if y in targets and len(path) > 1:
                    yield (*path, y)
                continue
            yield from extend([*path, y])

    for first in sorted(adjacency[start] - anchors - used):
        yield from extend([start, first])


def _maximum(adjacency: Adjacency, anchors: set[int], seed: list[Path]) -> list[Path]:
    best = list(seed)

    def search(left: tuple[int, ...], used: set[int], chosen: list[Path]) -> None:
        nonlocal best
        if len(chosen) + len(left) // 2 <= len(best):
            return
        if not left:
            best = list(chosen)
            return
        a, rest = left[0], left[1:]
        for path in _induced_apaths(adjacency, anchors, a, set(rest), used):
            end = path[-1]
            search(
                tuple(x for x in rest if x != end),
                used | set(path),
                [*chosen, path],
            )
        search(rest, used, chosen)

    search(tuple(sorted(anchors)), set(), [])
    return best


def has_apath(adjacency: Adjacency, anchors: set[int], removed: set[int]) -> bool:
    """Whether any A-path survives the removal of `removed`."""
    live = anchors - removed
    for a in live:
        if adjacency[a] & live - {a}:
            return True
    seen: set[int] = set()
    for v in adjacency:
        if v in seen or v in removed or v in anchors:
            continue
        touched: set[int] = set()
        queue = deque([v])
        seen.add(v)
        while queue:
            x = queue.popleft()
            for y in adjacency[x]:
                if y in removed:
                    continue
                if y in anchors:
                    touched.add(y)
                elif y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(touched) >= 2:
            return True
    return False


def _cover(adjacency: Adjacency, anchors: set[int], maximal: list[Path]) -> frozenset[int]:
    cover = {v for path in maximal for v in path}
    for v in sorted(cover):
        if not has_apath(adjacency, anchors, cover - {v}):
            cover.discard(v)
    return frozenset(cover)


def apath_packing(
    graph: MultiGraph, anchors: Iterable[int], need: int | None = None
) -> APathPacking:
    """
    Pack vertex-disjoint A-paths, with a covering set when the packing is short.

    Args:
        graph: host graph; multiplicities and loops are irrelevant to A-paths
        anchors: the set A, a subset of the vertices
        need: the caller's target; a cover is attached when fewer paths were
            found, or always when need is None

    Returns:
        APathPacking whose `exact` flag says whether the size is the maximum
    """
    anchor_set = set(anchors) & set(graph.vertices)
    adjacency = {v: set(graph.neighbors(v)) for v in graph.vertices}
    greedy = _greedy(adjacency, anchor_set)
    exact = len(graph) < get_setting("APATH_EXACT_THRESHOLD")
    paths = _maximum(adjacency, anchor_set, greedy) if exact else greedy
    cover = None
    if need is None or len(paths) < need:
        cover = _cover(adjacency, anchor_set, greedy)
    logger.debug(f"A-path packing: {len(paths)} paths over {len(anchor_set)} anchors")
    return APathPacking(
        anchors=frozenset(anchor_set), paths=tuple(paths), cover=cover, exact=exact
    )
