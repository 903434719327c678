"""
Seeded instance generators.

Profiles:
    random-gnp: G(n, p)
    planted-bgvd: random block graph plus k noise vertices (OPT <= k)
    flower: C4 petals sharing one centre vertex
    disjoint-c4: t vertex-disjoint C4s
    random-wfvs: weighted multigraph for the WFVS solver

Every generator takes an explicit seed and draws from its own
random.Random, so the same arguments always give the same graph.
"""

import random
from fractions import Fraction
from itertools import combinations

from .exceptions import PreconditionError
from .graphs import MultiGraph, WeightedGraph

PROFILES = ("random-gnp", "planted-bgvd", "flower", "disjoint-c4", "random-wfvs")


def path_graph(n: int) -> MultiGraph:
    return MultiGraph.from_edges(((i, i + 1) for i in range(n - 1)), vertices=range(n))


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise PreconditionError("A simple cycle needs at least 3 vertices")
    return MultiGraph.from_edges(((i, (i + 1) % n) for i in range(n)), vertices=range(n))


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph.from_edges(combinations(range(n), 2), vertices=range(n))


def diamond() -> MultiGraph:
    """K4 minus the edge (2, 3); vertices 0 and 1 have degree 3."""
    return MultiGraph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def bowtie() -> MultiGraph:
    """Two triangles sharing vertex 0."""
    return MultiGraph.from_edges([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def disjoint_union(*graphs: MultiGraph) -> MultiGraph:
    """Union with the vertices of each graph shifted past the previous ones."""
    edges, vertices, offset = [], [], 0
    for graph in graphs:
        shift = {v: offset + i for i, v in enumerate(sorted(graph.vertices))}
        vertices.extend(shift.values())
        edges.extend((shift[u], shift[v]) for u, v, m in graph.edges() for _ in range(m))
        offset += len(graph)
    return MultiGraph.from_edges(edges, vertices=vertices)


def disjoint_c4(count: int) -> MultiGraph:
    if count < 0:
        raise PreconditionError("Count must be non-negative")
    return disjoint_union(*(cycle_graph(4) for _ in range(count)))


def flower(petals: int) -> MultiGraph:
    """Vertex 0 on `petals` induced C4s that meet only in 0."""
    if petals < 0:
        raise PreconditionError("Petal count must be non-negative")
    edges = []
    for i in range(petals):
        a, b, c = 3 * i + 1, 3 * i + 2, 3 * i + 3
        edges += [(0, a), (a, b), (b, c), (c, 0)]
    return MultiGraph.from_edges(edges, vertices=[0])


def random_gnp(n: int, p: float, seed: int) -> MultiGraph:
    if n < 0 or not 0 <= p <= 1:
        raise PreconditionError("Need n >= 0 and 0 <= p <= 1")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return MultiGraph.from_edges(edges, vertices=range(n))


def random_block_graph(n: int, seed: int, max_clique: int = 4) -> MultiGraph:
    """
    Random tree of random cliques: each new clique shares one existing
    vertex (a future cut vertex) and brings 1..max_clique-1 fresh ones.
    """
    if n < 0 or max_clique < 2:
        raise PreconditionError("Need n >= 0 and max_clique >= 2")
    rng = random.Random(seed)
    if n == 0:
        return MultiGraph.from_edges([])
    first = min(n, rng.randint(1, max_clique))
    edges = list(combinations(range(first), 2))
    size = first
    while size < n:
        anchor = rng.randrange(size)
        fresh = list(range(size, min(n, size + rng.randint(1, max_clique - 1))))
        edges += list(combinations([anchor, *fresh], 2))
        size += len(fresh)
    return MultiGraph.from_edges(edges, vertices=range(n))


def planted_bgvd(n: int, k: int, seed: int, p: float = 0.5) -> MultiGraph:
    """A block graph on n - k vertices plus k noise vertices; deleting the noise solves it."""
    if not 0 <= k <= n:
        raise PreconditionError("Need 0 <= k <= n")
    rng = random.Random(seed)
    base = random_block_graph(n - k, seed=rng.randrange(2**32))
    edges = [(u, v) for u, v, _ in base.edges()]
    for noise in range(n - k, n):
        edges += [(u, noise) for u in range(noise) if rng.random() < p]
    return MultiGraph.from_edges(edges, vertices=range(n))


def random_weighted_multigraph(n: int, m: int, seed: int, max_weight: int = 9) -> WeightedGraph:
    """m random edges (loops and repeats allowed) with integer weights 1..max_weight."""
    if n <= 0 and m > 0:
        raise PreconditionError("Edges need vertices")
    rng = random.Random(seed)
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    graph = MultiGraph.from_edges(edges, vertices=range(n))
    return WeightedGraph(
        graph=graph, weight={v: Fraction(rng.randint(1, max_weight)) for v in range(n)}
    )


def generate(profile: str, seed: int, **params) -> WeightedGraph:
    """
    Dispatch a named profile with its parameters (n, p, k, petals, count, m).

    Raises:
        PreconditionError: for an unknown profile or missing/invalid parameters
    """
    try:
        if profile == "random-gnp":
            graph = random_gnp(params["n"], params["p"], seed)
        elif profile == "planted-bgvd":
            graph = planted_bgvd(params["n"], params["k"], seed, params.get("p", 0.5))
        elif profile == "flower":
            graph = flower(params["petals"])
        elif profile == "disjoint-c4":
            graph = disjoint_c4(params["count"])
        elif profile == "random-wfvs":
            return random_weighted_multigraph(params["n"], params["m"], seed)
        else:
            choices = ", ".join(PROFILES)
            raise PreconditionError(f"Unknown profile {profile!r}; choose from {choices}")
    except KeyError as missing:
        raise PreconditionError(f"Profile {profile} needs parameter {missing}") from None
    return WeightedGraph.uniform(graph)


def relabel(graph: MultiGraph, seed: int) -> MultiGraph:
    """The same graph on a random permutation of its vertex ids."""
    rng = random.Random(seed)
    old = sorted(graph.vertices)
    new = rng.sample(old, len(old))
    shift = dict(zip(old, new))
    edges = [(shift[u], shift[v]) for u, v, m in graph.edges() for _ in range(m)]
    return MultiGraph.from_edges(edges, vertices=new)


def twin_blowup(graph: MultiGraph, sizes: dict[int, int]) -> MultiGraph:
    """Replace each vertex v by a clique of sizes.get(v, 1) true twins."""
    if any(size < 1 for size in sizes.values()):
        raise PreconditionError("Twin classes need at least one vertex")
    classes, offset = {}, 0
    for v in sorted(graph.vertices):
        classes[v] = list(range(offset, offset + sizes.get(v, 1)))
        offset += len(classes[v])
    edges = [edge for members in classes.values() for edge in combinations(members, 2)]
    for u, v, _ in graph.edges():
        if u != v:
            edges += [(a, b) for a in classes[u] for b in classes[v]]
    return MultiGraph.from_edges(edges, vertices=range(offset))


def glue(graph: MultiGraph, other: MultiGraph, at: int) -> MultiGraph:
    """Attach `other` by identifying its smallest vertex with `at`; the rest get fresh ids."""
    base = graph.next_id
    rest = sorted(other.vertices)
    shift = {v: base + i for i, v in enumerate(rest[1:])} | {rest[0]: at}
    edges = [(u, v) for u, v, m in graph.edges() for _ in range(m)]
    edges += [(shift[u], shift[v]) for u, v, m in other.edges() for _ in range(m)]
    return MultiGraph.from_edges(edges, vertices=[*graph.vertices, *shift.values()])


def clique_chain(sizes: tuple[int, int, int], tail: int, seed: int, p: float = 0.3) -> MultiGraph:
    """
    Path t1-t2-t3-t4 (vertices 0..3) with a clique of sizes[i] vertices on each
    of its edges, closed into a hole by `tail` fresh vertices from t4 back to t1.
    Tail vertices get random chords among themselves and to t1 and t4.
    """
    if tail < 1 or any(size < 0 for size in sizes):
        raise PreconditionError("Need tail >= 1 and non-negative clique sizes")
    rng = random.Random(seed)
    edges = [(0, 1), (1, 2), (2, 3)]
    fresh = 4
    for left, size in enumerate(sizes):
        members = list(range(fresh, fresh + size))
        edges += list(combinations(members, 2))
        edges += [(s, t) for s in members for t in (left, left + 1)]
        fresh += size
    ring = [3, *range(fresh, fresh + tail), 0]
    edges += list(zip(ring, ring[1:]))
    for i, j in combinations(range(len(ring)), 2):
        if 1 < j - i < len(ring) - 1 and rng.random() < p:
            edges.append((ring[i], ring[j]))
    return MultiGraph.from_edges(edges, vertices=range(fresh + tail))


def complete_bipartite(left: int, right: int) -> MultiGraph:
    """K_{left,right} with the left side on 0..left-1."""
    edges = [(a, left + b) for a in range(left) for b in range(right)]
    return MultiGraph.from_edges(edges, vertices=range(left + right))


def rule_instance(rule: int, seed: int) -> tuple[MultiGraph, int]:
    """
    A random (G, k) on which kernel rule `rule` tends to fire.

    Families: 1 block component beside a dense one, 2 a block graph hanging
    off a short hole, 3 a twin blow-up with a class above k + 2, 4 a clique
    chain closed into a hole, 5 a flower with chords between its petals,
    6 K_{2,t} with t >= 12 and an optional pendant vertex. Vertex ids are
    shuffled so the rules meet their candidates in varying order.
    """
    rng = random.Random(f"rule-{rule}:{seed}")
    inner = rng.randrange(2**32)
    if rule == 1:
        graph = disjoint_union(
            random_block_graph(rng.randint(3, 6), inner),
            random_gnp(rng.randint(4, 6), rng.uniform(0.4, 0.8), inner),
        )
        budget = rng.randint(0, 3)
    elif rule == 2:
        hanging = random_block_graph(rng.randint(2, 5), inner)
        graph = glue(cycle_graph(rng.randint(4, 6)), hanging, 0)
        budget = rng.randint(0, 3)
    elif rule == 3:
        budget = rng.randint(0, 2)
        base = random_gnp(rng.randint(4, 5), rng.uniform(0.3, 0.7), inner)
        blown = rng.sample(sorted(base.vertices), 2)
        sizes = {blown[0]: budget + 3 + rng.randint(0, 1), blown[1]: rng.randint(1, 3)}
        graph = twin_blowup(base, sizes)
    elif rule == 4:
        sizes = (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2))
        graph = clique_chain(sizes, rng.randint(1, 2), inner)
        budget = rng.randint(1, 2)
    elif rule == 5:
        graph = flower(3)
        petals = [3 * i + 2 for i in range(3)]
        chords = [(a, b) for a, b in combinations(petals, 2) if rng.random() < 0.4]
        graph = graph.add_edges(chords)
        budget = 1
    elif rule == 6:
        graph = complete_bipartite(2, rng.randint(12, 13))
        if rng.random() < 0.5:
            graph = glue(graph, path_graph(2), rng.randrange(2, len(graph)))
        budget = 1
    else:
        raise PreconditionError(f"Kernel rules are numbered 1..6, not {rule}")
    return relabel(graph, inner), budget
