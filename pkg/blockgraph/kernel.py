"""
Kernelization for block graph vertex deletion.

Rules, always the lowest-numbered applicable one first:
    1. drop a component that is a block graph
    2. drop a component H of G - v when G[H + v] is a connected block graph
    3. shrink a true-twin class to k + 2 vertices
    4. collapse the middle of a t1-t2-t3-t4 clique chain
    5. v with 2k + 1 disjoint N(v)-paths: No if k + 1 disjoint obstructions
       exist, otherwise v is deleted and k drops by one
    6. v whose component degree exceeds 3|S_v|: detach the components of a
       3-expansion from v and join v to each selected s by two new paths

Every application is recorded as a plain graph edit (TraceStep), so a trace
can be replayed on the original graph. A state carries the approximate
solution A; the per-vertex structures and hitting sets are cached on the
state and die with it.
"""

import logging
from collections import Counter
from collections.abc import Iterator
from dataclasses import replace
from itertools import combinations

from .apaths import apath_packing
from .approx import approx_bgvd_4
from .conf import get_setting
from .exceptions import InvariantViolation, PreconditionError
from .expansion import expansion
from .graphs import BlockKind, MultiGraph, block_cut_forest, true_twin_classes
from .models import (
    KernelResult,
    KernelState,
    ReductionTrace,
    StructureKind,
    StructureResult,
    TraceStep,
    Verdict,
)
from .obstructions import (
    PackingMode,
    find_obstruction,
    is_block_graph,
    pack_disjoint_obstructions,
)

logger = logging.getLogger(__name__)

Fired = tuple[int, KernelState]


def apply_step(graph: MultiGraph, step: TraceStep) -> MultiGraph:
    """Replay one recorded edit: edges out, vertices out, vertices in, edges in."""
    edited = graph.remove_edges(step.removed_edges).remove_vertices(step.removed_vertices)
    return edited.add_vertices(step.added_vertices).add_edges(step.added_edges)


def replay_trace(graph: MultiGraph, budget: int, trace: ReductionTrace) -> tuple[MultiGraph, int]:
    """Rebuild the reduced instance from the original one and its trace."""
    for step in trace.steps:
        if step.budget_before != budget:
            raise PreconditionError(
                f"Trace step for rule {step.rule} expects k={step.budget_before}, not {budget}"
            )
        graph = apply_step(graph, step)
        budget = step.budget_after
    return graph, budget


def _fire(state: KernelState, rule: int, budget: int | None = None, **edits) -> Fired:
    step = TraceStep(
        rule=rule,
        budget_before=state.budget,
        budget_after=state.budget if budget is None else budget,
        **{name: tuple(value) for name, value in edits.items()},
    )
    logger.debug(step.as_line())
    return rule, state.evolve(apply_step(state.graph, step), step.budget_after, step)


def _refuse(state: KernelState, rule: int, witness) -> Fired:
    """Record a trivial-No verdict reached by `rule` with its obstruction witness."""
    step = TraceStep(
        rule=rule, budget_before=state.budget, budget_after=state.budget, witness=tuple(witness)
    )
    logger.info(f"Rule {rule}: trivial No")
    trace = state.trace.append(step).finish(Verdict.TRIVIAL_NO)
    return rule, KernelState(graph=state.graph, budget=state.budget, trace=trace)


def _block_component(state: KernelState) -> Fired | None:
    for component in state.graph.components():
        if is_block_graph(state.graph.subgraph(component)):
            return _fire(state, 1, removed_vertices=sorted(component))
    return None


def _pendant_block(state: KernelState) -> Fired | None:
    graph = state.graph
    for v in sorted(block_cut_forest(graph).cut_vertices):
        rest = graph.remove_vertices([v])
        for component in rest.components():
            if not graph.neighbors(v) & component:
                continue
            if is_block_graph(graph.subgraph(component | {v})):
                return _fire(state, 2, removed_vertices=sorted(component), witness=[v])
    return None


def _twins(state: KernelState) -> Fired | None:
    # a deletion set of size k leaves at least two of the kept twins
    keep = state.budget + 2
    for twins in true_twin_classes(state.graph):
        if len(twins) > keep:
            ordered = sorted(twins)
            return _fire(state, 3, removed_vertices=ordered[keep:], witness=ordered[:keep])
    return None


def _is_clique(graph: MultiGraph, vertices) -> bool:
    return all(graph.has_edge(a, b) for a, b in combinations(vertices, 2))


def _chain_side(graph: MultiGraph, inner: int, other: int, middle: frozenset[int]):
    """Candidates (t, S) next to `inner` on the side away from `other`."""
    rest = graph.neighbors(inner) - {other} - middle
    for t in sorted(rest):
        side = rest - {t}
        if graph.has_edge(t, other) or not _is_clique(graph, side):
            continue
        if all(graph.neighbors(s) - side == {t, inner} for s in side):
            yield t, side


def _clique_chain(state: KernelState) -> Fired | None:
    graph = state.graph
    for t2 in sorted(graph.vertices):
        for t3 in sorted(graph.neighbors(t2)):
            middle = graph.neighbors(t2) & graph.neighbors(t3)
            if not _is_clique(graph, middle):
                continue
            if any(graph.neighbors(s) - middle != {t2, t3} for s in middle):
                continue
            for t1, first in _chain_side(graph, t2, t3, middle):
                for t4, last in _chain_side(graph, t3, t2, middle):
                    if t4 == t1 or graph.has_edge(t1, t4) or first & last:
                        continue
                    merged = graph.next_id
                    around = sorted({t1, t4} | first | last)
                    return _fire(
                        state,
                        4,
                        removed_vertices=sorted(middle | {t2, t3}),
                        added_vertices=[merged],
                        added_edges=[(merged, u) for u in around],
                        witness=[t1, t2, t3, t4],
                    )
    return None


def neighbourhood_paths_graph(graph: MultiGraph, v: int) -> MultiGraph:
    """G - v with every edge inside N(v) removed."""
    around = sorted(graph.neighbors(v))
    inside = [(a, b) for a, b in combinations(around, 2) if graph.has_edge(a, b)]
    return graph.remove_vertices([v]).remove_edges(inside)


def _many_paths(state: KernelState) -> Fired | None:
    graph, budget = state.graph, state.budget
    need = 2 * budget + 1
    for v in sorted(graph.vertices):
        packing = apath_packing(neighbourhood_paths_graph(graph, v), graph.neighbors(v), need=need)
        if len(packing) < need:
            continue
        disjoint = pack_disjoint_obstructions(graph, limit=budget + 1)
        if len(disjoint) > budget:
            return _refuse(state, 5, sorted(u for o in disjoint for u in o.vertices))
        return _fire(state, 5, budget=budget - 1, removed_vertices=[v], witness=[v])
    return None


def with_approximation(state: KernelState) -> KernelState:
    if state.approximate is not None:
        return state
    return replace(state, approximate=approx_bgvd_4(state.graph))


def vertex_structure(state: KernelState, v: int) -> StructureResult:
    """
    k + 1 disjoint obstructions, a flower of k + 1 petals at v, or a set
    avoiding v that meets every obstruction through v.

    The hitting set starts from the petals of a maximal flower, a cover of
    the N(v)-paths and the diamonds at v inside N[v]; any obstruction through
    v that survives is added until none is left.
    """
    if v in state.structures:
        return state.structures[v]
    graph, budget = state.graph, state.budget
    if v not in graph:
        raise PreconditionError(f"Vertex {v} is not in the graph")

    disjoint = pack_disjoint_obstructions(graph, limit=budget + 1)
    if len(disjoint) > budget:
        result = StructureResult(StructureKind.DISJOINT_PACK, v, obstructions=tuple(disjoint))
        state.structures[v] = result
        return result
    petals = pack_disjoint_obstructions(graph, limit=budget + 1, mode=PackingMode.FLOWER, anchor=v)
    if len(petals) > budget:
        result = StructureResult(StructureKind.FLOWER, v, obstructions=tuple(petals))
        state.structures[v] = result
        return result

    hitting = {u for petal in petals for u in petal.vertices}
    paths = apath_packing(neighbourhood_paths_graph(graph, v), graph.neighbors(v))
    hitting |= paths.cover or set()
    local = graph.subgraph(graph.closed_neighborhood(v))
    hitting |= {
        u
        for diamond in pack_disjoint_obstructions(local, mode=PackingMode.FLOWER, anchor=v)
        for u in diamond.vertices
    }
    hitting.discard(v)
    while (left := find_obstruction(graph.remove_vertices(hitting), anchor=v)) is not None:
        hitting |= left.vertex_set - {v}

    target = get_setting("HITTING_SET_TARGET_FACTOR") * budget
    if len(hitting) > target:
        logger.warning(f"Hitting set at vertex {v} has {len(hitting)} vertices, above {target}")
    result = StructureResult(StructureKind.HITTING_SET, v, hitting_set=frozenset(hitting))
    state.structures[v] = result
    return result


def compute_Sv(state: KernelState, v: int) -> frozenset[int]:  # noqa: N802
    """
    A block vertex deletion set avoiding v: A itself when v is outside A,
    otherwise A - v plus the hitting set at v.

    Raises:
        PreconditionError: if the state has no approximate solution or the
            structure at v is not a hitting set
        InvariantViolation: if the result still leaves an obstruction
    """
    if v in state.hitting_sets:
        return state.hitting_sets[v]
    if state.approximate is None:
        raise PreconditionError("State carries no approximate solution")
    approximate = state.approximate
    if v not in approximate:
        result = approximate
    else:
        structure = vertex_structure(state, v)
        if structure.kind is not StructureKind.HITTING_SET:
            raise PreconditionError(f"No hitting set at vertex {v}: found {structure.kind.value}")
        result = (approximate - {v}) | structure.hitting_set
    if v in result or not is_block_graph(state.graph.remove_vertices(result)):
        raise InvariantViolation(f"S_v for vertex {v} is not a deletion set avoiding v")
    state.hitting_sets[v] = result
    return result


def component_degree(graph: MultiGraph, v: int, hitting: frozenset[int]) -> list[frozenset[int]]:
    """Components of G - (S_v + v) with a vertex adjacent to v."""
    rest = graph.remove_vertices(hitting | {v})
    return [c for c in rest.components() if graph.neighbors(v) & c]


def _components_for(state: KernelState, v: int):
    if v in (state.approximate or ()):
        structure = vertex_structure(state, v)
        if structure.kind is StructureKind.DISJOINT_PACK:
            return structure
        if structure.kind is StructureKind.FLOWER:
            logger.debug(f"Flower at {v} left to rule 5")
            return None
    hitting = compute_Sv(state, v)
    return hitting, component_degree(state.graph, v, hitting)


def _component_degree_rule(state: KernelState) -> Fired | None:
    state = with_approximation(state)
    graph = state.graph
    for v in sorted(graph.vertices):
        found = _components_for(state, v)
        if found is None:
            continue
        if isinstance(found, StructureResult):
            return _refuse(state, 6, sorted(u for o in found.obstructions for u in o.vertices))
        hitting, components = found
        if not hitting or len(components) <= 3 * len(hitting):
            continue

        touching: dict[int, set[int]] = {}
        for i, component in enumerate(components):
            owners = {s for s in hitting if graph.neighbors(s) & component}
            if owners:
                touching[i] = owners
        if len(touching) < 3 * len(hitting):
            logger.warning(f"Vertex {v}: components without a neighbour in S_v, rule 6 skipped")
            continue
        expanded = expansion(3, hitting, touching, touching)
        detached = sorted(u for i in expanded.tails for u in components[i] if graph.has_edge(u, v))
        base = graph.next_id
        heads = sorted(expanded.heads)
        fresh = list(range(base, base + 2 * len(heads)))
        gadget = [
            edge
            for s, (p, r) in zip(heads, zip(fresh[::2], fresh[1::2]))
            for edge in ((v, p), (p, s), (v, r), (r, s))
        ]
        fired = _fire(
            state,
            6,
            removed_edges=[(v, u) for u in detached],
            added_vertices=fresh,
            added_edges=gadget,
            witness=[v, *heads],
        )
        after = len(component_degree(fired[1].graph, v, hitting))
        if after >= len(components):
            raise InvariantViolation(f"Rule 6 at vertex {v} did not lower the component degree")
        return fired
    return None


RULES = (
    _block_component,
    _pendant_block,
    _twins,
    _clique_chain,
    _many_paths,
    _component_degree_rule,
)


def apply_next_rule(state: KernelState) -> Fired | None:
    """Apply the lowest-numbered applicable rule once; None at the fixpoint."""
    for rule in RULES:
        fired = rule(state)
        if fired is not None:
            return fired
    return None


def rule_applications(
    graph: MultiGraph, budget: int
) -> Iterator[tuple[int, KernelState, KernelState]]:
    """
    Yield (rule, before, after) for each application up to the fixpoint or a
    verdict. Unlike kernelize, no 4k approximation guard stops the run early.
    """
    state = KernelState(graph=graph, budget=budget)
    limit = get_setting("KERNEL_MAX_STEPS")
    while len(state.graph) and state.budget >= 0 and state.trace.verdict is Verdict.REDUCED:
        fired = apply_next_rule(state)
        if fired is None:
            return
        rule, after = fired
        yield rule, state, after
        if len(after.trace.steps) > limit:
            raise InvariantViolation(f"Kernelization exceeded {limit} rule applications")
        state = after


def kernel_statistics(state: KernelState) -> dict:
    """Size figures of the current instance, with the block structure of G - A."""
    graph = state.graph
    budget = state.budget
    counts = Counter(step.rule for step in state.trace.steps)
    statistics = {
        "vertices": len(graph),
        "edges": graph.edge_count(),
        "budget": budget,
        "steps": len(state.trace.steps),
        "rule_counts": {str(r): n for r, n in sorted(counts.items())},
        "kernel_ratio": len(graph) / budget**4 if budget > 0 else None,
    }
    if state.approximate is None or not len(graph) or state.trace.verdict is not Verdict.REDUCED:
        return statistics

    forest = block_cut_forest(graph.remove_vertices(state.approximate))
    kinds = Counter(forest.kinds)
    degrees = {}
    for v in sorted(state.approximate):
        structure = vertex_structure(state, v)
        if structure.kind is StructureKind.HITTING_SET:
            degrees[str(v)] = len(component_degree(graph, v, compute_Sv(state, v)))
    statistics.update(
        {
            "approximate_size": len(state.approximate),
            "blocks_outside_approximate": len(forest.blocks),
            "leaf_blocks": kinds[BlockKind.LEAF],
            "degree_two_blocks": kinds[BlockKind.DEGREE_TWO],
            "higher_degree_blocks": kinds[BlockKind.HIGHER],
            "max_internal_vertices": max(
                (len(forest.internal_vertices(i)) for i in range(len(forest.blocks))), default=0
            ),
            "component_degrees": degrees,
        }
    )
    return statistics


def kernelize(graph: MultiGraph, budget: int) -> KernelResult:
    """
    Reduce (G, k) to an equivalent instance, or decide it outright.

    Raises:
        PreconditionError: if the budget is negative or the graph is not simple
        InvariantViolation: if the driver exceeds KERNEL_MAX_STEPS
    """
    if budget < 0:
        raise PreconditionError("Budget must be non-negative")
    if not graph.is_simple():
        raise PreconditionError("Kernelization needs a simple graph")
    logger.info(f"Kernelizing {len(graph)} vertices, {graph.edge_count()} edges, k={budget}")

    state = KernelState(graph=graph, budget=budget)
    limit = get_setting("KERNEL_MAX_STEPS")
    while True:
        if state.budget < 0:
            state = replace(state, trace=state.trace.finish(Verdict.TRIVIAL_NO))
            break
        if not len(state.graph):
            state = replace(state, trace=state.trace.finish(Verdict.TRIVIAL_YES))
            break
        state = with_approximation(state)
        if len(state.approximate) > 4 * state.budget:
            logger.info(f"Approximate solution of {len(state.approximate)} exceeds 4k")
            state = replace(state, trace=state.trace.finish(Verdict.TRIVIAL_NO))
            break
        fired = apply_next_rule(state)
        if fired is None:
            break
        state = fired[1]
        if state.trace.verdict is not Verdict.REDUCED:
            break
        if len(state.trace.steps) > limit:
            raise InvariantViolation(f"Kernelization exceeded {limit} rule applications")

    statistics = kernel_statistics(state)
    logger.info(
        f"Kernel: {state.trace.verdict.value}, {len(state.graph)} vertices, k={state.budget}, "
        f"{len(state.trace.steps)} steps"
    )
    return KernelResult(
        graph=state.graph, budget=state.budget, trace=state.trace, statistics=statistics
    )
