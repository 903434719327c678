"""Unit tests for the kernelization rules and driver."""

import random

import pytest

from blockgraph.exceptions import InvariantViolation, PreconditionError
from blockgraph.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    diamond,
    disjoint_c4,
    disjoint_union,
    flower,
    planted_bgvd,
    random_block_graph,
    random_gnp,
    rule_instance,
    twin_blowup,
)
from blockgraph.graphs import MultiGraph
from blockgraph.kernel import (
    apply_next_rule,
    compute_Sv,
    kernelize,
    replay_trace,
    rule_applications,
    vertex_structure,
    with_approximation,
)
from blockgraph.models import KernelState, StructureKind, Verdict
from blockgraph.oracle import brute_bvd_decision, brute_min_bvd


def decision(graph: MultiGraph, budget: int) -> bool:
    return budget >= 0 and brute_min_bvd(graph)[0] <= budget


def clique_chain_graph() -> MultiGraph:
    """Three triangles in a row closed into a hole by the path 0-7-8-3."""
    edges = [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (5, 1), (5, 2), (6, 2), (6, 3)]
    return MultiGraph.from_edges([*edges, (0, 7), (7, 8), (8, 3)])


def k2t(t: int) -> MultiGraph:
    """Vertices 0 and 1 joined through t common neighbours 2..t+1."""
    return MultiGraph.from_edges([(s, a) for a in range(2, t + 2) for s in (0, 1)])


class TestRules:
    """Tests for single rule applications."""

    def test_rule_1_drops_block_component(self):
        """Test that K5 is removed from K5 + C5 and k is unchanged."""
        graph = disjoint_union(complete_graph(5), cycle_graph(5))
        rule, state = apply_next_rule(KernelState(graph=graph, budget=1))
        assert rule == 1
        assert state.graph.vertices == frozenset(range(5, 10))
        assert state.budget == 1

    def test_rule_3_keeps_k_plus_two_twins(self):
        """Test that a twin class of size k + 3 shrinks to k + 2."""
        twins = [4, 5, 6, 7]
        edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
        edges += [(t, s) for t in twins for s in (0, 2)]
        edges += [(a, b) for i, a in enumerate(twins) for b in twins[i + 1 :]]
        rule, state = apply_next_rule(KernelState(graph=MultiGraph.from_edges(edges), budget=1))
        assert rule == 3
        step = state.trace.steps[-1]
        assert step.removed_vertices == (7,)
        assert step.witness == (4, 5, 6)

    def test_rule_3_spares_twin_class_of_k_plus_two(self):
        """Test that K3 joined to three independent vertices keeps all of K3 at k = 1."""
        graph = twin_blowup(complete_bipartite(1, 3), {0: 3})
        assert brute_min_bvd(graph)[0] == 2
        result = kernelize(graph, 1)
        assert 3 not in [step.rule for step in result.trace.steps]
        assert result.verdict is not Verdict.TRIVIAL_YES
        if result.verdict is Verdict.REDUCED:
            assert not decision(result.graph, result.budget)

    def test_rule_3_leaves_diamond_at_zero_budget(self):
        """Test that the two degree-3 vertices of a diamond survive k = 0."""
        fired = apply_next_rule(KernelState(graph=diamond(), budget=0))
        assert fired is None or fired[0] != 3
        assert kernelize(diamond(), 0).verdict is Verdict.TRIVIAL_NO

    @pytest.mark.parametrize("budget", [1, 2])
    def test_rule_4_collapses_chain(self, budget):
        """Test that the clique chain rule fires and preserves the answer."""
        graph = clique_chain_graph()
        rule, state = apply_next_rule(KernelState(graph=graph, budget=budget))
        assert rule == 4
        step = state.trace.steps[-1]
        assert len(step.added_vertices) == 1
        assert len(state.graph) == len(graph) - len(step.removed_vertices) + 1
        assert decision(graph, budget) == decision(state.graph, state.budget)

    def test_rule_5_deletes_flower_centre(self):
        """Test that 2k + 1 petals at v delete v and lower k."""
        rule, state = apply_next_rule(KernelState(graph=flower(5), budget=2))
        assert rule == 5
        assert 0 not in state.graph
        assert state.budget == 1

    def test_rule_6_detaches_components(self):
        """Test that K_{2,12} at k = 1 gets the two-path gadget between 0 and 1."""
        graph = k2t(12)
        rule, state = apply_next_rule(KernelState(graph=graph, budget=1))
        assert rule == 6
        step = state.trace.steps[-1]
        assert step.witness == (0, 1)
        assert len(step.added_vertices) == 2
        fresh = set(step.added_vertices)
        assert fresh <= state.graph.neighbors(0)
        assert fresh <= state.graph.neighbors(1)
        assert len(state.graph.neighbors(0)) < len(graph.neighbors(0))
        assert decision(graph, 1) == decision(state.graph, state.budget)

    def test_fixpoint_returns_none(self):
        """Test that two disjoint C4s with k = 2 are already reduced."""
        state = KernelState(graph=disjoint_c4(2), budget=2)
        assert apply_next_rule(state) is None

    @pytest.mark.parametrize("seed", range(40))
    def test_each_rule_is_safe(self, seed):
        """Test that one rule application never changes the decision."""
        rng = random.Random(seed)
        if seed % 2:
            graph = random_gnp(rng.randint(4, 9), rng.uniform(0.2, 0.7), seed)
        else:
            graph = planted_bgvd(rng.randint(5, 10), rng.randint(1, 3), seed)
        budget = rng.randint(0, 3)
        state = KernelState(graph=graph, budget=budget)
        while (fired := apply_next_rule(state)) is not None:
            _, after = fired
            if after.trace.verdict is Verdict.TRIVIAL_NO:
                assert not decision(graph, budget)
                return
            if len(after.graph) > 16:
                return
            assert decision(state.graph, state.budget) == decision(after.graph, after.budget)
            state = after


class TestStructures:
    """Tests for vertex_structure and compute_Sv."""

    def test_disjoint_pack(self):
        """Test that k + 1 disjoint C4s are reported as a packing."""
        result = vertex_structure(KernelState(graph=disjoint_c4(3), budget=2), 0)
        assert result.kind is StructureKind.DISJOINT_PACK
        assert len(result.obstructions) == 3

    def test_flower(self):
        """Test that k + 1 petals through 0 form a flower."""
        result = vertex_structure(KernelState(graph=flower(3), budget=2), 0)
        assert result.kind is StructureKind.FLOWER
        assert len(result.obstructions) == 3
        assert all(0 in petal.vertices for petal in result.obstructions)

    def test_block_graph_gives_empty_hitting_set(self):
        """Test that nothing needs hitting in a block graph."""
        graph = random_block_graph(10, seed=3)
        result = vertex_structure(KernelState(graph=graph, budget=1), min(graph.vertices))
        assert result.kind is StructureKind.HITTING_SET
        assert result.hitting_set == frozenset()

    def test_hitting_set_avoids_anchor(self):
        """Test that the C4 hitting set at 0 is the rest of the cycle."""
        result = vertex_structure(KernelState(graph=cycle_graph(4), budget=1), 0)
        assert result.kind is StructureKind.HITTING_SET
        assert 0 not in result.hitting_set
        assert result.hitting_set

    def test_missing_vertex(self):
        """Test that an unknown anchor is rejected."""
        with pytest.raises(PreconditionError):
            vertex_structure(KernelState(graph=cycle_graph(4), budget=1), 9)

    def test_sv_outside_approximation_is_approximation(self):
        """Test that S_v = A when v is not in A."""
        state = KernelState(graph=cycle_graph(4), budget=1, approximate=frozenset({0}))
        assert compute_Sv(state, 2) == frozenset({0})

    def test_sv_inside_approximation(self):
        """Test that S_v avoids v and leaves a block graph."""
        state = KernelState(graph=cycle_graph(4), budget=1, approximate=frozenset(range(4)))
        assert compute_Sv(state, 0) == frozenset({1, 2, 3})

    def test_sv_needs_approximation(self):
        """Test that compute_Sv refuses a state without A."""
        with pytest.raises(PreconditionError):
            compute_Sv(KernelState(graph=cycle_graph(4), budget=1), 0)

    def test_sv_is_cached_per_state(self):
        """Test that a second lookup returns the cached set."""
        state = with_approximation(KernelState(graph=cycle_graph(5), budget=1))
        first = compute_Sv(state, 0)
        assert compute_Sv(state, 0) is first


class TestKernelize:
    """Tests for kernelize."""

    def test_block_graph_is_trivial_yes(self):
        """Test that any block graph is decided Yes for any k."""
        for budget in (0, 2):
            result = kernelize(random_block_graph(12, seed=1), budget)
            assert result.verdict is Verdict.TRIVIAL_YES
            assert not len(result.graph)

    def test_disjoint_c4_over_budget_is_trivial_no(self):
        """Test that k + 1 disjoint C4s are decided No."""
        assert kernelize(disjoint_c4(3), 2).verdict is Verdict.TRIVIAL_NO
        assert kernelize(disjoint_c4(2), 1).verdict is Verdict.TRIVIAL_NO

    def test_reduced_instance(self):
        """Test that two C4s with k = 2 stay as they are."""
        result = kernelize(disjoint_c4(2), 2)
        assert result.verdict is Verdict.REDUCED
        assert result.budget == 2
        assert len(result.graph) == 8
        assert result.trace.lines() == ["VERDICT reduced"]

    def test_flower_trace(self):
        """Test that the flower centre goes first and the petals follow as blocks."""
        result = kernelize(flower(5), 2)
        assert result.verdict is Verdict.TRIVIAL_YES
        rules = [step.rule for step in result.trace.steps]
        assert rules == [5, 1, 1, 1, 1, 1]
        assert result.trace.lines()[0] == "RULE 5 k=1 removed=[0] added=[] witness=[0]"
        assert result.trace.lines()[-1] == "VERDICT trivial-yes"

    @pytest.mark.parametrize("seed", range(20))
    def test_decision_is_preserved(self, seed):
        """Test that the kernel answers like the original instance."""
        rng = random.Random(seed)
        budget = rng.randint(1, 3)
        graph = planted_bgvd(rng.randint(6, 11), budget, seed)
        expected = decision(graph, budget)
        result = kernelize(graph, budget)
        if result.verdict is Verdict.TRIVIAL_YES:
            assert expected
        elif result.verdict is Verdict.TRIVIAL_NO:
            assert not expected
        elif len(result.graph) <= 16:
            assert decision(result.graph, result.budget) == expected

    @pytest.mark.parametrize("seed", range(10))
    def test_replay_reproduces_kernel(self, seed):
        """Test that replaying the trace on the input gives the kernel."""
        graph = random_gnp(9, 0.4, seed)
        result = kernelize(graph, 2)
        replayed, budget = replay_trace(graph, 2, result.trace)
        assert replayed == result.graph
        assert budget == result.budget

    def test_replay_rejects_wrong_budget(self):
        """Test that a trace does not replay from another k."""
        result = kernelize(flower(5), 2)
        with pytest.raises(PreconditionError):
            replay_trace(flower(5), 3, result.trace)

    def test_negative_budget(self):
        """Test that k < 0 is rejected."""
        with pytest.raises(PreconditionError):
            kernelize(cycle_graph(4), -1)

    def test_multigraph_rejected(self):
        """Test that parallel edges are rejected."""
        with pytest.raises(PreconditionError):
            kernelize(MultiGraph.from_edges([(0, 1), (0, 1)]), 1)

    def test_step_limit(self, settings):
        """Test that exceeding KERNEL_MAX_STEPS raises."""
        settings.BLOCKGRAPH = {**settings.BLOCKGRAPH, "KERNEL_MAX_STEPS": 0}
        with pytest.raises(InvariantViolation):
            kernelize(flower(5), 2)

    def test_statistics(self):
        """Test the size figures reported for a reduced kernel."""
        statistics = kernelize(disjoint_c4(2), 2).statistics
        assert statistics["vertices"] == 8
        assert statistics["edges"] == 8
        assert statistics["budget"] == 2
        assert statistics["steps"] == 0
        assert statistics["kernel_ratio"] == 0.5
        assert statistics["approximate_size"] == 8
        assert statistics["blocks_outside_approximate"] == 0
        assert set(statistics["component_degrees"]) == {str(v) for v in range(8)}

    def test_statistics_without_budget(self):
        """Test that k = 0 reports no kernel ratio."""
        statistics = kernelize(random_block_graph(5, seed=0), 0).statistics
        assert statistics["kernel_ratio"] is None
        assert statistics["rule_counts"] == {"1": 1}


def bounded_decision(state: KernelState) -> bool:
    return brute_bvd_decision(state.graph, state.budget) is not None


@pytest.mark.slow
class TestRuleSafeness:
    """Oracle checks of every rule over families built to make it fire."""

    FIRINGS = 200
    MAX_INSTANCES = 3000

    @pytest.mark.parametrize("rule", range(1, 7))
    def test_rule_preserves_decision(self, rule, settings):
        """Test that 200 applications of the rule never change the decision."""
        settings.BLOCKGRAPH = {**settings.BLOCKGRAPH, "ORACLE_MAX_VERTICES_BVD": 24}
        firings = 0
        for seed in range(self.MAX_INSTANCES):
            graph, budget = rule_instance(rule, seed)
            for fired, before, after in rule_applications(graph, budget):
                if fired != rule:
                    continue
                expected = bounded_decision(before)
                if after.trace.verdict is Verdict.TRIVIAL_NO:
                    assert not expected, (rule, seed)
                else:
                    assert bounded_decision(after) == expected, (rule, seed)
                firings += 1
            if firings >= self.FIRINGS:
                break
        assert firings >= self.FIRINGS

    @pytest.mark.parametrize("seed", range(300))
    def test_twin_blowups_against_oracle(self, seed, settings):
        """Test whole kernel runs on graphs with large true-twin classes."""
        settings.BLOCKGRAPH = {**settings.BLOCKGRAPH, "ORACLE_MAX_VERTICES_BVD": 24}
        graph, budget = rule_instance(3, seed)
        expected = brute_bvd_decision(graph, budget) is not None
        result = kernelize(graph, budget)
        if result.verdict is Verdict.TRIVIAL_YES:
            assert expected
        elif result.verdict is Verdict.TRIVIAL_NO:
            assert not expected
        else:
            assert (brute_bvd_decision(result.graph, result.budget) is not None) == expected
