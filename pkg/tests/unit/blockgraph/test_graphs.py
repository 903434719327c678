"""Unit tests for the graph substrate."""

from fractions import Fraction

import pytest

from blockgraph.exceptions import PreconditionError
from blockgraph.generators import bowtie, complete_graph, cycle_graph, path_graph
from blockgraph.graphs import (
    BlockKind,
    MultiGraph,
    WeightedGraph,
    block_cut_forest,
    contract_edge,
    is_forest,
    true_twin_classes,
)


class TestMultiGraph:
    """Tests for MultiGraph construction and edits."""

    def test_repeated_edges_add_multiplicity(self):
        """Test that repeated edges are counted, not merged."""
        graph = MultiGraph.from_edges([(0, 1), (0, 1), (1, 2)])
        assert graph.multiplicity(0, 1) == 2
        assert graph.multiplicity(1, 0) == 2
        assert graph.edge_count() == 3
        assert not graph.is_simple()

    def test_loop_counts_twice_in_degree(self):
        """Test that a loop adds two to the degree."""
        graph = MultiGraph.from_edges([(0, 0), (0, 1)])
        assert graph.loops(0) == 1
        assert graph.degree(0) == 3
        assert graph.neighbors(0) == frozenset({1})

    def test_edits_do_not_mutate(self):
        """Test that every edit returns a new graph."""
        graph = cycle_graph(4)
        smaller = graph.remove_vertices([0])
        assert len(graph) == 4
        assert len(smaller) == 3

    def test_fresh_ids_never_reused(self):
        """Test that next_id survives vertex removal."""
        graph = path_graph(3).remove_vertices([2])
        grown, fresh = graph.add_vertex()
        assert fresh == 3
        assert grown.next_id == 4

    def test_add_edges_rejects_unknown_endpoint(self):
        """Test that edges must join live vertices."""
        with pytest.raises(PreconditionError):
            path_graph(2).add_edges([(0, 5)])

    def test_remove_edges_drops_all_copies(self):
        """Test that remove_edges deletes parallel copies too."""
        graph = MultiGraph.from_edges([(0, 1), (0, 1), (1, 2)]).remove_edges([(1, 0)])
        assert not graph.has_edge(0, 1)
        assert graph.has_edge(1, 2)

    def test_cap_multiplicity(self):
        """Test that multiplicities are capped."""
        graph = MultiGraph.from_edges([(0, 1)] * 4).cap_multiplicity(2)
        assert graph.multiplicity(0, 1) == 2

    def test_components_sorted_by_smallest_vertex(self):
        """Test component order."""
        graph = MultiGraph.from_edges([(3, 4), (0, 1)], vertices=[2])
        assert graph.components() == [frozenset({0, 1}), frozenset({2}), frozenset({3, 4})]


class TestWeightedGraph:
    """Tests for WeightedGraph."""

    def test_rejects_float_weights(self):
        """Test that weights must be exact."""
        with pytest.raises(PreconditionError):
            WeightedGraph(graph=path_graph(1), weight={0: 0.5})

    def test_rejects_missing_weight(self):
        """Test that every vertex needs a weight."""
        with pytest.raises(PreconditionError):
            WeightedGraph(graph=path_graph(2), weight={0: Fraction(1)})

    def test_total_and_with_graph(self):
        """Test totals and weight carry-over onto a derived graph."""
        weighted = WeightedGraph(graph=path_graph(2), weight={0: Fraction(1, 2), 1: 3})
        assert weighted.total([0, 1]) == Fraction(7, 2)
        grown, fresh = weighted.graph.add_vertex()
        derived = weighted.with_graph(grown, {fresh: Fraction(1)})
        assert derived.weight[fresh] == 1
        assert derived.weight[0] == Fraction(1, 2)


class TestContractEdge:
    """Tests for contract_edge."""

    def test_contract_triangle_edge(self):
        """Test that contracting a triangle edge leaves a parallel pair."""
        result = contract_edge(complete_graph(3), 0, 1)
        assert result.merged == 3
        assert result.graph.multiplicity(3, 2) == 2
        assert result.graph.edge_count() == 2
        assert result.provenance == {3: (0, 1)}

    def test_parallel_copy_becomes_loop(self):
        """Test that the extra copy of a double edge survives as a loop."""
        result = contract_edge(MultiGraph.from_edges([(0, 1), (0, 1)]), 0, 1)
        assert result.graph.loops(result.merged) == 1

    @pytest.mark.parametrize(
        "edges,u,v",
        [
            ([(0, 1)], 0, 0),
            ([(0, 1)], 0, 2),
            ([(0, 1), (0, 0)], 0, 1),
        ],
    )
    def test_invalid_contractions(self, edges, u, v):
        """Test loop, missing edge and looped endpoint are rejected."""
        graph = MultiGraph.from_edges(edges, vertices=[0, 1, 2])
        with pytest.raises(PreconditionError):
            contract_edge(graph, u, v)


class TestIsForest:
    """Tests for is_forest."""

    @pytest.mark.parametrize(
        "graph,expected",
        [
            (MultiGraph.from_edges([]), True),
            (path_graph(5), True),
            (cycle_graph(3), False),
            (MultiGraph.from_edges([(0, 1), (0, 1)]), False),
            (MultiGraph.from_edges([(0, 0)]), False),
        ],
    )
    def test_is_forest(self, graph, expected):
        """Test that loops and parallel edges count as cycles."""
        assert is_forest(graph) is expected


class TestBlockCutForest:
    """Tests for block_cut_forest."""

    def test_bowtie(self):
        """Test that the bowtie has two triangle blocks around its centre."""
        forest = block_cut_forest(bowtie())
        assert len(forest.blocks) == 2
        assert forest.cut_vertices == frozenset({0})
        assert all(len(block) == 3 for block in forest.blocks)
        assert forest.kinds == (BlockKind.LEAF, BlockKind.LEAF)

    def test_path_blocks_are_edges(self):
        """Test that P4 has three bridge blocks, the middle one of degree two."""
        forest = block_cut_forest(path_graph(4))
        assert len(forest.blocks) == 3
        assert forest.cut_vertices == frozenset({1, 2})
        assert forest.kinds.count(BlockKind.DEGREE_TWO) == 1
        middle = forest.blocks.index(frozenset({1, 2}))
        assert forest.internal_vertices(middle) == frozenset()

    def test_blocks_share_at_most_one_vertex(self):
        """Test pairwise block intersections."""
        graph = MultiGraph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)])
        forest = block_cut_forest(graph)
        for i, a in enumerate(forest.blocks):
            for b in forest.blocks[i + 1 :]:
                assert len(a & b) <= 1


class TestTrueTwinClasses:
    """Tests for true_twin_classes."""

    def test_clique_is_one_class(self):
        """Test that all vertices of K4 are true twins."""
        assert true_twin_classes(complete_graph(4)) == [frozenset(range(4))]

    def test_path_has_no_twins_but_the_ends_of_p2(self):
        """Test twin classes on small paths."""
        assert true_twin_classes(path_graph(2)) == [frozenset({0, 1})]
        assert len(true_twin_classes(path_graph(3))) == 3

    def test_multigraph_rejected(self):
        """Test that parallel edges are refused."""
        with pytest.raises(PreconditionError):
            true_twin_classes(MultiGraph.from_edges([(0, 1), (0, 1)]))
