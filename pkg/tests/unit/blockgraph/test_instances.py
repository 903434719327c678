"""Unit tests for instance file parsing and writing."""

from fractions import Fraction

import pytest

from blockgraph.exceptions import InstanceFormatError
from blockgraph.graphs import MultiGraph, WeightedGraph
from blockgraph.instances import Instance, parse_instance, read_instance, serialize_instance

C4 = """c a hole
p bgvd 4 4
e 1 2
e 2 3
e 3 4
e 4 1
"""

WFVS = """p wfvs 3 4 1
e 1 2
e 1 2
e 2 3
e 3 3
w 2 5/2
w 3 0
"""


class TestParseInstance:
    """Tests for parse_instance."""

    def test_bgvd(self):
        """Test that vertices become 0-based and the budget is absent."""
        instance = parse_instance(C4, name="c4")
        assert instance.kind == "bgvd"
        assert instance.budget is None
        assert instance.name == "c4"
        assert instance.graph.vertices == frozenset(range(4))
        assert instance.graph.has_edge(3, 0)
        assert all(w == 1 for w in instance.weighted.weight.values())

    def test_wfvs(self):
        """Test multiplicities, loops, weights and the header budget."""
        instance = parse_instance(WFVS)
        assert instance.kind == "wfvs"
        assert instance.budget == 1
        assert instance.graph.multiplicity(0, 1) == 2
        assert instance.graph.loops(2) == 1
        assert instance.weighted.weight == {0: 1, 1: Fraction(5, 2), 2: 0}

    def test_isolated_vertices_kept(self):
        """Test that n counts vertices without edges."""
        instance = parse_instance("p bgvd 5 1\ne 1 2\n")
        assert len(instance.graph) == 5

    @pytest.mark.parametrize(
        "text, line, reason",
        [
            ("e 1 2\n", 1, "before the problem line"),
            ("p bgvd 2 1\ne 1 3\n", 2, "outside 1..2"),
            ("p bgvd 2 1\ne 1 x\n", 2, "must be an integer"),
            ("p bgvd 2 2\ne 1 2\ne 2 1\n", 3, "simple"),
            ("p bgvd 2 1\ne 1 1\n", 2, "simple"),
            ("p bgvd 3 2\ne 1 2\n", 1, "announces 2 edges"),
            ("p bgvd 2 0\np bgvd 2 0\n", 2, "duplicate problem line"),
            ("p tree 2 0\n", 1, "problem kind"),
            ("p wfvs 2 0\n", 1, "takes 3 numbers"),
            ("p wfvs 2 0 -1\n", 1, "k must be non-negative"),
            ("p bgvd 2 0\nw 1 3\n", 2, "only allowed in wfvs"),
            ("p wfvs 2 0 1\nw 1 -3\n", 2, "num/den"),
            ("p wfvs 2 0 1\nw 1 3/0\n", 2, "denominator"),
            ("p wfvs 2 0 1\nw 1 3\nw 1 4\n", 3, "duplicate weight"),
            ("p bgvd 2 0\nx 1\n", 2, "unknown record"),
            ("c nothing\n", 1, "missing problem line"),
        ],
    )
    def test_errors_name_the_line(self, text, line, reason):
        """Test that each malformed input reports its line number."""
        with pytest.raises(InstanceFormatError) as caught:
            parse_instance(text)
        assert caught.value.line == line
        assert reason in caught.value.reason

    def test_format_error_is_value_error(self):
        """Test that callers catching ValueError see format errors."""
        with pytest.raises(ValueError, match="line 1"):
            parse_instance("")


class TestSerializeInstance:
    """Tests for serialize_instance and read_instance."""

    def test_bgvd_text(self):
        """Test the exact text written for a path."""
        graph = MultiGraph.from_edges([(0, 1), (1, 2)])
        instance = Instance(kind="bgvd", weighted=WeightedGraph.uniform(graph))
        text = serialize_instance(instance, comments=("seed=1",))
        assert text == "c seed=1\np bgvd 3 2\ne 1 2\ne 2 3\n"

    def test_renumbers_gaps(self):
        """Test that a kernel with fresh ids is written as 1..n."""
        graph = MultiGraph.from_edges([(3, 7)], vertices=[3, 7, 9])
        instance = Instance(kind="bgvd", weighted=WeightedGraph.uniform(graph))
        parsed = parse_instance(serialize_instance(instance))
        assert len(parsed.graph) == 3
        assert parsed.graph.edge_count() == 1

    def test_wfvs_weights_survive(self):
        """Test that a parsed wfvs instance is written back equivalently."""
        instance = parse_instance(WFVS)
        again = parse_instance(serialize_instance(instance))
        assert again.budget == 1
        assert again.weighted.weight == instance.weighted.weight
        assert again.graph == instance.graph

    def test_read_instance_from_file(self, tmp_path):
        """Test that the file stem becomes the instance name."""
        path = tmp_path / "hole.txt"
        path.write_text(C4)
        instance = read_instance(str(path))
        assert instance.name == "hole"
        assert instance.graph.edge_count() == 4
