"""Unit tests for result records."""

import json
from fractions import Fraction

import pytest

from blockgraph.exceptions import InvariantViolation
from blockgraph.generators import cycle_graph, diamond
from blockgraph.reports import (
    build_record,
    certify_block_deletion,
    certify_feedback_set,
    format_weight,
    render_json,
    render_text,
    without_timing,
)


class TestCertify:
    """Tests for the witness certificates."""

    def test_block_deletion(self):
        """Test that one C4 vertex certifies and nothing does not."""
        assert certify_block_deletion(cycle_graph(4), {2}) is True
        assert certify_block_deletion(cycle_graph(4), set()) is False

    def test_diamond_any_vertex(self):
        """Test that deleting either kind of diamond vertex certifies."""
        assert certify_block_deletion(diamond(), {2}) is True
        assert certify_block_deletion(diamond(), {0}) is True

    def test_feedback_set(self):
        """Test the forest check on a triangle."""
        assert certify_feedback_set(cycle_graph(3), {0}) is True
        assert certify_feedback_set(cycle_graph(3), set()) is False


class TestBuildRecord:
    """Tests for build_record and rendering."""

    def test_witness_is_one_based_and_sorted(self):
        """Test that internal ids are shifted to file numbering."""
        record = build_record("c4", "solve", {"k": 1}, "yes", witness={3, 0})
        assert record.witness == [1, 4]
        assert record.certified is True

    def test_no_witness(self):
        """Test that a No answer carries an empty witness."""
        record = build_record("c4", "solve", {"k": 0}, "no")
        assert record.witness == []
        assert record.statistics == {}

    def test_uncertified_raises(self):
        """Test that an uncertified witness never becomes a record."""
        with pytest.raises(InvariantViolation):
            build_record("c4", "solve", {"k": 1}, "yes", witness={0}, certified=False)

    def test_json_keys(self):
        """Test the JSON object written for each command."""
        record = build_record("c4", "solve", {"k": 1}, "yes", witness={0}, statistics={"a": 1})
        payload = json.loads(render_json(record))
        assert set(payload) == {
            "instance",
            "command",
            "parameters",
            "verdict",
            "witness",
            "certified",
            "statistics",
        }
        assert payload["witness"] == [1]

    def test_text(self):
        """Test the human-readable rendering."""
        record = build_record("c4", "approx", {}, "approximate", witness=set())
        text = render_text(record)
        assert "verdict:   approximate" in text
        assert "witness:   -" in text

    def test_format_weight(self):
        """Test that weights are written as exact fractions."""
        assert format_weight(Fraction(5, 2)) == "5/2"
        assert format_weight(Fraction(3)) == "3/1"

    def test_without_timing(self):
        """Test that only the timing statistic is dropped."""
        payload = {"verdict": "yes", "statistics": {"elapsed_seconds": 0.2, "nodes": 4}}
        assert without_timing(payload) == {"verdict": "yes", "statistics": {"nodes": 4}}
