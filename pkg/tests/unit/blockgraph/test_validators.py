"""Unit tests for command-line parameter validators."""

from blockgraph.validators import (
    validate_budget,
    validate_format,
    validate_probability,
    validate_profile,
    validate_vertex_count,
)


class TestValidateBudget:
    """Tests for validate_budget function."""

    def test_valid_budget(self):
        """Test validation passes for a non-negative integer."""
        is_valid, error = validate_budget("3")
        assert is_valid is True
        assert error == ""

    def test_zero_budget(self):
        """Test validation passes for k = 0."""
        is_valid, _ = validate_budget(0)
        assert is_valid is True

    def test_negative_budget(self):
        """Test validation fails for negative k."""
        is_valid, error = validate_budget(-1)
        assert is_valid is False
        assert "non-negative" in error

    def test_not_a_number(self):
        """Test validation fails for text."""
        is_valid, error = validate_budget("many")
        assert is_valid is False
        assert "valid integer" in error

    def test_none(self):
        """Test validation fails for a missing value."""
        is_valid, _ = validate_budget(None)
        assert is_valid is False


class TestValidateVertexCount:
    """Tests for validate_vertex_count function."""

    def test_valid_count(self):
        """Test validation passes for a plain count."""
        assert validate_vertex_count(12) == (True, "")

    def test_above_maximum(self):
        """Test validation fails above the given maximum."""
        is_valid, error = validate_vertex_count(20, maximum=10)
        assert is_valid is False
        assert "at most 10" in error

    def test_negative(self):
        """Test validation fails for a negative count."""
        is_valid, error = validate_vertex_count(-2)
        assert is_valid is False
        assert "non-negative" in error


class TestValidateProbability:
    """Tests for validate_probability function."""

    def test_bounds_are_valid(self):
        """Test that 0 and 1 are accepted."""
        assert validate_probability(0)[0] is True
        assert validate_probability("1.0")[0] is True

    def test_out_of_range(self):
        """Test validation fails outside [0, 1]."""
        is_valid, error = validate_probability(1.5)
        assert is_valid is False
        assert "between 0 and 1" in error

    def test_not_a_number(self):
        """Test validation fails for text."""
        is_valid, error = validate_probability("half")
        assert is_valid is False
        assert "valid number" in error


class TestValidateChoices:
    """Tests for validate_format and validate_profile."""

    def test_formats(self):
        """Test that json and text are the only formats."""
        assert validate_format("json") == (True, "")
        assert validate_format("text") == (True, "")
        is_valid, error = validate_format("xml")
        assert is_valid is False
        assert "json, text" in error

    def test_profiles(self):
        """Test that known profiles pass and unknown ones fail."""
        assert validate_profile("flower") == (True, "")
        is_valid, error = validate_profile("grid")
        assert is_valid is False
        assert "random-gnp" in error
