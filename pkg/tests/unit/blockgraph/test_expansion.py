"""Unit tests for the constructive q-expansion."""

import random

import pytest

from blockgraph.exceptions import PreconditionError
from blockgraph.expansion import expansion


def assert_expansion(q, found, neighbours):
    assert found.heads
    assert set(found.partners) == set(found.heads)
    used = [y for ys in found.partners.values() for y in ys]
    assert len(used) == len(set(used))
    for x, ys in found.partners.items():
        assert len(ys) == q
        assert all(x in neighbours[y] and y in found.tails for y in ys)
    for y in found.tails:
        assert set(neighbours[y]) <= found.heads


class TestExpansion:
    """Tests for expansion."""

    def test_star(self):
        """Test that one head with three leaves is its own expansion."""
        found = expansion(3, {"a"}, {1, 2, 3}, {1: {"a"}, 2: {"a"}, 3: {"a"}})
        assert found.heads == frozenset({"a"})
        assert sorted(found.partners["a"]) == [1, 2, 3]

    def test_shrinks_to_saturated_head(self):
        """Test that a head without enough private partners is dropped."""
        neighbours = {1: {"a"}, 2: {"a"}, 3: {"a"}, 4: {"a", "b"}, 5: {"a"}, 6: {"a"}}
        found = expansion(3, {"a", "b"}, set(neighbours), neighbours)
        assert found.heads == frozenset({"a"})
        assert_expansion(3, found, neighbours)

    def test_preconditions(self):
        """Test too few tails, isolated tails, empty heads, bad q and stray neighbours."""
        with pytest.raises(PreconditionError):
            expansion(3, {"a"}, {1, 2}, {1: {"a"}, 2: {"a"}})
        with pytest.raises(PreconditionError):
            expansion(1, {"a"}, {1, 2}, {1: {"a"}, 2: set()})
        with pytest.raises(PreconditionError):
            expansion(1, set(), {1}, {1: {"a"}})
        with pytest.raises(PreconditionError):
            expansion(0, {"a"}, {1}, {1: {"a"}})
        with pytest.raises(PreconditionError):
            expansion(1, {"a"}, {1}, {1: {"z"}})

    @pytest.mark.parametrize("seed", range(30))
    def test_random_bipartite_graphs(self, seed):
        """Test the expansion properties on random inputs."""
        rng = random.Random(seed)
        q = rng.randint(1, 3)
        heads = list(range(rng.randint(1, 5)))
        tails = [f"y{i}" for i in range(q * len(heads) + rng.randint(0, 4))]
        neighbours = {
            y: set(rng.sample(heads, rng.randint(1, min(2, len(heads))))) for y in tails
        }
        found = expansion(q, heads, tails, neighbours)
        assert_expansion(q, found, neighbours)
