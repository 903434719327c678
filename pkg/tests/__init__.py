"""Tests for the blockgraph app."""
