"""Unit tests for the SJA toolkit."""
