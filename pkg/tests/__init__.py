"""Test suite for the SJA toolkit."""
