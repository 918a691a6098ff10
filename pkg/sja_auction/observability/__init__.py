"""Logging helpers."""

from .logging import ComputationLogger

__all__ = ["ComputationLogger"]
