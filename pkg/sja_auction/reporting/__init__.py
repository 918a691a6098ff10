"""Text rendering of command reports."""

from .text import TEMPLATES, render_text

__all__ = ["render_text", "TEMPLATES"]
