"""Configuration for the SJA toolkit."""

from .settings import SJASettings, get_settings, load_settings, reset_settings

__all__ = ["SJASettings", "get_settings", "load_settings", "reset_settings"]
