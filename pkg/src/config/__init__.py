"""Configuration module for GenTree."""

from .settings import LOG_LEVELS, Settings, get_settings

__all__ = ["LOG_LEVELS", "Settings", "get_settings"]
