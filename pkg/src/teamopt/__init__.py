"""Exact optimisation toolkit for auto-chess team selection."""

__version__ = "0.1.0"
