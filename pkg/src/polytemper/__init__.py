"""Polyhedral norms, Cartan projections and temperedness verdicts for locally symmetric spaces."""

__version__ = "0.1.0"
