"""Interval-arithmetic certificates for the Hopf branch of Wright's equation."""

__version__ = "0.1.0"
