"""Exact computations for Bessel newforms of Saito-Kurokawa representations."""

__version__ = "0.1.0"
