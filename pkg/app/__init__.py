"""Verification engine for harmonic Siegel-Maass forms and skew-Maass-Jacobi forms."""

__version__ = "0.1.0"
