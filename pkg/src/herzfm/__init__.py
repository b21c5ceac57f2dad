"""Numerical toolkit for Herz-space Fourier multiplier analysis."""

__version__ = "0.1.0"
