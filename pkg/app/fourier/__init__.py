"""Fourier-coefficient recursions, growth diagnostics and coefficient-ratio decay."""
