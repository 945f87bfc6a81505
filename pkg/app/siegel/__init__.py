"""Degree-2 Siegel upper half space: slash action, cosets, Eisenstein sums, operators."""
