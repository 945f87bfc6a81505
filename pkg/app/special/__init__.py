"""Hypergeometric series and numeric special functions."""
