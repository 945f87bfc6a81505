"""Jacobi group, skew-holomorphic Jacobi Eisenstein series and the limit process."""
