"""Exact arithmetic over Q(k): rational functions and truncated Laurent series."""
