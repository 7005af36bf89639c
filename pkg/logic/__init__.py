"""Deterministic algorithms over the Birkhoff strata."""
