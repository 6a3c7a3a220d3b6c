"""Errors and the tolerance spatial index."""
