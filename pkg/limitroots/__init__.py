"""Limit roots of infinite Coxeter root systems."""

__version__ = "1.0.0"
