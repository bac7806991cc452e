"""Exact quadratic form algebra over fields and semilocal rings, with odd-degree descent."""

__version__ = "0.1.0"
