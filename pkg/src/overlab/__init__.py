"""Exact experiments with overpartition identities: enumeration, bijections and q-series."""

__version__ = "0.1.0"
