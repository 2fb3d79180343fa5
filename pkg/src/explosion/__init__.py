"""Principles of explosion and notions of paraconsistency, checked on concrete logics."""

__version__ = "0.1.0"
