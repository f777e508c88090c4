"""Desk-scale discovery pipeline for photo-acid generator cations."""

__version__ = "0.1.0"
