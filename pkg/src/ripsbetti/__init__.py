"""Vietoris-Rips and quasi-Rips complexes, their Betti numbers over GF(p), and extremal constructions."""

__version__ = "0.1.0"
