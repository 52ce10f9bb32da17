"""Exact verification of Z2-contractions of symmetric pairs and their coadjoint invariants."""

__version__ = "0.1.0"
