"""Runs in binary words: lost positions, P_d and the N_d search."""

__version__ = "0.1.0"
