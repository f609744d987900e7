"""Betti numbers of the middle HOMFLYPT homology of positive closed braids."""

__version__ = "0.1.0"
