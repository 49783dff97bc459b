"""Labeled cubical homology workbench for higher-dimensional automata."""

__version__ = "0.1.0"
