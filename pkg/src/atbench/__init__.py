"""Workbench for almost-toric base diagrams and their mutation combinatorics."""

__version__ = "0.1.0"
