"""Exact residue calculus for 2-torsion Brauer classes on double covers of the plane."""

__version__ = "0.1.0"
