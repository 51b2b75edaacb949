"""Parity cycles, quasi-indices and derived parities of virtual knots."""
__version__ = "0.1.0"
