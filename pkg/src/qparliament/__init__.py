"""Open-system simulation of a small parliament of fermionic two-level voters."""

__version__ = "0.1.0"
