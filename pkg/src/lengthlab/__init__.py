"""Invariant length functions, bounded generation, and profile lattices
on finite and compact groups, verified at desk scale."""

__version__ = "0.1.0"
