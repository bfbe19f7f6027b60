"""Canonical bases of type-A Hecke algebras and tensor space, their projected
and seminormal variants, and the transition matrices between them."""

__version__ = "0.1.0"
