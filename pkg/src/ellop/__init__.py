"""Exact differential calculus on polynomial algebras and their quotients."""

__version__ = "0.1.0"
