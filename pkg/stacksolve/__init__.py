"""Parse-and-solve toolkit for natural-language object-stacking problems."""

__version__ = "0.1.0"
