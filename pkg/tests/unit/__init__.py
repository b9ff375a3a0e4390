"""Unit tests for stacksolve."""
