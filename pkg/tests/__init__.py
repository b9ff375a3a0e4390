"""Tests for stacksolve."""
