"""Test fixtures and golden files."""
