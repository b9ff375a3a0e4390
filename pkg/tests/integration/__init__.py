"""End-to-end tests for stacksolve."""
