"""Keeps the tests directory importable so suites can share oracles."""
