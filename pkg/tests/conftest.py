"""Anchors the test directory so sibling helper modules import by name."""
