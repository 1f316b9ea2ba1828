"""Test package for hakencx."""
