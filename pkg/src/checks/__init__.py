"""Check registry and the helpers checks are written with."""
