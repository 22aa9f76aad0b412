"""Bound states and effective potentials of singular 1D potentials with a minimal length."""
