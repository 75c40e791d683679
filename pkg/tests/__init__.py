"""Test suite for the K3 lattice obstruction toolkit."""
