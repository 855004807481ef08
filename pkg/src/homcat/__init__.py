"""Exact homology of representations of combinatorial categories."""
