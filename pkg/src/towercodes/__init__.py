"""Folded algebraic-geometry codes over Hermitian and Garcia-Stichtenoth towers,
with a linear-algebraic list decoder and subspace-evasive pre-coding."""

__version__ = "0.1.0"
