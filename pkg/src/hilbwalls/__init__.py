"""Wall-and-chamber computations for Hilbert schemes of points on the
projective plane and its Sklyanin deformations."""

__version__ = "0.1.0"
