"""Weight-level and matrix-level computations with Lie powers of minimal modules."""

__version__ = "0.1.0"
