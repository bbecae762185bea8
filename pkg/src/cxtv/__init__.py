"""Exact certificates for complex central transversals and Tverberg-type partitions."""

__version__ = "0.1.0"
