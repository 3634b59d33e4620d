"""Exact verification toolkit for radicals of kernels of differential operators."""

__version__ = "0.1.0"
