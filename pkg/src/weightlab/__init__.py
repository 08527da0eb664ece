"""Numerical workbench for weighted Bergman, Cauchy and square-function
estimates on the unit circle and disk."""

__version__ = "0.1.0"
