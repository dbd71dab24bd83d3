"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
them rather than bare ValueError where the distinction matters.
"""


class ConfigurationError(ValueError):
    """Invalid model, drive, grid, or state input."""


class NumericsError(ArithmeticError):
    """An integration or factorization produced non-finite or unusable values."""
