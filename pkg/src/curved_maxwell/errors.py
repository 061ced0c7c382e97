"""Exception types raised across the package."""


class CoordinateError(ValueError):
    """Point lies on (or inside the guard band of) a coordinate singularity."""


class QuantizationError(ValueError):
    """S3 closed form requested at a frequency off the discrete spectrum."""


class ConvergenceError(ArithmeticError):
    """Hypergeometric series or ODE integration failed to converge."""


class AssemblyError(ValueError):
    """Field vector violates a structural constraint (non-zero auxiliary slot)."""
