"""Exception types shared across the package.

The CLI maps these to distinct exit codes, so keep the hierarchy flat and
purpose-specific.
"""


class ConfigError(ValueError):
    """A run configuration is syntactically or semantically invalid."""


class InfeasibleBudgetError(ValueError):
    """The UAV energy budget cannot cover even a zero-flight mission."""


class NumericalError(ArithmeticError):
    """A numeric routine produced a value outside its provable error bound."""


class QuadratureError(NumericalError):
    """Adaptive quadrature failed to reach the requested tolerance."""
