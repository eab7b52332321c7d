"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or inconsistent scenario parameters."""


class UnsupportedModeCount(ConfigError):
    pass


class DimensionError(ValueError):
    pass


class UnphysicalStateError(ArithmeticError):
    """A density matrix left the physical set (trace, hermiticity, positivity)."""

    def __init__(self, message, time=None, diagnostic=None):
        super().__init__(message)
        self.time = time
        self.diagnostic = diagnostic


class JumpSchemeError(ArithmeticError):
    """Time step too coarse for the first-order jump scheme, or a jump with no support."""
