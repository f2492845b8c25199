"""Exception types raised across the package."""


class PositivityError(ValueError):
    """A function that must be strictly positive is not (or is too close to 0)."""


class UndefinedRatioError(ValueError):
    """A Rayleigh-type ratio has a vanishing denominator (constant function)."""


class QuadratureError(ValueError):
    """A quadrature rule was misused or an integrand is not finite."""


class ResolutionError(ValueError):
    """A truncated expansion does not resolve the function it represents."""
