"""Exception types raised by circdini."""


class CircDiniError(Exception):
    """Base class for all package errors."""


class ParameterError(CircDiniError, ValueError):
    """Invalid geometric input (radius, dimension, step, ...)."""


class ConstraintError(ParameterError):
    """Integration constants violate the constraint of their regime."""


class IntegrationError(CircDiniError, RuntimeError):
    """The tractrix integrator left the unit sphere beyond tolerance."""


class SingularMetricError(CircDiniError, ArithmeticError):
    """A metric stencil touched a degenerate first fundamental form."""
