"""Exception types shared across the curve/flow modules."""


class CurveError(ValueError):
    """Base class for invalid curve/grid/flow inputs."""


class GridTooShortError(CurveError):
    """Grid has too few nodes for the requested stencil or integration."""


class CoincidentPointsError(CurveError):
    """Two points that must stay apart have (nearly) collided."""


class SingularTangentError(CurveError):
    """A tangent vector is too close to zero to divide by."""


class NotArclengthPolarizedError(CurveError):
    """Polarization fails the arc-length condition 1/m = |x'|^2."""


class NonRegularError(CurveError):
    """A discrete curve has (nearly) collinear consecutive edges.

    Carries the offending vertex index in ``vertex``.
    """

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class BlowupError(RuntimeError):
    """Integration produced non-finite values.

    ``index`` is the grid index reached when the blow-up was detected.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
