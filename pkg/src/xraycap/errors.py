"""Exception types shared across the toolkit."""


class XraycapError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(XraycapError):
    """Operands live in different ambient dimensions."""


class DegenerateInputError(XraycapError):
    """Input lacks the affine/linear independence the operation requires."""

    def __init__(self, message, affine_dim=None):
        super().__init__(message)
        self.affine_dim = affine_dim


class NoHemisphereError(XraycapError):
    """Point set is not contained in any open hemisphere."""


class NotAFaceError(XraycapError):
    """Vertex subset does not identify a face of the polytope."""


class InvalidConfigError(XraycapError):
    """Antipodal configuration violates a structural invariant."""
