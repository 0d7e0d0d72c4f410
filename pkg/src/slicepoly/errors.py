"""Exception types raised across the package."""

__all__ = [
    "SlicePolyError",
    "RealQuaternion",
    "InvalidOrder",
    "InvalidSize",
    "NotOrthogonal",
    "OrderMismatch",
    "NoConvergence",
    "DomainMismatch",
    "OffSlicePoint",
    "DomainError",
    "OutsideRadius",
    "OutsideDisk",
    "OutsideBall",
]


class SlicePolyError(ValueError):
    """Base class for all package errors."""


class RealQuaternion(SlicePolyError):
    """A real quaternion has no preferred slice; a unit must be supplied."""


class InvalidOrder(SlicePolyError):
    """Polyanalytic order outside the supported range."""


class InvalidSize(SlicePolyError):
    """Quadrature size parameters out of range."""


class NotOrthogonal(SlicePolyError):
    """Two imaginary units expected to be orthogonal are not."""


class OrderMismatch(SlicePolyError):
    """Operands of a componentwise operation have different orders."""


class NoConvergence(SlicePolyError):
    """An adaptive series hit its term cap before reaching tolerance."""


class DomainMismatch(SlicePolyError):
    """A quadrature rule was used with an incompatible space."""


class OffSlicePoint(SlicePolyError):
    """A point does not lie on the slice required by the operation."""


class DomainError(SlicePolyError):
    """A point lies outside the region where a quantity is defined."""


class OutsideRadius(DomainError):
    """Series evaluated at or beyond its validity radius."""


class OutsideDisk(DomainError):
    """Complex point outside the open unit disk."""


class OutsideBall(DomainError):
    """Quaternion outside the open unit ball."""
