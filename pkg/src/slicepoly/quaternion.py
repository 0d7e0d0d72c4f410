"""Quaternion algebra and slice decomposition.

Two layers live here.  ``Quaternion`` is a small immutable value type for
scalar work; the ``q*`` functions operate on float arrays whose last axis has
length 4 (components over the basis ``1, i, j, k``) and broadcast like any
numpy ufunc.  Everything heavier in the package (series evaluation, kernels,
quadrature) runs on the array layer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import RealQuaternion, SlicePolyError

__all__ = [
    "Quaternion",
    "ImaginaryUnit",
    "SliceCoords",
    "UNIT_I",
    "UNIT_J",
    "UNIT_K",
    "as_qarray",
    "as_unit",
    "qmul",
    "qconj",
    "qabs",
    "qinv",
    "qpow",
    "conj",
    "modulus",
    "slice_coords",
    "embed",
    "orthogonal_unit",
    "on_slice",
]

UNIT_TOL = 1e-12


def as_qarray(q) -> np.ndarray:
    """Return ``q`` as a float array with trailing axis 4.

    Accepts a ``Quaternion``, a real scalar, or anything array-like whose last
    axis has length 4.
    """
    if isinstance(q, Quaternion):
        return np.array([q.x0, q.x1, q.x2, q.x3], dtype=float)
    if isinstance(q, ImaginaryUnit):
        return as_qarray(q.u)
    if isinstance(q, Real):
        return np.array([float(q), 0.0, 0.0, 0.0])
    arr = np.asarray(q, dtype=float)
    if arr.ndim == 0:
        return np.array([float(arr), 0.0, 0.0, 0.0])
    if arr.shape[-1] != 4:
        raise ValueError(f"quaternion arrays need a trailing axis of length 4, got {arr.shape}")
    return arr


def qmul(p, q) -> np.ndarray:
    """Hamilton product ``p q`` of quaternion arrays (broadcasting)."""
    p = as_qarray(p)
    q = as_qarray(q)
    a0, a1, a2, a3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    b0, b1, b2, b3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(np.broadcast_shapes(p.shape, q.shape))
    out[..., 0] = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
    out[..., 1] = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
    out[..., 2] = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
    out[..., 3] = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
    return out


def qconj(q) -> np.ndarray:
    q = as_qarray(q)
    out = -q
    out[..., 0] = q[..., 0]
    return out


def qabs(q) -> np.ndarray:
    return np.linalg.norm(as_qarray(q), axis=-1)


def qinv(q) -> np.ndarray:
    q = as_qarray(q)
    return qconj(q) / np.sum(q * q, axis=-1, keepdims=True)


def qpow(q, n: int) -> np.ndarray:
    """Non-negative integer power by repeated multiplication."""
    if n < 0:
        raise ValueError("qpow needs n >= 0")
    q = as_qarray(q)
    out = np.zeros_like(q)
    out[..., 0] = 1.0
    for _ in range(n):
        out = qmul(out, q)
    return out


@dataclass(frozen=True)
class Quaternion:
    """Quaternion ``x0 + x1 i + x2 j + x3 k`` with double-precision parts."""

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __post_init__(self):
        for name in ("x0", "x1", "x2", "x3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise SlicePolyError(f"quaternion component {name} is not finite")
            object.__setattr__(self, name, value)

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (4,):
            raise ValueError(f"expected shape (4,), got {arr.shape}")
        return cls(*arr.tolist())

    @property
    def real(self) -> float:
        return self.x0

    @property
    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x0, self.x1, self.x2, self.x3], dtype=dtype or float)

    def __iter__(self):
        yield from (self.x0, self.x1, self.x2, self.x3)

    def __repr__(self):
        return f"Quaternion({self.x0!r}, {self.x1!r}, {self.x2!r}, {self.x3!r})"

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            return other
        if isinstance(other, ImaginaryUnit):
            return other.u
        if isinstance(other, Real):
            return Quaternion(float(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quaternion(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a0, a1, a2, a3 = self
        b0, b1, b2, b3 = o
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Quaternion(*(c / other for c in self))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Quaternion(1.0)
        for _ in range(n):
            out = out * self
        return out

    def __abs__(self):
        return math.sqrt(self.x0**2 + self.x1**2 + self.x2**2 + self.x3**2)

    def conj(self) -> "Quaternion":
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def inverse(self) -> "Quaternion":
        n2 = self.x0**2 + self.x1**2 + self.x2**2 + self.x3**2
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        return self.conj() / n2

    def isclose(self, other, tol: float = 1e-12) -> bool:
        return abs(self - other) <= tol


@dataclass(frozen=True)
class ImaginaryUnit:
    """Unit purely imaginary quaternion; it squares to -1 and spans a slice."""

    u: Quaternion

    def __post_init__(self):
        u = self.u if isinstance(self.u, Quaternion) else Quaternion.from_array(as_qarray(self.u))
        object.__setattr__(self, "u", u)
        if abs(u.x0) > UNIT_TOL or abs(abs(u) - 1.0) > UNIT_TOL:
            raise SlicePolyError(f"{u!r} is not a unit imaginary quaternion")

    @classmethod
    def from_vector(cls, v) -> "ImaginaryUnit":
        """Normalise a nonzero 3-vector into an imaginary unit."""
        v = np.asarray(v, dtype=float)
        n = np.linalg.norm(v)
        if v.shape != (3,) or n == 0.0:
            raise SlicePolyError("need a nonzero 3-vector")
        v = v / n
        return cls(Quaternion(0.0, *v.tolist()))

    @property
    def vector(self) -> np.ndarray:
        return self.u.vector

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.u, dtype=dtype)

    def __neg__(self):
        return ImaginaryUnit(-self.u)

    def __mul__(self, other):
        return self.u * other

    def __rmul__(self, other):
        return other * self.u


UNIT_I = ImaginaryUnit(Quaternion(0.0, 1.0, 0.0, 0.0))
UNIT_J = ImaginaryUnit(Quaternion(0.0, 0.0, 1.0, 0.0))
UNIT_K = ImaginaryUnit(Quaternion(0.0, 0.0, 0.0, 1.0))

_NAMED_UNITS = {"i": UNIT_I, "j": UNIT_J, "k": UNIT_K}


def as_unit(obj) -> ImaginaryUnit:
    """Coerce ``'i'``/``'j'``/``'k'``, a 3-vector, or a quaternion into a unit."""
    if isinstance(obj, ImaginaryUnit):
        return obj
    if isinstance(obj, str):
        try:
            return _NAMED_UNITS[obj.strip().lower()]
        except KeyError:
            raise SlicePolyError(f"unknown unit name {obj!r}") from None
    if isinstance(obj, Quaternion):
        return ImaginaryUnit(obj)
    arr = np.asarray(obj, dtype=float)
    if arr.shape == (3,):
        return ImaginaryUnit(Quaternion(0.0, *arr.tolist()))
    return ImaginaryUnit(Quaternion.from_array(arr))


@dataclass(frozen=True)
class SliceCoords:
    """``q = x + unit * y`` with ``y >= 0``."""

    x: float
    y: float
    unit: ImaginaryUnit


def conj(q):
    """Quaternion conjugate; keeps the input kind (scalar or array)."""
    if isinstance(q, Quaternion):
        return q.conj()
    return qconj(q)


def modulus(q):
    if isinstance(q, Quaternion):
        return abs(q)
    return qabs(q)


def slice_coords(q) -> SliceCoords:
    """Decompose a non-real quaternion as ``x + I y`` with ``y > 0``.

    Raises
    ------
    RealQuaternion
        If ``Im(q) == 0``; real points lie on every slice, so the caller has to
        pick the unit.
    """
    q = q if isinstance(q, Quaternion) else Quaternion.from_array(as_qarray(q))
    v = q.vector
    y = float(np.linalg.norm(v))
    if y == 0.0:
        raise RealQuaternion(f"{q!r} is real; supply an imaginary unit explicitly")
    return SliceCoords(q.x0, y, ImaginaryUnit(Quaternion(0.0, *(v / y).tolist())))


def embed(I, x=None, y=None):
    """Return ``x + I y``.

    Also accepts a ``SliceCoords`` as the single argument.  With array ``x``
    and ``y`` the result is a quaternion array of the broadcast shape.
    """
    if isinstance(I, SliceCoords):
        I, x, y = I.unit, I.x, I.y
    I = as_unit(I)
    if np.ndim(x) == 0 and np.ndim(y) == 0:
        return Quaternion(float(x)) + I.u * float(y)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.zeros(x.shape + (4,))
    out[..., 0] = x
    out[..., 1:] = y[..., None] * I.vector
    return out


def orthogonal_unit(I) -> ImaginaryUnit:
    """Deterministic unit ``J`` orthogonal to ``I``.

    Gram-Schmidt against the first of ``i, j, k`` whose dot product with ``I``
    has magnitude below 0.9.
    """
    v = as_unit(I).vector
    for e in np.eye(3):
        d = float(e @ v)
        if abs(d) < 0.9:
            w = e - d * v
            return ImaginaryUnit.from_vector(w)
    raise AssertionError("unreachable: a unit vector cannot be 0.9-parallel to all axes")


def on_slice(q, I, tol: float = 1e-12) -> bool:
    """True when ``q`` lies on the slice ``R + R I``."""
    v = as_qarray(q)[..., 1:]
    e = as_unit(I).vector
    perp = v - np.asarray(v @ e)[..., None] * e
    scale = 1.0 + np.linalg.norm(as_qarray(q), axis=-1)
    return bool(np.all(np.linalg.norm(perp, axis=-1) <= tol * scale))
