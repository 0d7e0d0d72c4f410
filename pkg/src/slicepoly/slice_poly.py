"""Slice regular and slice polyanalytic functions in truncated-series form.

A slice regular function on a ball centred at 0 is a power series
``sum_n q**n a_n`` with quaternion coefficients on the right.  An order-``N``
slice polyanalytic function is ``sum_{k<N} conj(q)**k f_k(q)`` with slice
regular ``f_k``.  Both are stored as coefficient arrays; ``coeffs[..., n, :]``
holds the quaternion multiplying ``q**n``.

Evaluation functions accept either a ``Quaternion`` (and return one) or a
quaternion array with trailing axis 4 (and return an array of the same shape).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .complex_poly import DEFAULT_CAP, ComplexPolySeries, binomial
from .errors import InvalidOrder, NotOrthogonal, OrderMismatch, OutsideRadius
from .quaternion import (
    ImaginaryUnit,
    Quaternion,
    as_qarray,
    as_unit,
    embed,
    orthogonal_unit,
    qabs,
    qconj,
    qmul,
)

__all__ = [
    "RegularSeries",
    "PolySliceFunction",
    "SliceComponents",
    "eval_regular",
    "eval_poly",
    "slice_derivative",
    "dbar_power_numeric",
    "default_step",
    "split",
    "representation_combine",
    "slice_components",
    "extend",
    "refined_split",
    "is_intrinsic",
    "star",
    "star_n",
    "fit_on_slice",
    "random_function",
    "to_json_dict",
    "from_json_dict",
    "dumps",
    "loads",
]

ORTHO_TOL = 1e-12
INTRINSIC_TOL = 1e-14


def _wrap(result: np.ndarray, like):
    if isinstance(like, Quaternion):
        return Quaternion.from_array(result)
    return result


def _check_radius(q: np.ndarray, radius: float) -> None:
    if math.isinf(radius):
        return
    if np.any(qabs(q) >= radius):
        raise OutsideRadius(f"evaluation point outside the validity radius {radius}")


@dataclass(frozen=True, eq=False)
class RegularSeries:
    """Truncated series ``sum_n q**n a_n`` (right coefficients).

    ``truncated`` records that some operation producing this series dropped
    nonzero terms beyond ``cap``.
    """

    coeffs: np.ndarray
    radius: float = math.inf
    cap: int = field(default=DEFAULT_CAP, compare=False)
    truncated: bool = field(default=False, compare=False)

    def __post_init__(self):
        c = np.array(as_qarray(self.coeffs), dtype=float, ndmin=2)
        if c.ndim != 2:
            raise ValueError("RegularSeries coefficients must have shape (M, 4)")
        if c.shape[0] == 0:
            c = np.zeros((1, 4))
        if c.shape[0] > self.cap:
            raise ValueError(f"{c.shape[0]} coefficients exceed the cap {self.cap}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def constant(cls, a, radius: float = math.inf) -> "RegularSeries":
        return cls(as_qarray(a)[None, :], radius=radius)

    @classmethod
    def zero(cls, radius: float = math.inf) -> "RegularSeries":
        return cls(np.zeros((1, 4)), radius=radius)

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient (0 for the zero series)."""
        nz = np.flatnonzero(np.any(self.coeffs != 0.0, axis=1))
        return int(nz[-1]) if nz.size else 0

    def __call__(self, q):
        return eval_regular(self, q)


def eval_regular(s: RegularSeries, q):
    """Horner evaluation of ``sum_n q**n a_n``."""
    qa = as_qarray(q)
    _check_radius(qa, s.radius)
    c = s.coeffs[: s.degree + 1]
    acc = np.broadcast_to(c[-1], qa.shape).copy()
    for a in c[-2::-1]:
        acc = qmul(qa, acc) + a
    return _wrap(acc, q)


@dataclass(frozen=True, eq=False)
class PolySliceFunction:
    """``f(q) = sum_{k<N} conj(q)**k f_k(q)`` with ``N = len(components)``."""

    components: tuple

    def __post_init__(self):
        comps = tuple(
            c if isinstance(c, RegularSeries) else RegularSeries(c) for c in self.components
        )
        if len(comps) < 1:
            raise InvalidOrder("order must be >= 1")
        object.__setattr__(self, "components", comps)
        width = max(c.coeffs.shape[0] for c in comps)
        tensor = np.zeros((len(comps), width, 4))
        for k, c in enumerate(comps):
            tensor[k, : c.coeffs.shape[0]] = c.coeffs
        tensor.setflags(write=False)
        object.__setattr__(self, "_tensor", tensor)

    @classmethod
    def from_tensor(cls, coeffs, radius: float = math.inf, cap: int = DEFAULT_CAP):
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.ndim != 3 or coeffs.shape[-1] != 4:
            raise ValueError("expected a coefficient tensor of shape (N, M, 4)")
        return cls(tuple(RegularSeries(c, radius=radius, cap=cap) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.components)

    @property
    def radius(self) -> float:
        return min(c.radius for c in self.components)

    @property
    def truncated(self) -> bool:
        return any(c.truncated for c in self.components)

    @property
    def coeffs(self) -> np.ndarray:
        """Zero-padded coefficient tensor of shape ``(N, M, 4)``."""
        return self._tensor

    def __call__(self, q):
        return eval_poly(self, q)


def eval_poly(f: PolySliceFunction, q):
    """Evaluate ``sum_k conj(q)**k f_k(q)``."""
    qa = as_qarray(q)
    _check_radius(qa, f.radius)
    qb = qconj(qa)
    acc = eval_regular(f.components[-1], qa)
    for comp in f.components[-2::-1]:
        acc = qmul(qb, acc) + eval_regular(comp, qa)
    return _wrap(acc, q)


def slice_derivative(s: RegularSeries) -> RegularSeries:
    c = s.coeffs
    if c.shape[0] <= 1:
        return RegularSeries.zero(radius=s.radius)
    n = np.arange(1, c.shape[0])[:, None]
    return RegularSeries(n * c[1:], radius=s.radius, cap=s.cap)


# Largest step sizes keep round-off ~ eps/h**order below the truncation error.
_DEFAULT_STEPS = {1: 1e-3, 2: 4e-3, 3: 1e-2, 4: 1.5e-2}


def default_step(order: int) -> float:
    return _DEFAULT_STEPS.get(order, 2e-2)


def _central_weights(n: int) -> list[tuple[float, float]]:
    """(offset in units of h, weight) for the n-th central difference."""
    return [(n / 2.0 - i, (-1) ** i * binomial(n, i)) for i in range(n + 1)]


def _dbar_once(f, I: ImaginaryUnit, x: np.ndarray, y: np.ndarray, order: int, h: float) -> np.ndarray:
    # (1/2^N) sum_k C(N,k) I^k d^N f / dx^(N-k) dy^k, every partial by central differences
    ox, oy, ws, ks = [], [], [], []
    for k in range(order + 1):
        c = binomial(order, k)
        for dx, wx in _central_weights(order - k):
            for dy, wy in _central_weights(k):
                ox.append(dx * h)
                oy.append(dy * h)
                ws.append(c * wx * wy)
                ks.append(k)
    pts = embed(I, x[:, None] + np.array(ox), y[:, None] + np.array(oy))
    vals = np.asarray(f(pts.reshape(-1, 4)), dtype=float).reshape(pts.shape)
    vals = vals * np.array(ws)[:, None]
    ks = np.array(ks)
    total = np.zeros(x.shape + (4,))
    Ik = np.array([1.0, 0.0, 0.0, 0.0])
    Iq = as_qarray(I)
    for k in range(order + 1):
        total += qmul(Ik, vals[:, ks == k].sum(axis=1))
        Ik = qmul(Iq, Ik)
    return total / (2.0**order * h**order)


def dbar_power_numeric(
    f: Callable,
    I,
    x: float,
    y: float,
    order: int,
    h: float | None = None,
    richardson: bool = True,
) -> Quaternion | np.ndarray:
    """Finite-difference approximation of the order-th power of the slice
    Cauchy-Riemann operator applied to ``f`` restricted to the slice of ``I``.

    Parameters
    ----------
    f : callable
        Takes a quaternion array of shape ``(m, 4)`` and returns values of the
        same shape.  ``RegularSeries`` and ``PolySliceFunction`` qualify.
    I : ImaginaryUnit
        Slice on which the derivative is taken; ``I`` multiplies the partial
        derivatives from the left.
    x, y : float or array_like
        Evaluation points ``x + I y``; arrays give an ``(n, 4)`` result.
    order : int
        Power of the operator, 1..4 are supported.
    h : float, optional
        Base step.  Defaults to an order-dependent value from ``default_step``.
    richardson : bool
        Combine steps ``h`` and ``h/2`` to cancel the ``O(h**2)`` error term.
    """
    if not 1 <= order <= 4:
        raise InvalidOrder("dbar_power_numeric supports orders 1..4")
    I = as_unit(I)
    h = default_step(order) if h is None else float(h)
    if not h > 0:
        raise ValueError("step h must be positive")
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    xa, ya = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=float)), np.atleast_1d(np.asarray(y, dtype=float)))
    xa, ya = xa.ravel(), ya.ravel()
    coarse = _dbar_once(f, I, xa, ya, order, h)
    if richardson:
        fine = _dbar_once(f, I, xa, ya, order, h / 2.0)
        coarse = (4.0 * fine - coarse) / 3.0
    return Quaternion.from_array(coarse[0]) if scalar else coarse


def _check_orthogonal(I: ImaginaryUnit, J: ImaginaryUnit) -> None:
    if abs(float(I.vector @ J.vector)) > ORTHO_TOL:
        raise NotOrthogonal(f"{I.u!r} and {J.u!r} are not orthogonal")


def _basis_readout(coeffs: np.ndarray, I: ImaginaryUnit, J: ImaginaryUnit) -> np.ndarray:
    """Real components of each quaternion in the basis ``1, I, J, IJ``."""
    K = np.cross(I.vector, J.vector)
    v = coeffs[..., 1:]
    return np.stack([coeffs[..., 0], v @ I.vector, v @ J.vector, v @ K], axis=-1)


def split(f: PolySliceFunction, I, J) -> tuple[ComplexPolySeries, ComplexPolySeries]:
    """Complex polyanalytic ``F, G`` with ``f(z) = F(z) + G(z) J`` on the slice of ``I``.

    The slice ``R + R I`` is identified with the complex plane by ``I -> 1j``.
    """
    I, J = as_unit(I), as_unit(J)
    _check_orthogonal(I, J)
    a = _basis_readout(f.coeffs, I, J)
    F = ComplexPolySeries(a[..., 0] + 1j * a[..., 1])
    G = ComplexPolySeries(a[..., 2] + 1j * a[..., 3])
    return F, G


def refined_split(f: PolySliceFunction, I, J) -> tuple[ComplexPolySeries, ...]:
    """Four real-coefficient series with ``f(z) = psi0 + psi1 I + psi2 J + psi3 IJ``."""
    I, J = as_unit(I), as_unit(J)
    _check_orthogonal(I, J)
    a = _basis_readout(f.coeffs, I, J)
    return tuple(ComplexPolySeries(a[..., l].astype(complex)) for l in range(4))


def representation_combine(fJ_plus, fJ_minus, I, J):
    """Value at ``x + I y`` from the values at ``x + J y`` and ``x - J y``."""
    I, J = as_unit(I), as_unit(J)
    p = as_qarray(fJ_plus)
    m = as_qarray(fJ_minus)
    IJ = qmul(I, J)
    out = 0.5 * (p + m) + 0.5 * qmul(IJ, m - p)
    return _wrap(out, fJ_plus)


@dataclass(frozen=True)
class SliceComponents:
    """Pair with ``f(x + I y) = alpha + I beta`` for every unit ``I``."""

    alpha: Quaternion
    beta: Quaternion


def slice_components(f, K, x: float, y: float) -> SliceComponents:
    K = as_unit(K)
    plus = as_qarray(f(embed(K, np.array([x]), np.array([y]))))[0]
    minus = as_qarray(f(embed(K, np.array([x]), np.array([-y]))))[0]
    alpha = 0.5 * (plus + minus)
    beta = 0.5 * qmul(K, minus - plus)
    return SliceComponents(Quaternion.from_array(alpha), Quaternion.from_array(beta))


def _as_complex_tensor(h) -> np.ndarray:
    if isinstance(h, ComplexPolySeries):
        return h.coeffs
    comps = [np.atleast_1d(np.asarray(c, dtype=complex)) for c in h]
    return ComplexPolySeries.from_components(comps).coeffs


def extend(h, I, g=None, J=None, radius: float = math.inf) -> PolySliceFunction:
    """Slice polyanalytic extension of data given on the slice of ``I``.

    ``h`` lists the holomorphic components ``h_k`` of ``sum_k conj(z)**k h_k(z)``,
    either as a ``ComplexPolySeries`` or as per-component coefficient lists.
    A coefficient ``a + b*1j`` becomes the quaternion ``a + b I``.  For
    quaternion-valued data pass the second half of the splitting ``F + G J`` as
    ``g`` together with ``J``.
    """
    I = as_unit(I)
    hc = _as_complex_tensor(h)
    out = np.zeros(hc.shape + (4,))
    out[..., 0] = hc.real
    out[..., 1:] = hc.imag[..., None] * I.vector
    if g is not None:
        if J is None:
            raise ValueError("extend needs J when g is given")
        J = as_unit(J)
        gc = _as_complex_tensor(g)
        width = max(hc.shape[1], gc.shape[1])
        if gc.shape[0] != hc.shape[0]:
            raise OrderMismatch("h and g must have the same order")
        pad = np.zeros((hc.shape[0], width, 4))
        pad[:, : out.shape[1]] = out
        gq = np.zeros((gc.shape[0], width, 4))
        gq[:, : gc.shape[1], 0] = gc.real
        gq[:, : gc.shape[1], 1:] = gc.imag[..., None] * I.vector
        out = pad + qmul(gq, as_qarray(J))
    return PolySliceFunction.from_tensor(out, radius=radius)


def is_intrinsic(f, tol: float = INTRINSIC_TOL) -> bool:
    """True when every coefficient is real (the function preserves each slice)."""
    if isinstance(f, ComplexPolySeries):
        return bool(np.all(np.abs(f.coeffs.imag) <= tol))
    c = f.coeffs
    return bool(np.all(np.abs(c[..., 1:]) <= tol))


def star(a: RegularSeries, b: RegularSeries) -> RegularSeries:
    """Regular product: ``c_n = sum_{p+m=n} a_p b_m`` with order kept."""
    cap = min(a.cap, b.cap)
    full = a.coeffs.shape[0] + b.coeffs.shape[0] - 1
    c = np.zeros((full, 4))
    for p, ap in enumerate(a.coeffs):
        c[p : p + b.coeffs.shape[0]] += qmul(ap, b.coeffs)
    truncated = a.truncated or b.truncated
    if full > cap:
        truncated = truncated or bool(np.any(c[cap:] != 0.0))
        c = c[:cap]
    return RegularSeries(c, radius=min(a.radius, b.radius), cap=cap, truncated=truncated)


def star_n(f: PolySliceFunction, g: PolySliceFunction) -> PolySliceFunction:
    """Componentwise ``sum_k conj(q)**k (f_k * g_k)(q)``."""
    if f.order != g.order:
        raise OrderMismatch(f"orders differ: {f.order} vs {g.order}")
    return PolySliceFunction(tuple(star(a, b) for a, b in zip(f.components, g.components)))


def fit_on_slice(
    points, values, order: int, degree: int, I, J=None, radius: float = math.inf
) -> PolySliceFunction:
    """Recover coefficients from samples taken on one slice.

    ``points`` are ``(x, y)`` pairs on the slice of ``I``; ``values`` the
    quaternion values there.  Solves the (least-squares) Vandermonde system
    for the ``order * (degree + 1)`` unknown coefficients.
    """
    I = as_unit(I)
    J = orthogonal_unit(I) if J is None else as_unit(J)
    _check_orthogonal(I, J)
    pts = np.asarray(points, dtype=float)
    z = pts[:, 0] + 1j * pts[:, 1]
    vander = np.stack(
        [np.conj(z) ** k * z**n for k in range(order) for n in range(degree + 1)], axis=1
    )
    v = _basis_readout(as_qarray(values), I, J)
    rhs = np.stack([v[:, 0] + 1j * v[:, 1], v[:, 2] + 1j * v[:, 3]], axis=1)
    sol, *_ = np.linalg.lstsq(vander, rhs, rcond=None)
    F = sol[:, 0].reshape(order, degree + 1)
    G = sol[:, 1].reshape(order, degree + 1)
    return extend(ComplexPolySeries(F), I, ComplexPolySeries(G), J, radius=radius)


def random_function(
    rng: np.random.Generator, order: int, degree: int, radius: float = math.inf
) -> PolySliceFunction:
    """Components with coefficients uniform in ``[-1, 1]**4`` up to ``degree``."""
    coeffs = rng.uniform(-1.0, 1.0, size=(order, degree + 1, 4))
    return PolySliceFunction.from_tensor(coeffs, radius=radius)


# -- serialization ----------------------------------------------------------


def to_json_dict(f) -> dict:
    """JSON shape ``{"order", "components", "radius"}``; a ``RegularSeries`` is order 1."""
    if isinstance(f, RegularSeries):
        f = PolySliceFunction((f,))
    radius = f.radius
    return {
        "order": f.order,
        "components": [c.coeffs.tolist() for c in f.components],
        "radius": "inf" if math.isinf(radius) else radius,
    }


def from_json_dict(d: dict) -> PolySliceFunction:
    radius = d.get("radius", "inf")
    radius = math.inf if radius == "inf" else float(radius)
    comps = d["components"]
    if len(comps) != d["order"]:
        raise ValueError(f"order {d['order']} does not match {len(comps)} components")
    return PolySliceFunction(tuple(RegularSeries(np.asarray(c, dtype=float).reshape(-1, 4), radius=radius) for c in comps))


def dumps(f) -> str:
    return json.dumps(to_json_dict(f))


def loads(text: str) -> PolySliceFunction:
    return from_json_dict(json.loads(text))
