"""Slice inner products, reproducing-property residuals and norm checks.

Inner products are single-slice integrals.  The Fock measure is
``exp(-|p|^2) dx dy / pi`` (total mass 1); the Bergman measure is plain
Lebesgue measure on the unit disk of the slice.  Both are discretised by fixed
tensor rules, so every integral here is a deterministic weighted sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainMismatch, InvalidOrder, InvalidSize, OffSlicePoint, OutsideBall
from .kernels import bergman_kernel, fock_kernel
from .quaternion import (
    UNIT_I,
    Quaternion,
    as_qarray,
    as_unit,
    embed,
    on_slice,
    qabs,
    qconj,
    qmul,
)

__all__ = [
    "GAUSSIAN_PLANE",
    "UNIT_DISK",
    "QuadratureRule",
    "gauss_plane_rule",
    "disk_rule",
    "integrate",
    "fock_inner",
    "bergman_inner",
    "slice_norm",
    "reproduce_residual",
    "reproduce_residuals",
    "norm_equivalence_check",
    "growth_bound_check",
]

GAUSSIAN_PLANE = "gaussian_plane"
UNIT_DISK = "unit_disk"
NORM_EQUIV_SLACK = 1e-8


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes ``(x, y)`` on a slice plane with positive weights.

    For ``gaussian_plane`` the normalised Gaussian density is already folded
    into the weights.
    """

    domain: str
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if self.domain not in (GAUSSIAN_PLANE, UNIT_DISK):
            raise ValueError(f"unknown quadrature domain {self.domain!r}")
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 2 or weights.shape != (nodes.shape[0],):
            raise ValueError("nodes must be (n, 2) and weights (n,)")
        if not (np.all(np.isfinite(weights)) and np.all(weights > 0)):
            raise ValueError("weights must be positive and finite")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.weights.shape[0]

    def points(self, I) -> np.ndarray:
        """Nodes embedded as quaternions ``x + I y``."""
        return embed(as_unit(I), self.nodes[:, 0], self.nodes[:, 1])


def gauss_plane_rule(n: int) -> QuadratureRule:
    """``n x n`` Gauss-Hermite tensor rule for the weight ``exp(-x^2 - y^2) / pi``.

    Exact for polynomial integrands of degree ``<= 2n - 1`` in each variable.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InvalidSize(f"gauss_plane_rule needs n >= 2, got {n!r}")
    t, w = np.polynomial.hermite.hermgauss(int(n))
    X, Y = np.meshgrid(t, t, indexing="ij")
    W = np.outer(w, w) / math.pi
    return QuadratureRule(GAUSSIAN_PLANE, np.column_stack([X.ravel(), Y.ravel()]), W.ravel())


def disk_rule(nr: int, nt: int) -> QuadratureRule:
    """Unit-disk rule: Gauss-Legendre in ``s = r^2`` times the trapezoid rule in angle.

    With ``dA = ds dtheta / 2`` the rule integrates polynomials in ``(x, y)``
    of degree ``<= min(2 nr - 1, nt - 1)`` exactly.
    """
    if not isinstance(nr, (int, np.integer)) or not isinstance(nt, (int, np.integer)):
        raise InvalidSize("disk_rule sizes must be integers")
    if nr < 2 or nt < 4:
        raise InvalidSize(f"disk_rule needs nr >= 2 and nt >= 4, got ({nr}, {nt})")
    s, ws = np.polynomial.legendre.leggauss(int(nr))
    s = 0.5 * (s + 1.0)
    ws = 0.5 * ws
    r = np.sqrt(s)
    theta = 2.0 * math.pi * np.arange(nt) / nt
    R, T = np.meshgrid(r, theta, indexing="ij")
    W = np.outer(0.5 * ws, np.full(nt, 2.0 * math.pi / nt))
    nodes = np.column_stack([(R * np.cos(T)).ravel(), (R * np.sin(T)).ravel()])
    return QuadratureRule(UNIT_DISK, nodes, W.ravel())


def integrate(func, rule: QuadratureRule):
    """Weighted sum of a scalar (real or complex) function of ``(x, y)``."""
    vals = np.asarray(func(rule.nodes[:, 0], rule.nodes[:, 1]))
    return np.sum(vals * rule.weights)


def _inner(f, g, I, rule: QuadratureRule) -> np.ndarray:
    p = rule.points(I)
    fv = as_qarray(f(p))
    gv = as_qarray(g(p))
    return np.sum(qmul(qconj(gv), fv) * rule.weights[:, None], axis=0)


def fock_inner(f, g, I, rule: QuadratureRule) -> Quaternion:
    """``<f, g> = integral of conj(g) f`` over the slice of ``I`` against the Gaussian.

    ``f`` and ``g`` are callables on quaternion arrays.  The result is right
    linear in ``f`` and conjugate-linear in ``g``.
    """
    if rule.domain != GAUSSIAN_PLANE:
        raise DomainMismatch("fock_inner needs a gaussian_plane rule")
    return Quaternion.from_array(_inner(f, g, I, rule))


def bergman_inner(f, g, I, rule: QuadratureRule) -> Quaternion:
    """Same as ``fock_inner`` over the unit disk of the slice, Lebesgue measure."""
    if rule.domain != UNIT_DISK:
        raise DomainMismatch("bergman_inner needs a unit_disk rule")
    return Quaternion.from_array(_inner(f, g, I, rule))


def slice_norm(f, I, rule: QuadratureRule) -> float:
    """Norm of ``f`` on the slice of ``I`` for whichever measure ``rule`` carries."""
    p = rule.points(I)
    return float(math.sqrt(np.sum(qabs(as_qarray(f(p))) ** 2 * rule.weights)))


_SPACE_DOMAIN = {"fock": GAUSSIAN_PLANE, "bergman": UNIT_DISK}


def _check_space(space: str, rule: QuadratureRule) -> None:
    if space not in _SPACE_DOMAIN:
        raise ValueError(f"space must be 'fock' or 'bergman', got {space!r}")
    if rule.domain != _SPACE_DOMAIN[space]:
        raise DomainMismatch(f"{space} space needs a {_SPACE_DOMAIN[space]} rule")


def reproduce_residual(f, q, space: str, N: int, I, rule: QuadratureRule) -> float:
    """``|f(q) - <f, K(., q)>|`` with the integral taken over the slice of ``I``.

    ``q`` must lie on that slice.  ``f`` needs order at most ``N``.
    """
    return reproduce_residuals([f], q, space, N, I, rule)[0]


def reproduce_residuals(fs, q, space: str, N: int, I, rule: QuadratureRule) -> list[float]:
    """``reproduce_residual`` for several functions sharing one kernel evaluation."""
    _check_space(space, rule)
    I = as_unit(I)
    for f in fs:
        if getattr(f, "order", 1) > N:
            raise InvalidOrder(f"function of order {f.order} is not in the order-{N} space")
    q = Quaternion.from_array(as_qarray(q))
    if not on_slice(q, I):
        raise OffSlicePoint(f"{q!r} is not on the slice of {I.u!r}")
    if space == "bergman" and abs(q) >= 1.0:
        raise OutsideBall("Bergman evaluation point must satisfy |q| < 1")
    p = rule.points(I)
    qa = as_qarray(q)
    if space == "fock":
        K = fock_kernel(N, p, qa).value
    else:
        K = bergman_kernel(N, p, qa).value
    # conj(K) carries the weights once; each function then costs one product and a sum
    Kw = qconj(K) * rule.weights[:, None]
    out = []
    for f in fs:
        approx = np.sum(qmul(Kw, as_qarray(f(p))), axis=0)
        exact = as_qarray(f(qa[None, :]))[0]
        out.append(float(qabs(exact - approx)))
    return out


def norm_equivalence_check(f, I, J, rule: QuadratureRule) -> tuple[float, bool]:
    """Ratio ``||f||_J / ||f||_I`` of the Fock norms on two slices.

    ``within_bounds`` reports whether the ratio lies in ``[1/2, 2]`` up to a
    slack of 1e-8.
    """
    if rule.domain != GAUSSIAN_PLANE:
        raise DomainMismatch("norm_equivalence_check needs a gaussian_plane rule")
    nI = slice_norm(f, as_unit(I), rule)
    nJ = slice_norm(f, as_unit(J), rule)
    if nI == 0.0:
        ratio = 1.0 if nJ == 0.0 else math.inf
    else:
        ratio = nJ / nI
    return ratio, (0.5 - NORM_EQUIV_SLACK) <= ratio <= (2.0 + NORM_EQUIV_SLACK)


def growth_bound_check(f, q, space: str, rule: QuadratureRule) -> float:
    """``bound - |f(q)|`` for the pointwise estimate of the space.

    Fock: ``sqrt(N) exp(|q|^2/2) ||f||``.  Bergman: ``N ||f|| / (sqrt(pi) (1 - |q|^2))``.
    The norm is taken on the slice through ``q`` (``i`` for real ``q``).
    """
    _check_space(space, rule)
    q = Quaternion.from_array(as_qarray(q))
    mod = abs(q)
    if space == "bergman" and mod >= 1.0:
        raise OutsideBall("Bergman growth bound needs |q| < 1")
    v = q.vector
    y = float(np.linalg.norm(v))
    I = as_unit(v / y) if y > 0 else UNIT_I
    N = getattr(f, "order", 1)
    norm = slice_norm(f, I, rule)
    if space == "fock":
        bound = math.sqrt(N) * math.exp(mod**2 / 2.0) * norm
    else:
        bound = N * norm / (math.sqrt(math.pi) * (1.0 - mod**2))
    value = float(qabs(as_qarray(f(as_qarray(q)[None, :]))[0]))
    return bound - value
