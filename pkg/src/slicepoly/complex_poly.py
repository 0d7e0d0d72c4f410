"""Complex polyanalytic series and the classical polyanalytic Fock/Bergman kernels.

These serve as the oracle for the quaternionic kernels: restricted to one
slice, the quaternionic objects must reduce to what is computed here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidOrder, OutsideDisk

__all__ = [
    "DEFAULT_CAP",
    "MAX_BINOMIAL_N",
    "ComplexPolySeries",
    "binomial",
    "eval_complex_poly",
    "fock_kernel_c",
    "bergman_kernel_c",
]

DEFAULT_CAP = 32
MAX_BINOMIAL_N = 20


def binomial(n: int, k: int, limit: int = MAX_BINOMIAL_N) -> int:
    """Exact ``C(n, k)`` for ``0 <= n <= limit``; zero outside ``0 <= k <= n``."""
    if n < 0 or n > limit:
        raise InvalidOrder(f"binomial C({n}, {k}) outside supported range n <= {limit}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True, eq=False)
class ComplexPolySeries:
    """``f(z) = sum_k conj(z)**k * a_k(z)`` with truncated power series ``a_k``.

    ``coeffs[k, j]`` is the coefficient of ``conj(z)**k * z**j``.
    """

    coeffs: np.ndarray
    cap: int = field(default=DEFAULT_CAP, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, ndmin=2)
        if c.ndim != 2 or c.shape[0] < 1:
            raise InvalidOrder("a polyanalytic series needs at least one component")
        if c.shape[1] > self.cap:
            raise ValueError(f"{c.shape[1]} coefficients exceed the cap {self.cap}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def from_components(cls, components, cap: int = DEFAULT_CAP) -> "ComplexPolySeries":
        """Build from a ragged list of per-component coefficient lists."""
        components = [np.atleast_1d(np.asarray(a, dtype=complex)) for a in components]
        width = max(1, max(len(a) for a in components))
        c = np.zeros((len(components), width), dtype=complex)
        for k, a in enumerate(components):
            c[k, : len(a)] = a
        return cls(c, cap=cap)

    def __call__(self, z):
        return eval_complex_poly(self, z)


def eval_complex_poly(p: ComplexPolySeries, z):
    """Evaluate ``sum_k conj(z)**k * sum_j c[k, j] z**j`` (vectorised in ``z``)."""
    z = np.asarray(z, dtype=complex)
    zb = np.conj(z)
    total = np.zeros_like(z)
    # Horner in conj(z) over components, Horner in z inside each component
    for k in range(p.order - 1, -1, -1):
        inner = np.zeros_like(z)
        for c in p.coeffs[k, ::-1]:
            inner = inner * z + c
        total = total * zb + inner
    return total[()] if total.ndim == 0 else total


def _check_order(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidOrder(f"order must be an integer >= 1, got {n!r}")


def fock_kernel_c(n: int, z, w):
    """Polyanalytic Fock kernel of order ``n`` on the complex plane.

    Reproducing for the measure ``exp(-|z|^2) dA(z) / pi``.
    """
    _check_order(n)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    d2 = np.abs(z - w) ** 2
    poly = sum((-1) ** k * binomial(n, k + 1) * d2**k / math.factorial(k) for k in range(n))
    out = np.exp(np.conj(w) * z) * poly
    return out[()] if np.ndim(out) == 0 else out


def bergman_kernel_c(n: int, z, w):
    """Polyanalytic Bergman kernel of order ``n`` on the unit disk (Lebesgue measure)."""
    _check_order(n)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(z) >= 1.0) or np.any(np.abs(w) >= 1.0):
        raise OutsideDisk("Bergman kernel needs |z| < 1 and |w| < 1")
    one_minus = 1.0 - np.conj(w) * z
    a2 = np.abs(one_minus) ** 2
    d2 = np.abs(z - w) ** 2
    # python's 0.0**0 == 1.0 gives the coincident-point convention for free
    poly = sum(
        (-1) ** k * binomial(n, k + 1) * binomial(n + k, n) * a2 ** (n - 1 - k) * d2**k
        for k in range(n)
    )
    out = n / (math.pi * one_minus ** (2 * n)) * poly
    return out[()] if np.ndim(out) == 0 else out
