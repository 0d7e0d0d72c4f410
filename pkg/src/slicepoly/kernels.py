"""Reproducing kernels of the slice polyanalytic Fock and Bergman spaces.

All kernels are vectorised: ``q`` and ``r`` may be ``Quaternion`` values or
quaternion arrays that broadcast against each other.  The value in the
returned ``KernelValue`` is a ``Quaternion`` when the inputs were scalars.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .complex_poly import binomial
from .errors import InvalidOrder, NoConvergence, OutsideBall
from .quaternion import Quaternion, as_qarray, qabs, qconj, qmul

__all__ = [
    "KernelValue",
    "MAX_FOCK_ORDER",
    "MAX_BERGMAN_ORDER",
    "e_star",
    "laguerre",
    "fock_kernel",
    "bergman_psi",
    "bergman_kernel",
    "bergman_kernel_alt",
    "slice_power",
]

E_STAR_TOL = 1e-14
E_STAR_MAX_TERMS = 512
MAX_FOCK_ORDER = 20
MAX_BERGMAN_ORDER = 10


@dataclass(frozen=True)
class KernelValue:
    """Kernel value with series diagnostics.

    ``truncation_error_bound`` is relative: a bound on the neglected tail of
    the series divided by ``1 + |value|`` (worst case over array inputs).
    Closed-form kernels report ``terms_used = 0`` and a zero bound.
    """

    value: object
    terms_used: int
    truncation_error_bound: float


def _is_scalar_input(*qs) -> bool:
    return all(isinstance(q, (Quaternion, int, float)) for q in qs)


def _pack(arr: np.ndarray, *inputs):
    if _is_scalar_input(*inputs) and arr.shape == (4,):
        return Quaternion.from_array(arr)
    return arr


def e_star(p, q, tol: float = E_STAR_TOL, max_terms: int = E_STAR_MAX_TERMS) -> KernelValue:
    """Regular exponential kernel ``sum_n p**n conj(q)**n / n!``.

    Summation stops once the geometric tail bound drops below
    ``tol * (1 + |partial sum|)`` at every point.

    Raises
    ------
    NoConvergence
        If ``max_terms`` terms do not suffice (``|p||q|`` too large for ``tol``).
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    pa, qa = np.broadcast_arrays(as_qarray(p), as_qarray(q))
    qb = qconj(qa)
    a = qabs(pa) * qabs(qa)
    term = np.zeros(pa.shape)
    term[..., 0] = 1.0
    total = term.copy()
    mag = np.ones(a.shape)
    tail = np.full(a.shape, np.inf)
    done = np.zeros(a.shape, dtype=bool)
    n = 0
    while True:
        # |term_n| = a**n / n! exactly; once n + 2 > a the tail is below a geometric series
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = a / (n + 2)
            bound = np.where(ratio < 1, mag * (a / (n + 1)) / (1 - ratio), np.inf)
        bound = np.where(a == 0, 0.0, bound)
        with np.errstate(over="ignore"):
            size = qabs(total)
        if not np.all(np.isfinite(size)):
            raise NoConvergence(f"e_star overflowed (|p||q| up to {a.max():.3g})")
        newly = ~done & (bound <= tol * (1.0 + size))
        tail = np.where(newly, bound, tail)
        done |= newly
        if done.all():
            break
        n += 1
        if n >= max_terms:
            raise NoConvergence(
                f"e_star did not reach tol={tol} within {max_terms} terms (|p||q| up to {a.max():.3g})"
            )
        term = qmul(qmul(pa, term), qb) / n
        mag = mag * a / n
        with np.errstate(over="ignore", invalid="ignore"):
            total = np.where(done[..., None], total, total + term)
    rel = float(np.max(tail / (1.0 + qabs(total)))) if tail.size else 0.0
    return KernelValue(_pack(total, p, q), n + 1, rel)


def laguerre(alpha: int, j: int, x):
    """Generalized Laguerre polynomial ``L_j^alpha(x)`` from its finite sum."""
    if alpha < 0 or j < 0:
        raise ValueError("laguerre needs alpha >= 0 and j >= 0")
    x = np.asarray(x, dtype=float)
    out = sum((-1) ** i * math.comb(j + alpha, j - i) * x**i / math.factorial(i) for i in range(j + 1))
    out = np.asarray(out, dtype=float) + np.zeros_like(x)
    return float(out) if out.ndim == 0 else out


def _check_order(N: int, limit: int) -> None:
    if not isinstance(N, (int, np.integer)) or not 1 <= N <= limit:
        raise InvalidOrder(f"order must be an integer in 1..{limit}, got {N!r}")


def fock_kernel(N: int, q, r, tol: float = E_STAR_TOL) -> KernelValue:
    """Fock kernel ``e_*(q conj(r)) L^1_{N-1}(|q - r|^2)``.

    The Laguerre factor is real, so its placement does not matter.
    """
    _check_order(N, MAX_FOCK_ORDER)
    e = e_star(q, r, tol=tol)
    qa, ra = as_qarray(q), as_qarray(r)
    lag = laguerre(1, N - 1, qabs(qa - ra) ** 2)
    val = as_qarray(e.value) * np.asarray(lag)[..., None]
    return KernelValue(_pack(val, q, r), e.terms_used, e.truncation_error_bound)


def slice_power(b, n: int) -> np.ndarray:
    """Integer power (possibly negative) of ``b`` computed inside the slice containing ``b``.

    Each quaternion ``b = x + I y`` lies in the commutative slice of ``I``; the
    power is taken as a complex power there and embedded back.
    """
    b = as_qarray(b)
    v = b[..., 1:]
    y = np.linalg.norm(v, axis=-1)
    z = (b[..., 0] + 1j * y) ** n
    out = np.empty(b.shape)
    out[..., 0] = z.real
    with np.errstate(divide="ignore", invalid="ignore"):
        unit = np.where(y[..., None] > 0, v / y[..., None], 0.0)
    out[..., 1:] = z.imag[..., None] * unit
    return out


def _check_ball(*qs) -> None:
    for q in qs:
        if np.any(qabs(as_qarray(q)) >= 1.0):
            raise OutsideBall("Bergman kernels need |q| < 1 and |r| < 1")


def bergman_psi(N: int, q, r):
    """Real factor ``sum_k (-1)^k C(N,k+1) C(N+k,N) |1 - conj(r) q|^(2(N-1-k)) |q - r|^(2k)``."""
    _check_order(N, MAX_BERGMAN_ORDER)
    qa, ra = np.broadcast_arrays(as_qarray(q), as_qarray(r))
    one = np.zeros(qa.shape)
    one[..., 0] = 1.0
    a2 = qabs(one - qmul(qconj(ra), qa)) ** 2
    d2 = qabs(qa - ra) ** 2
    # numpy's 0.0**0 == 1.0 supplies the 0^0 = 1 convention
    out = sum(
        (-1) ** k * binomial(N, k + 1) * binomial(N + k, N) * a2 ** (N - 1 - k) * d2**k
        for k in range(N)
    )
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def _binomial_poly(N: int, x, y) -> np.ndarray:
    """``(N/pi) sum_{k<=2N} (-1)^k C(2N,k) x^k y^k`` with all products in that order."""
    x, y = np.broadcast_arrays(as_qarray(x), as_qarray(y))
    xp = np.zeros(x.shape)
    xp[..., 0] = 1.0
    yp = xp.copy()
    total = np.zeros(x.shape)
    for k in range(2 * N + 1):
        total += (-1) ** k * binomial(2 * N, k) * qmul(xp, yp)
        xp = qmul(xp, x)
        yp = qmul(yp, y)
    return N / math.pi * total


def bergman_kernel(N: int, q, r) -> KernelValue:
    """Bergman kernel of the second kind, ``P_N(q,r) Q_N(q,r) psi_N(q,r)``.

    ``P_N = (N/pi) sum_k (-1)^k C(2N,k) conj(q)^k conj(r)^k`` and
    ``Q_N = (1 - 2 Re(q) conj(r) + |q|^2 conj(r)^2)^(-2N)``.  ``P_N`` and
    ``Q_N`` do not commute in general; the order is kept.
    """
    _check_order(N, MAX_BERGMAN_ORDER)
    _check_ball(q, r)
    qa, ra = np.broadcast_arrays(as_qarray(q), as_qarray(r))
    rb = qconj(ra)
    P = _binomial_poly(N, qconj(qa), rb)
    base = -2.0 * qa[..., :1] * rb + (qabs(qa) ** 2)[..., None] * qmul(rb, rb)
    base[..., 0] += 1.0
    Q = slice_power(base, -2 * N)
    psi = np.asarray(bergman_psi(N, qa, ra))
    val = qmul(P, Q) * psi[..., None]
    return KernelValue(_pack(val, q, r), 0, 0.0)


def bergman_kernel_alt(N: int, q, r) -> KernelValue:
    """Second closed form ``R_N(q,r) L_N(q,r) psi_N(q,r)``.

    ``R_N = (1 - 2 q Re(r) + q^2 |r|^2)^(-2N)`` and
    ``L_N = (N/pi) sum_k (-1)^k C(2N,k) q^k r^k``.
    """
    _check_order(N, MAX_BERGMAN_ORDER)
    _check_ball(q, r)
    qa, ra = np.broadcast_arrays(as_qarray(q), as_qarray(r))
    base = -2.0 * ra[..., :1] * qa + (qabs(ra) ** 2)[..., None] * qmul(qa, qa)
    base[..., 0] += 1.0
    R = slice_power(base, -2 * N)
    L = _binomial_poly(N, qa, ra)
    psi = np.asarray(bergman_psi(N, qa, ra))
    val = qmul(R, L) * psi[..., None]
    return KernelValue(_pack(val, q, r), 0, 0.0)
