"""Shared helpers and independent oracles for the test suite.

The quaternion oracle uses the faithful 2x2 complex matrix representation
``a + b i + c j + d k -> [[a + b i, c + d i], [-c + d i, a - b i]]``, which
shares no code with the package's component formulas.
"""
from __future__ import annotations

import math

import numpy as np
import pytest

from slicepoly import ImaginaryUnit, Quaternion


def to_matrix(q) -> np.ndarray:
    a, b, c, d = np.asarray(q, dtype=float)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def from_matrix(m: np.ndarray) -> np.ndarray:
    return np.array([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])


def mat_mul(*qs) -> np.ndarray:
    m = np.eye(2, dtype=complex)
    for q in qs:
        m = m @ to_matrix(q)
    return from_matrix(m)


def mat_conj(q) -> np.ndarray:
    return from_matrix(to_matrix(q).conj().T)


def mat_inv(q) -> np.ndarray:
    return from_matrix(np.linalg.inv(to_matrix(q)))


def mat_pow(q, n: int) -> np.ndarray:
    return from_matrix(np.linalg.matrix_power(to_matrix(q), n))


def brute_e_star(p, q, terms: int = 80) -> np.ndarray:
    """Direct partial sum of ``p**n conj(q)**n / n!`` in matrix form."""
    P, Qb = to_matrix(p), to_matrix(q).conj().T
    total = np.zeros((2, 2), dtype=complex)
    for n in range(terms):
        total += np.linalg.matrix_power(P, n) @ np.linalg.matrix_power(Qb, n) / math.factorial(n)
    return from_matrix(total)


def random_quaternions(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """Points uniform in the 4-ball of the given radius."""
    v = rng.normal(size=(n, 4))
    v /= np.linalg.norm(v, axis=1)[:, None]
    return v * (radius * rng.uniform(size=n) ** 0.25)[:, None]


def random_unit(rng: np.random.Generator) -> ImaginaryUnit:
    return ImaginaryUnit.from_vector(rng.normal(size=3))


def disk_points(rng: np.random.Generator, n: int, radius: float) -> tuple[np.ndarray, np.ndarray]:
    rho = radius * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return rho * np.cos(theta), rho * np.sin(theta)


def qarr(*parts) -> np.ndarray:
    return np.array(parts, dtype=float)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def one():
    return Quaternion(1.0)
