"""Seeded verification suites behind ``slicepoly verify``.

Each suite draws random slice polyanalytic functions (coefficients uniform in
``[-1, 1]**4``, degree <= 6, order <= 3) and checks structural identities or
the reproducing property.  Results depend only on the seed and sizes.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from .quadrature import disk_rule, gauss_plane_rule, reproduce_residual
from .quaternion import ImaginaryUnit, embed, orthogonal_unit
from .slice_poly import (
    dbar_power_numeric,
    eval_poly,
    extend,
    random_function,
    refined_split,
    representation_combine,
    slice_components,
    split,
    star_n,
)

SUITES = ("structure", "fock", "bergman")
MAX_ORDER = 3
MAX_DEGREE = 6
FOCK_RADIUS = 1.5
BERGMAN_RADIUS = 0.7
FOCK_TOL = 1e-6
BERGMAN_TOL = 1e-5
DEFAULT_FOCK_NODES = 80
DEFAULT_BERGMAN_NODES = 128


@dataclass
class VerifyReport:
    suite: str
    cases_run: int = 0
    cases_passed: int = 0
    worst_residual: float = 0.0
    elapsed_ms: int = 0

    def record(self, residual: float, ok: bool) -> None:
        self.cases_run += 1
        self.cases_passed += int(ok)
        if not math.isfinite(residual):
            residual = math.inf
        self.worst_residual = max(self.worst_residual, residual)

    def merge(self, other: "VerifyReport") -> None:
        self.cases_run += other.cases_run
        self.cases_passed += other.cases_passed
        self.worst_residual = max(self.worst_residual, other.worst_residual)

    @property
    def ok(self) -> bool:
        return self.cases_passed == self.cases_run

    def to_dict(self) -> dict:
        return asdict(self)


def random_unit(rng: np.random.Generator) -> ImaginaryUnit:
    return ImaginaryUnit.from_vector(rng.normal(size=3))


def _disk_point(rng: np.random.Generator, radius: float) -> tuple[float, float]:
    rho = radius * math.sqrt(rng.uniform())
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return rho * math.cos(theta), rho * math.sin(theta)


def _structure_case(rng: np.random.Generator) -> tuple[float, bool]:
    """One random function through every structural identity; returns (worst, ok)."""
    N = int(rng.integers(1, MAX_ORDER + 1))
    f = random_function(rng, N, int(rng.integers(0, MAX_DEGREE + 1)))
    I, J = random_unit(rng), random_unit(rng)
    x, y = _disk_point(rng, 1.0)
    ok = True
    worst = 0.0

    def check(res: float, tol: float) -> None:
        nonlocal ok, worst
        worst = max(worst, res)
        ok = ok and res <= tol

    fq = eval_poly(f, embed(I, x, y))
    check(abs(dbar_power_numeric(f, I, x, y, N)) / (1.0 + abs(fq)), 1e-5)

    plus, minus = f(embed(J, x, y)), f(embed(J, x, -y))
    check(abs(representation_combine(plus, minus, I, J) - fq), 1e-12)

    J_perp = orthogonal_unit(I)
    F, G = split(f, I, J_perp)
    z = x + 1j * y
    fz, gz = complex(F(z)), complex(G(z))
    recon = embed(I, fz.real, fz.imag) + embed(I, gz.real, gz.imag) * J_perp.u
    check(abs(recon - fq), 1e-12)

    back = extend(F, I, G, J_perp)
    check(float(np.max(np.abs(back.coeffs - f.coeffs))), 1e-13)

    psis = refined_split(f, I, J_perp)
    IJ = I.u * J_perp.u
    parts = [complex(p(z)) for p in psis]
    recon = sum(
        (embed(I, v.real, v.imag) * u for v, u in zip(parts, (1.0, I.u, J_perp.u, IJ))),
        start=embed(I, 0.0, 0.0),
    )
    check(abs(recon - fq), 1e-12)

    sc1 = slice_components(f, I, x, y)
    sc2 = slice_components(f, J, x, y)
    check(max(abs(sc1.alpha - sc2.alpha), abs(sc1.beta - sc2.beta)), 1e-12)

    g = random_function(rng, N, 4)
    h = random_function(rng, N, 4)
    f4 = random_function(rng, N, 4)
    lhs = star_n(star_n(f4, g), h).coeffs
    rhs = star_n(f4, star_n(g, h)).coeffs
    check(float(np.max(np.abs(lhs - rhs))), 1e-12)
    return worst, ok


def run_structure(rng: np.random.Generator, samples: int) -> VerifyReport:
    report = VerifyReport("structure")
    for _ in range(samples):
        report.record(*_structure_case(rng))
    return report


def run_reproduction(
    rng: np.random.Generator, samples: int, space: str, nodes: int | None = None
) -> VerifyReport:
    """Reproducing-property checks for random functions at random on-slice points."""
    if space == "fock":
        rule = gauss_plane_rule(nodes or DEFAULT_FOCK_NODES)
        radius, tol, fradius = FOCK_RADIUS, FOCK_TOL, math.inf
    else:
        n = nodes or DEFAULT_BERGMAN_NODES
        rule = disk_rule(n, 2 * n)
        radius, tol, fradius = BERGMAN_RADIUS, BERGMAN_TOL, 1.0
    report = VerifyReport(space)
    for _ in range(samples):
        N = int(rng.integers(1, MAX_ORDER + 1))
        order = int(rng.integers(1, N + 1))
        f = random_function(rng, order, int(rng.integers(0, MAX_DEGREE + 1)), radius=fradius)
        I = random_unit(rng)
        q = embed(I, *_disk_point(rng, radius))
        res = reproduce_residual(f, q, space, N, I, rule)
        report.record(res, res <= tol)
    return report


def run_suite(suite: str, seed: int, samples: int, nodes: int | None = None) -> VerifyReport:
    """Run one suite or ``"all"``; deterministic in ``seed`` apart from ``elapsed_ms``."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    start = time.perf_counter()
    names = SUITES if suite == "all" else (suite,)
    report = VerifyReport(suite)
    for name in names:
        rng = np.random.default_rng([seed, SUITES.index(name)])
        if name == "structure":
            part = run_structure(rng, samples)
        else:
            part = run_reproduction(rng, samples, name, nodes)
        report.merge(part)
    report.elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return report
