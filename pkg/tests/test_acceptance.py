"""Acceptance checks.  Each test prints one PASS/FAIL line with its worst observed value.

Run with ``pytest tests/test_acceptance.py -v`` (the lines show even with output
capture on).  The whole module has a two minute budget, checked at the end.
"""
import math
import time

import numpy as np

from conftest import brute_e_star, disk_points, mat_inv, mat_mul, random_quaternions
from slicepoly import (
    PolySliceFunction,
    Quaternion,
    RegularSeries,
    bergman_kernel,
    bergman_kernel_alt,
    bergman_kernel_c,
    dbar_power_numeric,
    disk_rule,
    e_star,
    embed,
    extend,
    fock_kernel,
    fock_kernel_c,
    gauss_plane_rule,
    growth_bound_check,
    is_intrinsic,
    norm_equivalence_check,
    orthogonal_unit,
    qabs,
    qmul,
    random_function,
    refined_split,
    representation_combine,
    reproduce_residuals,
    slice_components,
    split,
    star_n,
)
from slicepoly.verify import random_unit

BUDGET_S = 120.0
_START = time.perf_counter()


def report(capsys, tag: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")


def unit_vectors(rng, n: int) -> np.ndarray:
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def same_slice_pairs(rng, n: int, radius: float):
    """Pairs ``x1 + I y1, x2 + I y2`` sharing a random unit per pair, plus complex copies."""
    units = unit_vectors(rng, n)
    x1, y1 = disk_points(rng, n, radius)
    x2, y2 = disk_points(rng, n, radius)

    def emb(x, y):
        out = np.zeros((n, 4))
        out[:, 0] = x
        out[:, 1:] = y[:, None] * units
        return out

    return emb(x1, y1), emb(x2, y2), x1 + 1j * y1, x2 + 1j * y2, units


def embed_rows(units, z):
    out = np.zeros((len(z), 4))
    out[:, 0] = z.real
    out[:, 1:] = z.imag[:, None] * units
    return out


# -- 1 --------------------------------------------------------------------------


def test_order_two_fock_closed_form(capsys):
    rng = np.random.default_rng(1)
    q = random_quaternions(rng, 1000, 2.0)
    r = random_quaternions(rng, 1000, 2.0)
    K = fock_kernel(2, q, r).value
    lag = 2.0 - qabs(q - r) ** 2
    via_e_star = e_star(q, r).value * lag[:, None]
    worst = float(np.max(qabs(K - via_e_star) / (1 + qabs(K))))
    # second route: the exponential series summed by 2x2 complex matrices
    brute = np.array([brute_e_star(a, b) for a, b in zip(q, r)]) * lag[:, None]
    worst_brute = float(np.max(qabs(K - brute) / (1 + qabs(K))))
    ok = worst <= 1e-10 and worst_brute <= 1e-10
    report(capsys, "K_2 = e_*(q conj r)(2 - |q-r|^2), 1000 pairs", ok,
           f"worst rel {worst:.2e} (e_star), {worst_brute:.2e} (matrix series), tol 1e-10")
    assert ok


# -- 2 --------------------------------------------------------------------------


def test_slice_restriction_oracle(capsys):
    rng = np.random.default_rng(2)
    N = rng.integers(1, 6, size=1000)
    q, r, z, w, units = same_slice_pairs(rng, 1000, 2.0)
    worst_f = 0.0
    for n in range(1, 6):
        m = N == n
        got = fock_kernel(n, q[m], r[m]).value
        want = embed_rows(units[m], fock_kernel_c(n, z[m], w[m]))
        worst_f = max(worst_f, float(np.max(qabs(got - want) / np.maximum(qabs(want), 1.0))))
    q, r, z, w, units = same_slice_pairs(rng, 1000, 0.8)
    worst_b = 0.0
    for n in range(1, 6):
        m = N == n
        got = bergman_kernel(n, q[m], r[m]).value
        want = embed_rows(units[m], bergman_kernel_c(n, z[m], w[m]))
        worst_b = max(worst_b, float(np.max(qabs(got - want) / np.maximum(qabs(want), 1.0))))
    ok = worst_f <= 1e-10 and worst_b <= 1e-10
    report(capsys, "slice restriction vs complex kernels, 1000 pairs each", ok,
           f"fock {worst_f:.2e}, bergman {worst_b:.2e}, tol 1e-10")
    assert ok


# -- 3 --------------------------------------------------------------------------


def test_bergman_two_forms(capsys):
    rng = np.random.default_rng(3)
    N = rng.integers(1, 6, size=1000)
    q = random_quaternions(rng, 1000, 0.8)
    r = random_quaternions(rng, 1000, 0.8)
    worst = 0.0
    for n in range(1, 6):
        m = N == n
        a = bergman_kernel(n, q[m], r[m]).value
        b = bergman_kernel_alt(n, q[m], r[m]).value
        worst = max(worst, float(np.max(qabs(a - b) / qabs(a))))
    ok = worst <= 1e-10
    report(capsys, "Bergman P Q psi vs R L psi, 1000 pairs", ok, f"worst rel {worst:.2e}, tol 1e-10")
    assert ok


# -- 4, 5 -------------------------------------------------------------------------


def monomials(N: int, radius: float):
    out = []
    for k in range(N):
        for m in range(5):
            t = np.zeros((k + 1, m + 1, 4))
            t[k, m, 0] = 1.0
            out.append(PolySliceFunction.from_tensor(t, radius=radius))
    return out


def reproduction_worst(space: str, rule, radius: float, seed: int) -> tuple[float, int]:
    rng = np.random.default_rng(seed)
    worst, count = 0.0, 0
    fr = math.inf if space == "fock" else 1.0
    for N in (1, 2, 3):
        fs = monomials(N, fr)
        for _ in range(20):
            I = random_unit(rng)
            x, y = (float(t[0]) for t in disk_points(rng, 1, radius))
            res = reproduce_residuals(fs, embed(I, x, y), space, N, I, rule)
            worst = max(worst, max(res))
            count += len(res)
    return worst, count


def test_fock_reproduction(capsys):
    worst, count = reproduction_worst("fock", gauss_plane_rule(80), 1.5, 4)
    ok = worst <= 1e-6
    report(capsys, "Fock reproducing property, monomials k < N <= 3, m <= 4", ok,
           f"{count} cases, worst residual {worst:.2e}, tol 1e-6")
    assert ok


def test_bergman_reproduction(capsys):
    worst, count = reproduction_worst("bergman", disk_rule(128, 256), 0.7, 5)
    ok = worst <= 1e-5
    report(capsys, "Bergman reproducing property, monomials k < N <= 3, m <= 4", ok,
           f"{count} cases, worst residual {worst:.2e}, tol 1e-5")
    assert ok


# -- 6 --------------------------------------------------------------------------


def test_dbar_annihilation(capsys):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        N = int(rng.integers(1, 5))
        f = random_function(rng, N, int(rng.integers(0, 7)))
        for _ in range(50):
            I = random_unit(rng)
            x, y = (float(t[0]) for t in disk_points(rng, 1, 1.0))
            res = abs(dbar_power_numeric(f, I, x, y, N))
            worst = max(worst, res / (1 + abs(f(embed(I, x, y)))))
    # the worked example 1 - conj(q) q j
    F = PolySliceFunction((RegularSeries([[1, 0, 0, 0]]), RegularSeries([[0, 0, 0, 0], [0, 0, -1, 0]])))
    j = Quaternion(0, 0, 1, 0)
    worst_ex = 0.0
    for _ in range(20):
        I = random_unit(rng)
        x, y = rng.uniform(-1, 1, size=2)
        worst_ex = max(worst_ex, abs(dbar_power_numeric(F, I, x, y, 1) + embed(I, x, y) * j))
        worst_ex = max(worst_ex, abs(dbar_power_numeric(F, I, x, y, 2)))
    ok = worst <= 1e-5 and worst_ex <= 1e-6
    report(capsys, "dbar^N annihilates order-N functions (5000 samples) and worked example", ok,
           f"random worst {worst:.2e} (tol 1e-5), example worst {worst_ex:.2e} (tol 1e-6)")
    assert ok


# -- 7 --------------------------------------------------------------------------


def test_representation_formula(capsys):
    rng = np.random.default_rng(7)
    worst_rep, worst_sc = 0.0, 0.0
    for _ in range(100):
        f = random_function(rng, int(rng.integers(1, 5)), int(rng.integers(0, 7)))
        for _ in range(50):
            I, J, K = random_unit(rng), random_unit(rng), random_unit(rng)
            x, y = rng.uniform(-1, 1, size=2)
            direct = f(embed(I, x, y))
            combined = representation_combine(f(embed(J, x, y)), f(embed(J, x, -y)), I, J)
            worst_rep = max(worst_rep, abs(direct - combined))
            a, b = slice_components(f, J, x, y), slice_components(f, K, x, y)
            worst_sc = max(worst_sc, abs(a.alpha - b.alpha), abs(a.beta - b.beta))
    ok = worst_rep <= 1e-12 and worst_sc <= 1e-12
    report(capsys, "representation formula and K-independent slice components, 5000 samples", ok,
           f"formula {worst_rep:.2e}, components {worst_sc:.2e}, tol 1e-12")
    assert ok


# -- 8 --------------------------------------------------------------------------


def test_splitting_round_trips(capsys):
    rng = np.random.default_rng(8)
    worst_split = worst_refined = worst_ext = 0.0
    all_intrinsic = True
    for _ in range(100):
        f = random_function(rng, int(rng.integers(1, 5)), int(rng.integers(0, 7)))
        I = random_unit(rng)
        J = orthogonal_unit(I)
        xs, ys = disk_points(rng, 20, 1.5)
        z = xs + 1j * ys
        exact = f(embed(I, xs, ys))
        F, G = split(f, I, J)
        fz, gz = F(z), G(z)
        recon = embed(I, fz.real, fz.imag) + qmul(embed(I, gz.real, gz.imag), np.asarray(J.u))
        worst_split = max(worst_split, float(np.max(qabs(recon - exact))))
        psis = refined_split(f, I, J)
        all_intrinsic &= all(is_intrinsic(p) for p in psis)
        basis = [np.array([1.0, 0, 0, 0]), np.asarray(I.u), np.asarray(J.u), np.asarray(I.u * J.u)]
        recon = sum(qmul(embed(I, p(z).real, p(z).imag), e) for p, e in zip(psis, basis))
        worst_refined = max(worst_refined, float(np.max(qabs(recon - exact))))
        back = extend(F, I, G, J)
        worst_ext = max(worst_ext, float(np.max(np.abs(back.coeffs - f.coeffs))))
    ok = worst_split <= 1e-12 and worst_refined <= 1e-12 and all_intrinsic and worst_ext <= 1e-13
    report(capsys, "splitting, refined splitting, extension round trips (100 functions)", ok,
           f"split {worst_split:.2e}, refined {worst_refined:.2e} (tol 1e-12), "
           f"intrinsic {all_intrinsic}, extend {worst_ext:.2e} (tol 1e-13)")
    assert ok


# -- 9 --------------------------------------------------------------------------


def test_norm_equivalence(capsys):
    rng = np.random.default_rng(9)
    rule = gauss_plane_rule(20)
    lo, hi, worst_intr = math.inf, 0.0, 0.0
    all_in = True
    for _ in range(100):
        f = random_function(rng, int(rng.integers(1, 4)), int(rng.integers(0, 7)))
        t = f.coeffs.copy()
        t[..., 1:] = 0.0
        g = PolySliceFunction.from_tensor(t)
        for _ in range(10):
            I, J = random_unit(rng), random_unit(rng)
            ratio, within = norm_equivalence_check(f, I, J, rule)
            lo, hi = min(lo, ratio), max(hi, ratio)
            all_in &= within and 0.5 <= ratio <= 2.0
            r_int, _ = norm_equivalence_check(g, I, J, rule)
            worst_intr = max(worst_intr, abs(r_int - 1.0))
    ok = all_in and worst_intr <= 1e-10
    report(capsys, "slice norm ratios in [1/2, 2], intrinsic ratio 1 (1000 pairs)", ok,
           f"ratios in [{lo:.12f}, {hi:.12f}], intrinsic |ratio - 1| {worst_intr:.2e} (tol 1e-10)")
    assert ok


# -- 10 -------------------------------------------------------------------------


def growth_worst(space: str, rule, radius: float, seed: int) -> float:
    rng = np.random.default_rng(seed)
    worst = -math.inf
    fr = math.inf if space == "fock" else 1.0
    for _ in range(100):
        f = random_function(rng, int(rng.integers(1, 4)), int(rng.integers(0, 7)), radius=fr)
        q = Quaternion(*random_quaternions(rng, 1, radius)[0])
        margin = growth_bound_check(f, q, space, rule)
        bound = margin + abs(f(q))
        worst = max(worst, -margin / bound)
    return worst


def test_growth_bounds(capsys):
    wf = growth_worst("fock", gauss_plane_rule(80), 1.5, 10)
    wb = growth_worst("bergman", disk_rule(128, 256), 0.9, 11)
    ok = wf <= 1e-8 and wb <= 1e-8
    report(capsys, "pointwise growth bounds, 100 (f, q) per space", ok,
           f"max(-margin/bound): fock {wf:.3f}, bergman {wb:.3f} (must be <= 1e-8)")
    assert ok


# -- 11 -------------------------------------------------------------------------


def test_diagonal_identities(capsys):
    rng = np.random.default_rng(12)
    q = np.vstack([np.zeros((1, 4)), random_quaternions(rng, 200, 2.0)])
    worst_f = worst_b = 0.0
    for N in range(1, 6):
        K = fock_kernel(N, q, q).value
        want = np.zeros_like(K)
        want[:, 0] = N * np.exp(qabs(q) ** 2)
        worst_f = max(worst_f, float(np.max(qabs(K - want))))
        worst_b = max(worst_b, abs(bergman_kernel(N, Quaternion(), Quaternion()).value - N * N / math.pi))
    ok = worst_f <= 1e-11 and worst_b <= 1e-12
    report(capsys, "diagonal values N e^{|q|^2} and N^2/pi, N = 1..5", ok,
           f"fock {worst_f:.2e} (tol 1e-11), bergman {worst_b:.2e} (tol 1e-12)")
    assert ok


# -- 12 -------------------------------------------------------------------------


def _pad_add(a, b):
    width = max(a.shape[1], b.shape[1])
    out = np.zeros((a.shape[0], width, 4))
    out[:, : a.shape[1]] += a
    out[:, : b.shape[1]] += b
    return out


def regular_product_oracle(fk, gk, q: np.ndarray) -> np.ndarray:
    """(f * g)(q) = f(q) g(f(q)^-1 q f(q)), all products as 2x2 complex matrices."""
    fq = np.asarray(fk(Quaternion(*q)))
    if np.linalg.norm(fq) == 0.0:
        return np.zeros(4)
    twisted = mat_mul(mat_inv(fq), q, fq)
    return mat_mul(fq, np.asarray(gk(Quaternion(*twisted))))


def test_star_n_algebra(capsys):
    rng = np.random.default_rng(13)
    worst_assoc = worst_dist = worst_comp = worst_point = 0.0
    for _ in range(100):
        N = int(rng.integers(1, 4))
        f, g, h = (random_function(rng, N, int(rng.integers(0, 5))) for _ in range(3))
        fg = star_n(f, g)
        worst_assoc = max(worst_assoc, float(np.max(np.abs(star_n(fg, h).coeffs - star_n(f, star_n(g, h)).coeffs))))
        gh = PolySliceFunction.from_tensor(_pad_add(g.coeffs, h.coeffs))
        left = _pad_add(star_n(f, gh).coeffs, -_pad_add(fg.coeffs, star_n(f, h).coeffs))
        right = _pad_add(star_n(gh, f).coeffs, -_pad_add(star_n(g, f).coeffs, star_n(h, f).coeffs))
        worst_dist = max(worst_dist, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
        # componentwise definition: component k is the regular product of f_k and g_k
        for k in range(N):
            ck = np.zeros((fg.coeffs.shape[1], 4))
            for p, a in enumerate(f.components[k].coeffs):
                for m, b in enumerate(g.components[k].coeffs):
                    ck[p + m] += mat_mul(a, b)
            worst_comp = max(worst_comp, float(np.max(np.abs(fg.coeffs[k] - ck))))
    for _ in range(50):
        N = int(rng.integers(1, 4))
        f, g = (random_function(rng, N, int(rng.integers(0, 5))) for _ in range(2))
        q = random_quaternions(rng, 1, 1.0)[0]
        qb = np.array([q[0], -q[1], -q[2], -q[3]])
        want = np.zeros(4)
        for k in range(N):
            term = regular_product_oracle(f.components[k], g.components[k], q)
            want += mat_mul(*([qb] * k + [term])) if k else term
        got = np.asarray(star_n(f, g)(Quaternion(*q)))
        worst_point = max(worst_point, float(np.linalg.norm(got - want) / (1 + np.linalg.norm(want))))
    ok = worst_assoc <= 1e-12 and worst_dist <= 1e-12 and worst_comp <= 1e-12 and worst_point <= 1e-12
    report(capsys, "*_N associativity, distributivity, componentwise and pointwise (100 triples, 50 points)", ok,
           f"assoc {worst_assoc:.2e}, dist {worst_dist:.2e}, components {worst_comp:.2e}, "
           f"pointwise rel {worst_point:.2e}, tol 1e-12")
    assert ok


# -- budget -----------------------------------------------------------------------


def test_runtime_budget(capsys):
    elapsed = time.perf_counter() - _START
    ok = elapsed < BUDGET_S
    report(capsys, "acceptance module runtime", ok, f"{elapsed:.1f} s (budget {BUDGET_S:.0f} s)")
    assert ok
